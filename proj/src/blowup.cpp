#include "folkit/blowup.hpp"

#include <deque>
#include <sstream>

#include "folkit/errors.hpp"
#include "folkit/parser.hpp"
#include "json.hpp"

namespace folkit {

namespace {

MultiPoly X0(const TowerPtr& t) { return MultiPoly::var(2, 0, t); }
MultiPoly X1(const TowerPtr& t) { return MultiPoly::var(2, 1, t); }

MultiPoly chart_sub(const MultiPoly& p, char chart) {
  TowerPtr t = p.tower();
  if (chart == 'x') return p.substitute({X0(t), X1(t) * X0(t)});
  return p.substitute({X0(t) * X1(t), X1(t)});
}

UPoly on_axis(const MultiPoly& p, int keep) {
  return p.restrict(1 - keep, FieldElement(0)).to_upoly(keep);
}

int root_multiplicity_at_zero(const UPoly& g) {
  int m = 0;
  while (m <= g.degree() && g.coeff(m).is_zero()) ++m;
  return m;
}

bool vanishes_at_origin(const OneFormGerm& w) {
  return w[0].constant_term().is_zero() && w[1].constant_term().is_zero();
}

}  // namespace

OneFormGerm translate(const OneFormGerm& w, const std::vector<FieldElement>& c) {
  return OneFormGerm({w[0].translate(c), w[1].translate(c)});
}

VectorFieldGerm translate(const VectorFieldGerm& X, const std::vector<FieldElement>& c) {
  std::vector<MultiPoly> v;
  for (const auto& p : X.components()) v.push_back(p.translate(c));
  return VectorFieldGerm(v);
}

std::pair<BlowupChartResult, BlowupChartResult> blow_up(const OneFormGerm& w, const BlowupOptions& opt) {
  if (w.dim() != 2) fail("DimensionNotTwo", "blow-up needs n = 2");
  if (!vanishes_at_origin(w)) fail("RegularPoint", "nothing to blow up at a regular point");
  const int k = w.order();
  const TowerPtr T = w.tower();
  const MultiPoly& A = w[0];
  const MultiPoly& B = w[1];

  BlowupChartResult cx, cs;
  cx.chart = 'x';
  cs.chart = 's';
  {
    MultiPoly Ax = chart_sub(A, 'x'), Bx = chart_sub(B, 'x');
    MultiPoly a = Ax + X1(T) * Bx, b = X0(T) * Bx;
    bool dic = a.is_zero() || a.var_order(0) > k;
    int pw = dic ? k + 1 : k;
    cx.form = OneFormGerm({a.div_var_power(0, pw), b.div_var_power(0, pw)});
    cx.dicritical = dic;
    cx.divided_power = pw;
  }
  {
    MultiPoly As = chart_sub(A, 's'), Bs = chart_sub(B, 's');
    MultiPoly a = X1(T) * As, b = X0(T) * As + Bs;
    int pw = cx.divided_power;
    cs.form = OneFormGerm({a.div_var_power(1, pw), b.div_var_power(1, pw)});
    cs.dicritical = cx.dicritical;
    cs.divided_power = pw;
  }

  UPoly g = gcd(on_axis(cx.form[0], 1), on_axis(cx.form[1], 1));
  if (g.is_zero()) fail("InternalError", "divisor contained in the singular set");
  for (const auto& [q, mu] : factor(g)) {
    DivisorPoint p{q, mu, FieldElement::zero(T)};
    if (q.degree() == 1) {
      p.point = -q.coeff(0);
    } else {
      if (!opt.auto_extend) fail("FieldExtensionRequired", q.str("t"));
      TowerPtr e = adjoin_root(T, q, opt.caps);
      p.point = FieldElement::generator(e);
    }
    cx.singularities.push_back(p);
  }
  if (vanishes_at_origin(cs.form)) {
    UPoly h = gcd(on_axis(cs.form[0], 0), on_axis(cs.form[1], 0));
    cs.singularities.push_back({UPoly::x(T), root_multiplicity_at_zero(h), FieldElement::zero(T)});
  }
  return {cx, cs};
}

std::pair<BlowupChartResult, BlowupChartResult> blow_up(const VectorFieldGerm& X, const BlowupOptions& opt) {
  return blow_up(dualize(X), opt);
}

TangentCone tangent_cone(const VectorFieldGerm& X) {
  if (X.dim() != 2) fail("DimensionNotTwo", "tangent cone needs n = 2");
  const int k = X.order();
  TowerPtr T = X.tower();
  MultiPoly F = X[0].homogeneous(k), G = X[1].homogeneous(k);
  TangentCone tc;
  UPoly t = UPoly::x(T);
  UPoly Ft = on_axis(F.restrict(0, FieldElement(1)), 1), Gt = on_axis(G.restrict(0, FieldElement(1)), 1);
  tc.poly = Gt - t * Ft;
  if (!tc.poly.is_zero()) {
    tc.squarefree = squarefree(tc.poly);
    tc.infinity_root = F.coeff({0, k}).is_zero();
  }
  return tc;
}

bool pullback_identity(const VectorFieldGerm& X, const BlowupChartResult& r) {
  VectorFieldGerm Xt = dualize(r.form);
  TowerPtr T = X.tower();
  MultiPoly Fp = chart_sub(X[0], r.chart), Gp = chart_sub(X[1], r.chart);
  MultiPoly u = X0(T), v = X1(T);
  MultiPoly d0, d1;
  if (r.chart == 'x') {
    d0 = Xt[0];
    d1 = v * Xt[0] + u * Xt[1];
  } else {
    d0 = v * Xt[0] + u * Xt[1];
    d1 = Xt[1];
  }
  return (d0 * Gp - d1 * Fp).is_zero();
}

namespace {

// s^D p(s y, 1/s) for a chart-x polynomial p(x, t).
MultiPoly to_chart_s(const MultiPoly& p, int D) {
  MultiPoly r(2, p.tower());
  for (const auto& [e, c] : p.terms()) r.add_term({e[0] + D - e[1], e[0]}, c);
  return r;
}

}  // namespace

bool chart_coherence(const BlowupChartResult& cx, const BlowupChartResult& cs) {
  const MultiPoly& a = cx.form[0];
  const MultiPoly& b = cx.form[1];
  int D = 0;
  for (const auto* p : {&a, &b})
    for (const auto& [e, c] : p->terms()) D = std::max(D, e[1]);
  TowerPtr T = a.tower();
  MultiPoly sa = to_chart_s(a, D), sb = to_chart_s(b, D);
  MultiPoly s = X0(T), y = X1(T);
  // dx = s dy + y ds, dt = -ds / s^2, all times s^(D+2)
  MultiPoly ds = y * s * s * sa - sb;
  MultiPoly dy = s * s * s * sa;
  const MultiPoly& es = cs.form[0];
  const MultiPoly& ey = cs.form[1];
  if (!(ds * ey - dy * es).is_zero()) return false;
  const MultiPoly& num = es.is_zero() ? dy : ds;
  const MultiPoly& den = es.is_zero() ? ey : es;
  MultiPoly q;
  if (!divides(den, num, &q)) return false;
  return q.terms().size() == 1;
}

long ledger_constant(int k, bool dicritical) {
  long kk = k;
  return dicritical ? kk * kk + kk - 1 : kk * kk - kk - 1;
}

std::vector<int> ResolutionTree::leaves() const {
  std::vector<int> v;
  for (const auto& n : nodes)
    if (!n.blown_up) v.push_back(n.id);
  return v;
}

namespace {

std::string final_tag_of(const SingularityReport& r) {
  if (r.cls == SingClass::Regular) return "regular";
  if (r.cls == SingClass::SaddleNode) return "reduced-saddle-node";
  return "reduced-nondegenerate";
}

}  // namespace

ResolutionTree seidenberg_resolve(const OneFormGerm& w0, const ResolveOptions& opt) {
  if (w0.dim() != 2) fail("DimensionNotTwo", "resolution needs n = 2");
  ResolutionTree tree;
  OneFormGerm w = w0;
  MultiPoly h = gcd2(w[0], w[1]);
  if (h.degree() > 0) {
    tree.common_factor = h;
    w = OneFormGerm({div_exact(w[0], h), div_exact(w[1], h)});
  }
  ResolutionNode root;
  root.form = w;
  root.minpoly = UPoly::x(w.tower());
  tree.nodes.push_back(root);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    ResolutionNode node = tree.nodes[id];
    node.id = id;
    node.report = classify_singularity(dualize(node.form));
    node.order = node.report.order;
    node.I0 = intersection_number(node.form[0], node.form[1]);
    if (node.report.is_final()) {
      node.final_tag = final_tag_of(node.report);
      tree.nodes[id] = node;
      continue;
    }
    if (tree.blowups + node.copies > opt.max_blowups)
      fail("BlowupBudgetExceeded", "more than " + std::to_string(opt.max_blowups) + " blow-ups");
    tree.blowups += node.copies;
    node.blown_up = true;
    auto [cx, cs] = blow_up(node.form, opt.blowup);
    node.dicritical = cx.dicritical;
    for (const auto& [d, axis] : node.divisors) tree.divisors[d].self_intersection -= node.orbit;
    DivisorComponent E;
    E.id = static_cast<int>(tree.divisors.size());
    E.invariant = !cx.dicritical;
    E.created_by = id;
    E.copies = node.copies;
    tree.divisors.push_back(E);
    for (const auto* res : {&cx, &cs}) {
      for (const auto& p : res->singularities) {
        ResolutionNode c;
        c.id = static_cast<int>(tree.nodes.size());
        c.parent = id;
        c.round = node.round + 1;
        c.chart = res->chart;
        c.minpoly = p.minpoly;
        c.orbit = p.orbit();
        c.copies = node.copies * c.orbit;
        c.multiplicity = p.multiplicity;
        if (res->chart == 'x') {
          TowerPtr t = common_tower(res->form.tower(), p.point.tower());
          OneFormGerm f({res->form[0].embed(t), res->form[1].embed(t)});
          c.form = translate(f, {FieldElement::zero(t), p.point});
          c.divisors.emplace_back(E.id, 0);
          if (p.point.is_zero())
            for (const auto& [d, axis] : node.divisors)
              if (axis == 1) c.divisors.emplace_back(d, 1);
        } else {
          c.form = res->form;
          c.divisors.emplace_back(E.id, 1);
          for (const auto& [d, axis] : node.divisors)
            if (axis == 0) c.divisors.emplace_back(d, 0);
        }
        node.children.push_back(c.id);
        tree.nodes.push_back(c);
        queue.push_back(c.id);
      }
    }
    tree.nodes[id] = node;
  }
  for (auto& n : tree.nodes) {
    if (!n.blown_up) continue;
    n.ledger_sum = 0;
    for (int c : n.children) n.ledger_sum += static_cast<long>(tree.nodes[c].orbit) * tree.nodes[c].I0.value_or(-1000000);
    n.ledger_ok = n.I0 && *n.I0 == ledger_constant(n.order, n.dicritical) + n.ledger_sum;
  }
  return tree;
}

ResolutionTree seidenberg_resolve(const VectorFieldGerm& X, const ResolveOptions& opt) {
  return seidenberg_resolve(dualize(X), opt);
}

LedgerReport verify_ledger(const ResolutionTree& tree) {
  LedgerReport r;
  for (const auto& n : tree.nodes) {
    if (!n.blown_up) continue;
    ++r.checked;
    long predicted = ledger_constant(n.order, n.dicritical) + n.ledger_sum;
    long I0 = n.I0.value_or(-1);
    if (!n.I0 || I0 != predicted) r.violations.push_back({n.id, I0, predicted});
    if (n.order > 1 && n.I0 && n.ledger_sum >= I0) r.strict_decrease = false;
  }
  return r;
}

std::string tree_to_json(const ResolutionTree& tree, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["blowups"] = tree.blowups;
  j["common_factor"] = tree.common_factor.nvars() == 0 ? "1" : render(tree.common_factor);
  ordered_json nodes = ordered_json::array();
  for (const auto& n : tree.nodes) {
    ordered_json o;
    o["id"] = n.id;
    o["parent"] = n.parent;
    o["round"] = n.round;
    o["chart"] = std::string(1, n.chart);
    o["center"] = n.parent < 0 ? "origin" : n.minpoly.str(n.chart == 's' ? "s" : "t") + " = 0";
    o["orbit"] = n.orbit;
    o["copies"] = n.copies;
    o["multiplicity"] = n.multiplicity;
    o["form"] = render(n.form);
    o["tower"] = n.form.tower()->describe();
    o["order"] = n.order;
    o["I0"] = n.I0 ? ordered_json(*n.I0) : ordered_json("inf");
    o["class"] = n.report.tag();
    o["domain"] = to_string(n.report.domain);
    if (n.report.lin.s) o["s"] = n.report.lin.s->str();
    o["blown_up"] = n.blown_up;
    if (n.blown_up) {
      o["dicritical"] = n.dicritical;
      o["ledger"] = {{"constant", ledger_constant(n.order, n.dicritical)},
                     {"children_sum", n.ledger_sum},
                     {"ok", n.ledger_ok}};
    } else {
      o["final"] = n.final_tag;
    }
    o["children"] = n.children;
    ordered_json dv = ordered_json::array();
    for (const auto& [d, axis] : n.divisors) dv.push_back({{"component", d}, {"axis", axis == 0 ? "x" : "y"}});
    o["divisors"] = dv;
    nodes.push_back(o);
  }
  j["nodes"] = nodes;
  ordered_json divs = ordered_json::array();
  for (const auto& d : tree.divisors)
    divs.push_back({{"id", d.id},
                    {"self_intersection", d.self_intersection},
                    {"invariant", d.invariant},
                    {"created_by", d.created_by},
                    {"copies", d.copies}});
  j["divisors"] = divs;
  return j.dump(indent);
}

std::string tree_to_dot(const ResolutionTree& tree) {
  std::ostringstream os;
  os << "digraph resolution {\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  for (const auto& n : tree.nodes) {
    os << "  n" << n.id << " [";
    if (n.blown_up) {
      os << "shape=box, label=\"#" << n.id << " k=" << n.order << " I0=" << n.I0.value_or(-1)
         << (n.dicritical ? " dicritical" : "") << "\"";
    } else {
      os << "shape=ellipse, label=\"#" << n.id << " " << n.final_tag << "\\n" << n.report.tag();
      if (n.report.lin.s) os << " s=" << n.report.lin.s->str();
      os << "\"";
    }
    os << "];\n";
  }
  for (const auto& n : tree.nodes)
    for (int c : n.children) {
      const auto& ch = tree.nodes[c];
      os << "  n" << n.id << " -> n" << c << " [label=\"" << ch.chart << ": "
         << ch.minpoly.str(ch.chart == 's' ? "s" : "t") << "\"];\n";
    }
  for (const auto& d : tree.divisors) {
    os << "  E" << d.id << " [shape=plaintext, label=\"E" << d.id << " (" << d.self_intersection << ")"
       << (d.copies > 1 ? " x" + std::to_string(d.copies) : "") << "\"];\n";
    os << "  n" << d.created_by << " -> E" << d.id << " [style=dashed, arrowhead=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace folkit
