#include "folkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "folkit/analysis.hpp"
#include "folkit/blowup.hpp"
#include "folkit/cp2.hpp"
#include "folkit/errors.hpp"
#include "folkit/fatou.hpp"
#include "folkit/holonomy.hpp"
#include "folkit/normal_forms.hpp"
#include "folkit/parser.hpp"
#include "folkit/sectors.hpp"
#include "json.hpp"

namespace folkit {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  std::string in, expr, out, dot;
  int order = -1;  // per-command default when absent
  int max_blowups = 64;
  int tower_depth = 3;
  int ext_degree = 6;
  double tol = 1e-8;
  std::string format = "json";
  unsigned seed = 1;
  // command specific
  std::string kind, chart = "a", slope, gamma, coeffs, germ, point = "-0.1", estimator = "refined", turns,
                    multiplier, P = "1", a = "0", b = "0", c = "0", dir;
  int n = 2, degree = 1, grid = 40;
  long n_max = 100000, max_iter = 10000;
  double radius = -1;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TowerCaps caps(const Options& o) { return {o.tower_depth, o.ext_degree}; }

std::string read_source(const Options& o) {
  if (!o.in.empty() && !o.expr.empty()) throw Usage("--in and --expr are exclusive");
  if (!o.expr.empty()) return o.expr;
  if (o.in.empty()) throw Usage("an input is required (--in FILE or --expr EXPR)");
  std::ifstream f(o.in);
  if (!f) fail("InputNotFound", o.in);
  std::string line, src;
  while (std::getline(f, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    src += (src.empty() ? "" : " ") + line;
  }
  return src;
}

VectorFieldGerm read_field(const Options& o, int n = 0) {
  std::string src = read_source(o);
  return parse_vector_field(src, n ? n : infer_dimension(src));
}

json field_json(const FieldElement& v) { return render(v); }

json upoly_json(const UPoly& p, const std::string& var) { return p.str(var); }

// "x", "x+yi", "x-y*i", "yi", "-i"
cd parse_complex(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Usage("empty complex number");
  auto imag_tail = [](const std::string& t, std::size_t pos) {
    if (pos < t.size() && t[pos] == '*') ++pos;
    return pos < t.size() && t[pos] == 'i' && pos + 1 == t.size();
  };
  const char* p = s.c_str();
  char* end = nullptr;
  std::size_t pos = 0;
  double first = 0;
  if ((s[0] == 'i') || ((s[0] == '+' || s[0] == '-') && s.size() > 1 && s[1] == 'i')) {
    if (s == "i" || s == "+i") return {0, 1};
    if (s == "-i") return {0, -1};
    throw Usage("bad complex number: " + s0);
  }
  first = std::strtod(p, &end);
  if (end == p) throw Usage("bad complex number: " + s0);
  pos = end - p;
  if (pos == s.size()) return {first, 0};
  if (imag_tail(s, pos)) return {0, first};
  if (s[pos] != '+' && s[pos] != '-') throw Usage("bad complex number: " + s0);
  double sign = s[pos] == '-' ? -1 : 1;
  std::string rest = s.substr(pos + 1);
  if (rest == "i" || rest == "*i") return {first, sign};
  const char* q = rest.c_str();
  double second = std::strtod(q, &end);
  if (end == q || !imag_tail(rest, end - q)) throw Usage("bad complex number: " + s0);
  return {first, sign * second};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (item.find_first_not_of(" ") != std::string::npos) out.push_back(item);
  return out;
}

std::vector<cd> parse_complex_list(const std::string& s) {
  std::vector<cd> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_complex(t));
  if (out.empty()) throw Usage("empty coefficient list");
  return out;
}

json cjson(cd z) { return {z.real(), z.imag()}; }

// ---------------------------------------------------------------- commands

json cmd_parse(const Options& o) {
  VectorFieldGerm X = read_field(o);
  return {{"dim", X.dim()}, {"field", render(X)}, {"tower", X.tower()->describe()}};
}

json cmd_analyze(const Options& o) {
  VectorFieldGerm X = read_field(o, 2);
  SingularityReport r = classify_singularity(X);
  json j;
  j["class"] = r.tag();
  j["order"] = r.order;
  j["domain"] = to_string(r.domain);
  j["final"] = r.is_final();
  j["linear"] = {{"a", field_json(r.lin.a)}, {"b", field_json(r.lin.b)}, {"c", field_json(r.lin.c)},
                 {"d", field_json(r.lin.d)}, {"trace", field_json(r.lin.trace)}, {"det", field_json(r.lin.det)}};
  if (r.lin.s) j["linear"]["s"] = field_json(*r.lin.s);
  if (r.order == 1) {
    auto [l1, l2] = eigenvalues(r.lin, caps(o));
    j["eigenvalues"] = {field_json(l1), field_json(l2)};
    j["tower"] = l1.tower()->describe();
    json res = json::array();
    for (const auto& [i, q] : detect_resonances({l1, l2}, o.order))
      res.push_back({{"component", i}, {"exponent", q}});
    j["resonances"] = res;
  }
  return j;
}

json chart_json(const BlowupChartResult& r) {
  json j;
  j["chart"] = std::string(1, r.chart);
  j["form"] = render(r.form);
  j["divided_power"] = r.divided_power;
  j["dicritical"] = r.dicritical;
  json s = json::array();
  for (const auto& p : r.singularities)
    s.push_back({{"minpoly", upoly_json(p.minpoly, r.chart == 's' ? "s" : "t")},
                 {"multiplicity", p.multiplicity},
                 {"point", field_json(p.point)}});
  j["singularities"] = s;
  return j;
}

json cmd_blowup(const Options& o) {
  VectorFieldGerm X = read_field(o, 2);
  BlowupOptions bo;
  bo.caps = caps(o);
  auto [cx, cs] = blow_up(X, bo);
  TangentCone tc = tangent_cone(X);
  json j;
  j["order"] = X.order();
  j["tangent_cone"] = upoly_json(tc.poly, "t");
  j["dicritical"] = cx.dicritical;
  j["charts"] = {chart_json(cx), chart_json(cs)};
  j["pullback_identity"] = pullback_identity(X, cx) && pullback_identity(X, cs);
  j["chart_coherence"] = chart_coherence(cx, cs);
  return j;
}

ResolutionTree resolve_tree(const Options& o) {
  VectorFieldGerm X = read_field(o, 2);
  ResolveOptions ro;
  ro.max_blowups = o.max_blowups;
  ro.blowup.caps = caps(o);
  return seidenberg_resolve(X, ro);
}

json cmd_resolve(const Options& o, std::string& dot) {
  ResolutionTree t = resolve_tree(o);
  json j = json::parse(tree_to_json(t));
  LedgerReport lr = verify_ledger(t);
  json v = json::array();
  for (const auto& x : lr.violations) v.push_back({{"node", x.node}, {"I0", x.I0}, {"predicted", x.predicted}});
  j["ledger"] = {{"checked", lr.checked}, {"violations", v}, {"strict_decrease", lr.strict_decrease}};
  dot = tree_to_dot(t);
  return j;
}

NormalFormResult normal_form(const VectorFieldGerm& X, const std::string& kind, int N) {
  if (kind == "linearize" || kind == "poincare") return poincare_linearize(X, N);
  if (kind == "resonant") return resonant_normal_form(X, N);
  if (kind == "siegel") return siegel_straighten(X, N);
  if (kind == "dulac") return saddle_node_prepare(X, N);
  if (kind == "plane3d") return invariant_plane_3d(X, N);
  throw Usage("unknown normal form kind: " + kind);
}

json cmd_normal_form(const Options& o, const std::string& kind) {
  VectorFieldGerm X = read_field(o);
  NormalFormResult r = normal_form(X, kind, o.order);
  json j = json::parse(normal_form_to_json(r));
  j["conjugacy_holds"] = conjugacy_holds(X, r);
  if (r.orbital) j["orbital_identity_holds"] = orbital_identity_holds(r);
  return j;
}

json germ_json(const HolonomyGerm& h) {
  json j;
  j["multiplier"] = h.multiplier.str();
  if (auto k = h.multiplier.order()) j["multiplier_order"] = *k;
  j["N"] = h.N;
  json s = json::array();
  for (int k = 1; k <= h.N; ++k) s.push_back(h.coeff(k).str());
  j["series"] = s;
  return j;
}

json cmd_holonomy(const Options& o) {
  VectorFieldGerm X = read_field(o, 2);
  std::string kind = o.kind;
  SingularityReport r = classify_singularity(X);
  if (kind.empty()) kind = r.cls == SingClass::SaddleNode ? "saddle-node" : "linear";
  json j;
  j["kind"] = kind;
  HolonomyGerm h;
  if (kind == "saddle-node") {
    NormalFormResult d = saddle_node_prepare(X, o.order);
    h = saddle_node_holonomy(d, o.order);
    j["p"] = *d.p;
    j["lambda"] = field_json(*d.lambda);
  } else if (kind == "linear") {
    auto [l1, l2] = eigenvalues(r.lin, caps(o));
    h = linear_holonomy(l1, l2);
  } else {
    throw Usage("unknown holonomy kind: " + kind);
  }
  json g = germ_json(h);
  for (auto it = g.begin(); it != g.end(); ++it) j[it.key()] = it.value();
  if (kind == "saddle-node") {
    GermOrder go = germ_order(h, o.order);
    j["finite_order"] = go.order ? json(*go.order) : json(nullptr);
  }
  return j;
}

json cmd_first_integral(const Options& o) {
  VectorFieldGerm X = read_field(o, 2);
  CriterionReport r = mattei_moussu_criterion(dualize(X), o.order);
  json j = json::parse(criterion_to_json(r));
  bool homogeneous = X[0].is_homogeneous() && X[1].is_homogeneous() && X[0].degree() == X[1].degree();
  if (homogeneous && r.overall == Overall::PassesNecessaryConditions) {
    try {
      MultiPoly f = construct_first_integral_homogeneous(X);
      j["first_integral"] = render(f);
      j["verified"] = verify_first_integral(dualize(X), f);
      json m = json::array();
      Multiplier prod = Multiplier::from_ratio(FieldElement(0));
      for (const auto& g : projective_holonomy_generators(X)) {
        m.push_back(g.str());
        prod = prod * g;
      }
      j["projective_holonomy"] = m;
      j["product_is_one"] = prod.is_one();
    } catch (const Error& e) {
      j["first_integral_error"] = e.kind();
    }
  }
  return j;
}

VectorFieldGerm affine_input(const Options& o) {
  std::string src = read_source(o);
  int n = infer_dimension(src);
  VectorFieldGerm X = parse_vector_field(src, n);
  if (n == 3) return homogeneous_to_affine(make_homogeneous_field(X), o.chart[0]);
  if (n != 2) fail("DimensionNotTwo", "cp2 expects an affine field in two variables or a homogeneous one in three");
  return X;
}

json cmd_cp2(const Options& o, const std::string& what) {
  if (what == "dimension") {
    DimensionReport d = fol_space_dimension(o.degree);
    return {{"d", d.d}, {"formula", d.formula}, {"counted", d.counted}, {"radial_rank", d.radial_rank},
            {"agree", d.agree}};
  }
  VectorFieldGerm X = affine_input(o);
  if (what == "degree") return json::parse(degree_report_to_json(foliation_degree(X, o.chart[0])));
  if (what == "infinity")
    return {{"line_at_infinity_invariant", line_at_infinity_invariant(X)}, {"top_part_radial", top_part_radial(X)},
            {"degree", foliation_degree(X).degree}};
  if (what == "tangency") {
    json j;
    j["degree"] = foliation_degree(X).degree;
    TangencyCount t;
    if (!o.slope.empty()) {
      FieldElement l = parse_scalar(o.slope);
      t = tangency_count(X, l);
      j["slope"] = field_json(l);
    } else {
      GenericTangency g = generic_tangency_count(X, o.seed);
      t = g.result;
      j["slope"] = field_json(g.lambda);
      json rej = json::array();
      for (const auto& r : g.rejected) rej.push_back(field_json(r));
      j["rejected"] = rej;
      j["bad_set_everything"] = g.bad_set_everything;
    }
    j["line_invariant"] = t.line_invariant;
    j["count"] = t.count ? json(*t.count) : json(nullptr);
    j["bad_polynomial"] = upoly_json(tangency_bad_polynomial(X), "l");
    return j;
  }
  throw Usage("unknown cp2 command: " + what);
}

json cmd_gen(const Options& o, const std::string& what) {
  if (what == "jouanolou") {
    if (o.n < 1) throw Usage("--n must be at least 1");
    HomogeneousField3 J = jouanolou(o.n);
    json h = json::array();
    std::vector<std::string> names{"z0", "z1", "z2"};
    for (const auto& p : J.H) h.push_back(render(p, names));
    VectorFieldGerm A = homogeneous_to_affine(J, o.chart[0]);
    return {{"n", o.n}, {"homogeneous", h}, {"chart", o.chart}, {"affine", render(A)},
            {"degree", foliation_degree(A).degree}};
  }
  if (what == "riccati-template") {
    TowerPtr t = Tower::gaussian();
    UPoly P = parse_upoly(o.P, t, "x"), a = parse_upoly(o.a, t, "x"), b = parse_upoly(o.b, t, "x"),
          c = parse_upoly(o.c, t, "x");
    VectorFieldGerm X = riccati_field(P, a, b, c);
    json j{{"field", render(X)}};
    if (auto r = riccati_recognize(X)) {
      json f = json::array();
      for (const auto& fb : r->fibers) {
        json e{{"factor", upoly_json(fb.factor, "x")}, {"multiplicity", fb.multiplicity}};
        if (fb.root) e["root"] = field_json(*fb.root);
        f.push_back(e);
      }
      j["invariant_fibers"] = f;
      if (!r->note.empty()) j["note"] = r->note;
    }
    return j;
  }
  throw Usage("unknown generator: " + what);
}

json cmd_sectors(const Options& o) {
  if (o.gamma.empty()) throw Usage("--gamma is required");
  std::vector<FieldElement> g;
  for (const auto& s : split(o.gamma, ',')) g.push_back(parse_scalar(s));
  EigenData e = make_eigen_data(g);
  return json::parse(sectors_to_json(e, o.order));
}

NumericGerm numeric_germ(const Options& o) {
  if (o.germ == "f0") return germ_f0();
  if (!o.germ.empty()) throw Usage("unknown germ: " + o.germ);
  if (o.coeffs.empty()) throw Usage("--coeffs or --germ is required");
  return germ_from_coeffs(parse_complex_list(o.coeffs), o.radius > 0 ? o.radius : 1.0);
}

json cmd_fatou(const Options& o) {
  NumericGerm f = numeric_germ(o);
  if (o.radius > 0) f.radius = o.radius;
  FatouOptions fo;
  fo.n_max = o.n_max;
  fo.increment_tol = o.tol;
  if (o.estimator == "log")
    fo.estimator = Estimator::LogCorrected;
  else if (o.estimator != "refined")
    throw Usage("--estimator must be refined or log");
  cd z = parse_complex(o.point);
  FatouEstimate e = fatou_coordinate(f, z, fo);
  fo.throw_on_slow = false;
  double res = abel_residual(f, std::vector<cd>{z}, fo);
  json j = json::parse(fatou_to_json(e, res));
  json at = json::array(), rep = json::array();
  for (cd v : attracting_directions(f.a(), f.p())) at.push_back(cjson(v));
  for (cd v : repelling_directions(f.a(), f.p())) rep.push_back(cjson(v));
  j["p"] = f.p();
  j["a"] = cjson(f.a());
  j["attracting_directions"] = at;
  j["repelling_directions"] = rep;
  return j;
}

std::string cmd_orbit_census(const Options& o) {
  NumericGerm h;
  if (!o.turns.empty()) {
    FieldElement t = parse_scalar(o.turns);
    if (!t.is_gaussian() || t.im() != 0) throw Usage("--turns must be rational");
    h = rotation_germ(std::polar(1.0, 2 * std::numbers::pi * t.re().get_d()));
  } else if (!o.multiplier.empty()) {
    h = rotation_germ(parse_complex(o.multiplier));
  } else {
    h = numeric_germ(o);
  }
  CensusOptions co;
  if (o.radius > 0) co.radius = o.radius;
  co.max_iter = o.max_iter;
  co.grid = o.grid;
  Census c = orbit_census(h, co);
  if (o.format == "csv") return census_to_csv(c);
  return census_to_json(c) + "\n";
}

// ---------------------------------------------------------------- corpus

void diff_json(const json& want, const json& got, const std::string& path, std::vector<std::string>& out) {
  if (want.is_object()) {
    if (!got.is_object()) {
      out.push_back(path + ": expected an object, got " + got.dump());
      return;
    }
    for (auto it = want.begin(); it != want.end(); ++it) {
      std::string p = path + "/" + it.key();
      if (!got.contains(it.key()))
        out.push_back(p + ": missing");
      else
        diff_json(it.value(), got[it.key()], p, out);
    }
    return;
  }
  if (want.is_array() && got.is_array() && want.size() == got.size()) {
    for (std::size_t i = 0; i < want.size(); ++i) diff_json(want[i], got[i], path + "/" + std::to_string(i), out);
    return;
  }
  if (want != got) out.push_back(path + ": expected " + want.dump() + ", got " + got.dump());
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

bool CorpusReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CorpusCase& c) { return c.pass; });
}

CorpusReport corpus_run(const std::string& dir) {
  CorpusReport rep;
  if (!fs::is_directory(dir)) fail("InputNotFound", "corpus directory " + dir);
  std::vector<fs::path> inputs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".vf") inputs.push_back(e.path());
  std::sort(inputs.begin(), inputs.end());
  if (inputs.empty()) rep.warnings.push_back("no corpus cases in " + dir);
  for (const auto& in : inputs) {
    CorpusCase c;
    c.name = in.stem().string();
    fs::path golden = in.parent_path() / (c.name + ".expected.json");
    std::ifstream g(golden);
    if (!g) {
      c.diffs.push_back("missing golden " + golden.filename().string());
      rep.cases.push_back(c);
      continue;
    }
    json expected;
    try {
      expected = json::parse(g);
    } catch (const std::exception& e) {
      c.diffs.push_back(std::string("unreadable golden: ") + e.what());
      rep.cases.push_back(c);
      continue;
    }
    std::vector<std::string> args = expected.at("command").get<std::vector<std::string>>();
    args.push_back("--in");
    args.push_back(in.string());
    std::ostringstream o, e;
    int code = dispatch(args, o, e);
    int want_code = expected.value("exit", 0);
    if (code != want_code)
      c.diffs.push_back("/exit: expected " + std::to_string(want_code) + ", got " + std::to_string(code));
    json got;
    try {
      got = json::parse(code == 0 ? o.str() : e.str());
    } catch (const std::exception&) {
      c.diffs.push_back("output is not JSON");
    }
    if (expected.contains("expect")) diff_json(expected["expect"], got, "", c.diffs);
    c.pass = c.diffs.empty();
    rep.cases.push_back(c);
  }
  return rep;
}

std::string corpus_report_to_json(const CorpusReport& r, int indent) {
  json j;
  long passed = std::count_if(r.cases.begin(), r.cases.end(), [](const CorpusCase& c) { return c.pass; });
  j["cases"] = r.cases.size();
  j["passed"] = passed;
  j["pass"] = r.pass();
  json fails = json::array();
  for (const auto& c : r.cases)
    if (!c.pass) fails.push_back({{"case", c.name}, {"diffs", c.diffs}});
  j["failures"] = fails;
  j["warnings"] = r.warnings;
  return j.dump(indent);
}

namespace {

void write_text(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) fail("OutputNotWritable", o.out);
  f << text;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Local and global tools for singular holomorphic foliations", "folkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto input = [&](CLI::App* s) {
    s->add_option("--in", o.in, "input file in the field grammar");
    s->add_option("--expr", o.expr, "inline field, e.g. \"x^2*ddx + (y - x^2)*ddy\"");
    s->add_option("--out", o.out, "write the main output to a file");
    s->add_option("--format", o.format, "json|dot|csv")->check(CLI::IsMember({"json", "dot", "csv"}));
    s->add_option("--tower-depth", o.tower_depth, "cap on adjoined field levels")->capture_default_str();
    s->add_option("--ext-degree", o.ext_degree, "cap on the degree of one adjoined level")->capture_default_str();
  };
  std::map<CLI::App*, int> order_default;
  auto order = [&](CLI::App* s, int def) {
    order_default[s] = def;
    s->add_option("--order", o.order, "truncation order N (default " + std::to_string(def) + ")")
        ->check(CLI::NonNegativeNumber);
  };

  auto* parse = app.add_subcommand("parse", "parse and render a field");
  input(parse);
  auto* analyze = app.add_subcommand("analyze", "classify the singularity at the origin");
  input(analyze);
  order(analyze, 6);
  auto* blowup = app.add_subcommand("blowup", "one blow-up at the origin");
  input(blowup);
  auto* resolve = app.add_subcommand("resolve", "resolution tree (JSON; DOT with --dot or --format dot)");
  input(resolve);
  resolve->add_option("--max-blowups", o.max_blowups, "cap on blow-ups")->capture_default_str();
  resolve->add_option("--dot", o.dot, "also write the tree as DOT to this file");
  auto* linearize = app.add_subcommand("linearize", "Poincare linearization through order N");
  input(linearize);
  order(linearize, 12);
  auto* nf = app.add_subcommand("normal-form", "normal form through order N");
  input(nf);
  order(nf, 12);
  nf->add_option("kind", o.kind, "resonant|siegel|dulac|plane3d")
      ->required()
      ->check(CLI::IsMember({"resonant", "siegel", "dulac", "plane3d"}));
  auto* hol = app.add_subcommand("holonomy", "holonomy of the separatrix (linear or saddle-node)");
  input(hol);
  order(hol, 6);
  hol->add_option("--kind", o.kind, "linear|saddle-node (default from the classification)")
      ->check(CLI::IsMember({"linear", "saddle-node"}));
  auto* fi = app.add_subcommand("first-integral", "first-integral criterion and homogeneous construction");
  input(fi);
  order(fi, 12);

  auto* cp2 = app.add_subcommand("cp2", "global invariants on the projective plane");
  cp2->require_subcommand(1);
  std::map<std::string, CLI::App*> cp2s;
  for (const char* name : {"degree", "infinity", "tangency", "dimension"}) {
    auto* s = cp2->add_subcommand(name);
    cp2s[name] = s;
    if (std::string(name) != "dimension") {
      input(s);
      s->add_option("--chart", o.chart, "a|b|c")->capture_default_str()->check(CLI::IsMember({"a", "b", "c"}));
    }
  }
  cp2s["degree"]->description("degree of the foliation");
  cp2s["infinity"]->description("invariance of the line at infinity");
  cp2s["tangency"]->description("tangencies with a line through the origin");
  cp2s["tangency"]->add_option("--slope", o.slope, "slope of y = slope*x (random when absent)");
  cp2s["tangency"]->add_option("--seed", o.seed, "seed for the random slope")->capture_default_str();
  cp2s["dimension"]->description("dimension of the space of degree-d foliations");
  cp2s["dimension"]->add_option("--degree", o.degree, "d")->required()->check(CLI::NonNegativeNumber);

  auto* gen = app.add_subcommand("gen", "generators");
  gen->require_subcommand(1);
  auto* jou = gen->add_subcommand("jouanolou", "Jouanolou field of degree n");
  jou->add_option("--n", o.n, "degree")->capture_default_str();
  jou->add_option("--chart", o.chart, "affine chart a|b|c")->capture_default_str()->check(CLI::IsMember({"a", "b", "c"}));
  jou->add_option("--out", o.out, "write to a file");
  auto* ric = gen->add_subcommand("riccati-template", "P d/dx + (a y^2 + b y + c) d/dy");
  ric->add_option("--P", o.P, "polynomial in x")->capture_default_str();
  ric->add_option("--a", o.a, "polynomial in x")->capture_default_str();
  ric->add_option("--b", o.b, "polynomial in x")->capture_default_str();
  ric->add_option("--c", o.c, "polynomial in x")->capture_default_str();
  ric->add_option("--out", o.out, "write to a file");

  auto* sec = app.add_subcommand("sectors", "solution sectors and admissible monomials");
  sec->add_option("--gamma", o.gamma, "comma-separated Gaussian rationals, e.g. 1,2/5+1/2*i")->required();
  order_default[sec] = 6;
  sec->add_option("--order", o.order, "maximal degree of the sheaf directions (default 6)");
  sec->add_option("--out", o.out, "write to a file");

  auto numeric = [&](CLI::App* s) {
    s->add_option("--coeffs", o.coeffs, "comma-separated complex coefficients of z, z^2, ...");
    s->add_option("--germ", o.germ, "named germ: f0 = z/(1-z)");
    s->add_option("--radius", o.radius, "disc radius");
    s->add_option("--out", o.out, "write to a file");
  };
  auto* fat = app.add_subcommand("fatou", "numeric Fatou coordinate at a point");
  numeric(fat);
  fat->add_option("--z", o.point, "point in the attracting petal")->capture_default_str();
  fat->add_option("--n-max", o.n_max, "iterations")->capture_default_str()->check(CLI::PositiveNumber);
  fat->add_option("--tol", o.tol, "increment tolerance")->capture_default_str();
  fat->add_option("--estimator", o.estimator, "refined|log")->capture_default_str();
  auto* cen = app.add_subcommand("orbit-census", "classify orbits on a grid over the disc");
  numeric(cen);
  cen->add_option("--turns", o.turns, "rotation by exp(2 pi i turns), rational");
  cen->add_option("--multiplier", o.multiplier, "rotation by a complex multiplier");
  cen->add_option("--grid", o.grid, "grid size")->capture_default_str()->check(CLI::PositiveNumber);
  cen->add_option("--max-iter", o.max_iter, "iteration cap")->capture_default_str();
  cen->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* corpus = app.add_subcommand("corpus", "golden corpus");
  corpus->require_subcommand(1);
  auto* crun = corpus->add_subcommand("run", "run every case and diff against its golden");
  crun->add_option("dir", o.dir, "corpus directory")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (auto [s, def] : order_default)
    if (s->parsed() && o.order < 0) o.order = def;

  try {
    json j;
    std::string text;
    if (parse->parsed()) j = cmd_parse(o);
    if (analyze->parsed()) j = cmd_analyze(o);
    if (blowup->parsed()) j = cmd_blowup(o);
    if (resolve->parsed()) {
      std::string dot;
      j = cmd_resolve(o, dot);
      if (!o.dot.empty()) {
        std::ofstream f(o.dot);
        if (!f) fail("OutputNotWritable", o.dot);
        f << dot;
      }
      if (o.format == "dot") text = dot;
    }
    if (linearize->parsed()) j = cmd_normal_form(o, "linearize");
    if (nf->parsed()) j = cmd_normal_form(o, o.kind);
    if (hol->parsed()) j = cmd_holonomy(o);
    if (fi->parsed()) j = cmd_first_integral(o);
    for (auto& [name, s] : cp2s)
      if (s->parsed()) j = cmd_cp2(o, name);
    if (jou->parsed()) j = cmd_gen(o, "jouanolou");
    if (ric->parsed()) j = cmd_gen(o, "riccati-template");
    if (sec->parsed()) j = cmd_sectors(o);
    if (fat->parsed()) j = cmd_fatou(o);
    if (cen->parsed()) text = cmd_orbit_census(o);
    int code = 0;
    if (crun->parsed()) {
      CorpusReport r = corpus_run(o.dir);
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      j = json::parse(corpus_report_to_json(r));
      code = r.pass() ? 0 : 1;
    }
    if (text.empty()) {
      if (o.format == "dot" || o.format == "csv")
        throw Usage("--format " + o.format + " is not available for this command");
      text = j.dump(2) + "\n";
    }
    write_text(text, o, out);
    return code;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << json{{"error", e.kind()}, {"detail", e.detail()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return dispatch(args, out, err);
}

}  // namespace folkit
