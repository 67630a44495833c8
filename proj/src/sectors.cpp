#include "folkit/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "folkit/errors.hpp"
#include "folkit/multipoly.hpp"
#include "json.hpp"

namespace folkit {

int Real::sign(double eps) const {
  if (exact_) return sgn(q_);
  if (std::abs(d_) <= eps) return 0;
  return d_ > 0 ? 1 : -1;
}

Real operator+(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return Real(Rational(a.q_ + b.q_));
  return Real::approx(a.value() + b.value());
}
Real operator-(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return Real(Rational(a.q_ - b.q_));
  return Real::approx(a.value() - b.value());
}
Real operator*(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return Real(Rational(a.q_ * b.q_));
  return Real::approx(a.value() * b.value());
}

Cx Cx::from(const FieldElement& z) {
  if (!z.is_gaussian()) fail("NotGaussian", "exact eigen data must lie in Q(i): " + z.str());
  return {Real(z.re()), Real(z.im())};
}

std::string Cx::str() const {
  if (exact()) return gaussian_string(re.rational(), im.rational());
  std::ostringstream os;
  os << re.value() << (im.value() < 0 ? "-" : "+") << std::abs(im.value()) << "*i";
  return os.str();
}

Real dot(const Cx& a, const Cx& b) { return a.re * b.re + a.im * b.im; }
Real cross(const Cx& a, const Cx& b) { return a.re * b.im - a.im * b.re; }

namespace {

Cx conj(const Cx& a) { return {a.re, -a.im}; }

// 0 for arguments in [0, pi), 1 for [pi, 2 pi).
int half(const Cx& a, double eps) {
  int si = a.im.sign(eps);
  if (si > 0) return 0;
  if (si == 0 && a.re.sign(eps) > 0) return 0;
  return 1;
}

// Argument of b measured counterclockwise from a.
Cx relative(const Cx& b, const Cx& a) { return b * conj(a); }

bool in_open_arc(const Cx& d, const Arc& s, double eps) {
  AngleOrder less{eps};
  Cx rd = relative(d, s.from), rt = relative(s.to, s.from);
  if (rd.im.sign(eps) == 0 && rd.re.sign(eps) > 0) return false;
  return less(rd, rt);
}

// A direction strictly inside the open arc.
Cx interior(const Arc& s, double eps) {
  int c = cross(s.from, s.to).sign(eps);
  if (c > 0) return s.from + s.to;
  if (c < 0) return -(s.from + s.to);
  if (dot(s.from, s.to).sign(eps) < 0) return s.from.rot90();
  return -s.from;  // full turn
}

std::vector<Cx> sort_unique(std::vector<Cx> v, double eps) {
  AngleOrder less{eps};
  std::sort(v.begin(), v.end(), less);
  std::vector<Cx> out;
  for (const auto& u : v)
    if (out.empty() || !less.same(out.back(), u)) out.push_back(u);
  return out;
}

SectorKind classify(const EigenData& e, const Cx& u) {
  bool pos = false, neg = false;
  for (const auto& g : e.gamma) {
    int s = dot(g, u).sign(e.eps);
    if (s > 0) pos = true;
    if (s < 0) neg = true;
    if (s == 0) fail("InternalError", "sample direction is singular");
  }
  if (pos && !neg) return SectorKind::Attractor;
  if (neg && !pos) return SectorKind::Saddle;
  return SectorKind::Mixed;
}

EigenData finish(EigenData e) {
  SectorPartition p = solution_sectors(e);
  bool attractor = std::any_of(p.sectors.begin(), p.sectors.end(),
                               [](const Sector& s) { return s.kind == SectorKind::Attractor; });
  if (!attractor) fail("NotPoincareDomain", "0 lies in the convex hull of the eigenvalues");
  return e;
}

std::string json_dir(const Cx& u) {
  std::ostringstream os;
  os << u.str();
  return os.str();
}

nlohmann::ordered_json arc_json(const Arc& a) {
  nlohmann::ordered_json j;
  j["from"] = json_dir(a.from);
  j["to"] = json_dir(a.to);
  j["from_turns"] = turns(a.from);
  j["to_turns"] = turns(a.to);
  return j;
}

nlohmann::ordered_json monomials_json(const std::vector<Monomial>& ms) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [j, Q] : ms) arr.push_back({j, Q});
  return arr;
}

}  // namespace

bool AngleOrder::operator()(const Cx& a, const Cx& b) const {
  int ha = half(a, eps), hb = half(b, eps);
  if (ha != hb) return ha < hb;
  return cross(a, b).sign(eps) > 0;
}

bool AngleOrder::same(const Cx& a, const Cx& b) const {
  return cross(a, b).sign(eps) == 0 && dot(a, b).sign(eps) > 0;
}

double turns(const Cx& u) {
  double t = std::atan2(u.im.value(), u.re.value()) / (2 * std::numbers::pi);
  return t < 0 ? t + 1 : t;
}

EigenData make_eigen_data(const std::vector<FieldElement>& gamma, std::vector<double> alpha) {
  if (gamma.empty()) fail("InvalidArgument", "need at least one eigenvalue");
  if (gamma[0].is_zero()) fail("ZeroBaseEigenvalue", "gamma_2 must be nonzero");
  EigenData e;
  e.scale = Cx::from(gamma[0]);
  FieldElement inv = gamma[0].inverse();
  for (const auto& g : gamma) {
    if (g.is_zero()) fail("NotPoincareDomain", "zero eigenvalue");
    e.gamma.push_back(Cx::from(g * inv));
  }
  alpha.resize(gamma.size(), 0.0);
  e.alpha = std::move(alpha);
  return finish(std::move(e));
}

EigenData make_eigen_data(const std::vector<std::complex<double>>& gamma, std::vector<double> alpha, double eps) {
  if (gamma.empty()) fail("InvalidArgument", "need at least one eigenvalue");
  if (std::abs(gamma[0]) <= eps) fail("ZeroBaseEigenvalue", "gamma_2 must be nonzero");
  EigenData e;
  e.eps = eps;
  e.scale = Cx::approx(gamma[0]);
  for (const auto& g : gamma) {
    if (std::abs(g) <= eps) fail("NotPoincareDomain", "zero eigenvalue");
    e.gamma.push_back(Cx::approx(g / gamma[0]));
  }
  alpha.resize(gamma.size(), 0.0);
  e.alpha = std::move(alpha);
  return finish(std::move(e));
}

Arc antipode(const Arc& a) { return {-a.from, -a.to}; }

std::string to_string(SectorKind k) {
  switch (k) {
    case SectorKind::Attractor: return "attractor";
    case SectorKind::Saddle: return "saddle";
    case SectorKind::Mixed: return "mixed";
  }
  return "";
}

SectorPartition solution_sectors(const EigenData& e) {
  std::vector<Cx> dirs;
  for (const auto& g : e.gamma) {
    dirs.push_back(g.rot90());
    dirs.push_back(-g.rot90());
  }
  SectorPartition p;
  p.singular_directions = sort_unique(dirs, e.eps);
  const auto& d = p.singular_directions;
  std::vector<Sector> raw;
  for (std::size_t k = 0; k < d.size(); ++k) {
    Arc a{d[k], d[(k + 1) % d.size()]};
    raw.push_back({a, classify(e, interior(a, e.eps))});
  }
  // merge neighbours of the same kind
  std::vector<Sector> merged;
  for (const auto& s : raw) {
    if (!merged.empty() && merged.back().kind == s.kind)
      merged.back().arc.to = s.arc.to;
    else
      merged.push_back(s);
  }
  if (merged.size() > 1 && merged.front().kind == merged.back().kind) {
    merged.front().arc.from = merged.back().arc.from;
    merged.pop_back();
  }
  AngleOrder less{e.eps};
  std::sort(merged.begin(), merged.end(), [&](const Sector& a, const Sector& b) { return less(a.arc.from, b.arc.from); });
  p.sectors = std::move(merged);
  return p;
}

std::vector<SheafDirection> sheaf_singular_directions(const EigenData& e, int maxdeg) {
  std::vector<SheafDirection> out;
  const int m = e.m();
  for (int d = 0; d <= maxdeg; ++d)
    for (const auto& Q : exponents_of_degree(m, d))
      for (int j = 0; j < m; ++j) {
        Cx w = -e.gamma[j];
        for (int k = 0; k < m; ++k)
          if (Q[k]) w = w + Real(static_cast<long>(Q[k])) * e.gamma[k];
        if (w.is_zero(e.eps)) continue;
        out.push_back({j + 2, Q, w, w.rot90(), -w.rot90()});
      }
  return out;
}

std::vector<Cx> distinct_directions(const std::vector<SheafDirection>& ds, double eps) {
  std::vector<Cx> v;
  for (const auto& d : ds) {
    v.push_back(d.plus);
    v.push_back(d.minus);
  }
  return sort_unique(v, eps);
}

std::vector<Monomial> admissible_monomials(const EigenData& e, const Arc& S, int maxdeg) {
  std::vector<SheafDirection> ds = sheaf_singular_directions(e, maxdeg);
  for (const auto& d : ds)
    for (const Cx& u : {d.plus, d.minus})
      if (in_open_arc(u, S, e.eps))
        fail("SectorContainsSingularDirection", "direction of (" + std::to_string(d.j) + ", Q) at turn " +
                                                    std::to_string(turns(u)));
  std::vector<Monomial> out;
  Cx rt = relative(S.to, S.from);
  // an open arc wider than a half turn cannot satisfy the cosine condition
  bool narrow = rt.im.sign(e.eps) > 0 || (rt.im.sign(e.eps) == 0 && rt.re.sign(e.eps) < 0);
  if (!narrow) return out;
  Cx mid = interior(S, e.eps);
  for (const auto& d : ds) {
    if (dot(d.w, S.from).sign(e.eps) <= 0 && dot(d.w, S.to).sign(e.eps) <= 0 && dot(d.w, mid).sign(e.eps) < 0)
      out.emplace_back(d.j, d.Q);
  }
  return out;
}

PlusSector sector_plus(const EigenData& e, int maxdeg) {
  SectorPartition p = solution_sectors(e);
  const Sector* att = nullptr;
  for (const auto& s : p.sectors)
    if (s.kind == SectorKind::Attractor) att = &s;
  if (!att) fail("NotPoincareDomain", "no attractor sector");
  std::vector<Cx> cuts{att->arc.from, att->arc.to};
  for (const auto& u : distinct_directions(sheaf_singular_directions(e, maxdeg), e.eps))
    if (in_open_arc(u, att->arc, e.eps)) cuts.push_back(u);
  // order the cuts along the attractor arc
  std::sort(cuts.begin() + 1, cuts.end(), [&](const Cx& a, const Cx& b) {
    if (AngleOrder{e.eps}.same(a, att->arc.to)) return false;
    if (AngleOrder{e.eps}.same(b, att->arc.to)) return true;
    return AngleOrder{e.eps}(relative(a, att->arc.from), relative(b, att->arc.from));
  });
  Arc best{cuts[0], cuts[1]};
  for (std::size_t k = 1; k + 1 < cuts.size(); ++k) {
    Arc gap{cuts[k], cuts[k + 1]};
    if (AngleOrder{e.eps}(relative(best.to, best.from), relative(gap.to, gap.from))) best = gap;
  }
  PlusSector out;
  out.plus = best;
  out.minus = antipode(best);
  // bisector rounded to a short rational direction, kept only if strictly inside
  std::complex<double> a = best.from.value(), b = best.to.value();
  std::complex<double> bis = a / std::abs(a) + b / std::abs(b);
  Cx phi0 = interior(best, e.eps);
  if (std::abs(bis) > 1e-9) {
    bis /= std::abs(bis);
    Rational re(static_cast<long>(std::lround(bis.real() * 1e6)), 1000000L),
        im(static_cast<long>(std::lround(bis.imag() * 1e6)), 1000000L);
    re.canonicalize();
    im.canonicalize();
    Cx cand{Real(re), Real(im)};
    if (!e.gamma[0].exact()) cand = Cx::approx(bis);
    if (!cand.is_zero(e.eps) && in_open_arc(cand, best, e.eps)) phi0 = cand;
  }
  out.phi0 = phi0;
  return out;
}

std::vector<FieldElement> leaf_transition(const std::vector<FieldElement>& c,
                                          const std::map<Monomial, FieldElement>& coeffs,
                                          const std::vector<Monomial>& admissible) {
  std::vector<FieldElement> out = c;
  const int m = static_cast<int>(c.size());
  for (const auto& [mono, a] : coeffs) {
    const auto& [j, Q] = mono;
    if (std::find(admissible.begin(), admissible.end(), mono) == admissible.end() || j < 2 || j > m + 1 ||
        static_cast<int>(Q.size()) != m)
      fail("InadmissibleCoefficient", "coefficient a_" + std::to_string(j) + " is not admissible");
    FieldElement term = a;
    for (int k = 0; k < m; ++k)
      for (int r = 0; r < Q[k]; ++r) term *= c[k];
    out[j - 2] += term;
  }
  return out;
}

std::string transition_shape(int m, const std::vector<Monomial>& admissible) {
  std::vector<std::string> names;
  if (m <= 2) names = {"y", "z"};
  for (int k = static_cast<int>(names.size()); k < m; ++k) names.push_back("x" + std::to_string(k + 2));
  std::vector<Monomial> sorted = admissible;
  std::sort(sorted.begin(), sorted.end(), [](const Monomial& a, const Monomial& b) {
    if (a.first != b.first) return a.first < b.first;
    int da = total_degree(a.second), db = total_degree(b.second);
    if (da != db) return da < db;
    return a.second > b.second;
  });
  std::string out = "(";
  for (int j = 2; j <= m + 1; ++j) {
    if (j > 2) out += ", ";
    out += names[j - 2];
    for (const auto& [jj, Q] : sorted) {
      if (jj != j) continue;
      bool wide = std::any_of(Q.begin(), Q.end(), [](int q) { return q > 9; });
      std::string a = "a" + std::to_string(j);
      for (int q : Q) a += (wide ? "_" : "") + std::to_string(q);
      std::string mono;
      for (int k = 0; k < m; ++k) {
        if (!Q[k]) continue;
        mono += "*" + names[k];
        if (Q[k] > 1) mono += "^" + std::to_string(Q[k]);
      }
      out += " + " + a + mono;
    }
  }
  return out + ")";
}

std::string sectors_to_json(const EigenData& e, int maxdeg, int indent) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json g = nlohmann::ordered_json::array();
  for (const auto& v : e.gamma) g.push_back(v.str());
  j["gamma"] = g;
  j["scale"] = e.scale.str();
  SectorPartition p = solution_sectors(e);
  nlohmann::ordered_json secs = nlohmann::ordered_json::array();
  for (const auto& s : p.sectors) {
    nlohmann::ordered_json o = arc_json(s.arc);
    o["kind"] = to_string(s.kind);
    secs.push_back(o);
  }
  j["sectors"] = secs;
  std::vector<SheafDirection> ds = sheaf_singular_directions(e, maxdeg);
  j["maxdeg"] = maxdeg;
  j["sheaf_directions"] = distinct_directions(ds, e.eps).size();
  PlusSector sp = sector_plus(e, maxdeg);
  j["phi0_turns"] = turns(sp.phi0);
  j["S_plus"] = arc_json(sp.plus);
  j["S_minus"] = arc_json(sp.minus);
  std::vector<Monomial> ap = admissible_monomials(e, sp.plus, maxdeg);
  j["admissible_plus"] = monomials_json(ap);
  j["admissible_minus"] = monomials_json(admissible_monomials(e, sp.minus, maxdeg));
  j["shape_plus"] = transition_shape(e.m(), ap);
  return j.dump(indent);
}

}  // namespace folkit
