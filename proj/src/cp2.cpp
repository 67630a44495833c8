#include "folkit/cp2.hpp"

#include "json.hpp"

#include <random>

#include "folkit/errors.hpp"

namespace folkit {

namespace {

std::pair<int, int> others(int k) {
  if (k == 0) return {1, 2};
  if (k == 1) return {0, 2};
  return {0, 1};
}

TowerPtr tower_of(const std::vector<MultiPoly>& ps) {
  TowerPtr t = Tower::rationals();
  for (const auto& p : ps) t = common_tower(t, p.tower());
  return t;
}

MultiPoly div_scalar(const MultiPoly& p, const FieldElement& c) { return c.inverse() * p; }

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

long rational_rank(std::vector<std::vector<Rational>> m) {
  long rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<long>(rows); ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

void require_plane(const VectorFieldGerm& X) {
  if (X.dim() != 2) fail("DimensionNotTwo", "affine field must have two components");
  if (X.is_zero()) fail("ZeroInput", "zero vector field");
}

// Degree data in one chart without the cross-chart check.
DegreeReport degree_here(const VectorFieldGerm& X) {
  DegreeReport r;
  r.affine_degree = X.degree();
  r.top_part_radial = top_part_radial(X);
  r.degree = r.top_part_radial ? r.affine_degree - 1 : r.affine_degree;
  return r;
}

}  // namespace

MultiPoly homogeneous_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : div_scalar(b, b.terms().rbegin()->second);
  if (b.is_zero()) return div_scalar(a, a.terms().rbegin()->second);
  int e = std::min(a.var_order(0), b.var_order(0));
  MultiPoly g = gcd2(dehomogenize(a, 'a'), dehomogenize(b, 'a'));
  MultiPoly h = homogenize(g, g.degree(), 'a');
  MultiPoly z0 = MultiPoly::var(3, 0, h.tower());
  for (int k = 0; k < e; ++k) h = h * z0;
  return div_scalar(h, h.terms().rbegin()->second);
}

int chart_index(char chart) {
  if (chart < 'a' || chart > 'c') fail("InvalidChart", std::string("chart must be a, b or c, got ") + chart);
  return chart - 'a';
}

MultiPoly dehomogenize(const MultiPoly& h, char chart) {
  const int k = chart_index(chart);
  auto [o0, o1] = others(k);
  const TowerPtr& t = h.tower();
  std::vector<MultiPoly> subs(3);
  subs[k] = MultiPoly::constant(2, FieldElement::one(t));
  subs[o0] = MultiPoly::var(2, 0, t);
  subs[o1] = MultiPoly::var(2, 1, t);
  return h.substitute(subs);
}

MultiPoly homogenize(const MultiPoly& p, int d, char chart) {
  const int k = chart_index(chart);
  auto [o0, o1] = others(k);
  MultiPoly out(3, p.tower());
  for (const auto& [e, c] : p.terms()) {
    int rest = d - e[0] - e[1];
    if (rest < 0) fail("DegreeTooLow", "homogenizing degree below the polynomial degree");
    Exponent f(3);
    f[k] = rest;
    f[o0] = e[0];
    f[o1] = e[1];
    out.add_term(f, c);
  }
  return out;
}

HomogeneousField3 make_homogeneous_field(std::vector<MultiPoly> H) {
  if (H.size() != 3) fail("DimensionMismatch", "homogeneous field needs three components");
  TowerPtr t = tower_of(H);
  int d = -1;
  for (auto& h : H) {
    if (h.is_zero()) {
      h = MultiPoly(3, t);
      continue;
    }
    if (h.nvars() != 3) fail("DimensionMismatch", "components must be polynomials in three variables");
    h = h.embed(t);
    if (!h.is_homogeneous()) fail("NotHomogeneous", "component is not homogeneous");
    if (d >= 0 && h.degree() != d) fail("NotHomogeneous", "components have different degrees");
    d = h.degree();
  }
  if (d < 0) fail("ZeroInput", "zero homogeneous field");
  MultiPoly g = homogeneous_gcd(homogeneous_gcd(H[0], H[1]), H[2]);
  HomogeneousField3 Z;
  Z.removed_factor = g;
  if (g.degree() > 0)
    for (auto& h : H) h = h.is_zero() ? h : div_exact(h, g);
  Z.H = std::move(H);
  Z.degree = d - g.degree();
  Z.codim2 = true;
  return Z;
}

HomogeneousField3 make_homogeneous_field(const VectorFieldGerm& Z) {
  if (Z.dim() != 3) fail("DimensionMismatch", "homogeneous field needs three components");
  return make_homogeneous_field(Z.components());
}

HomogeneousField3 normalize_radial(const HomogeneousField3& Z) {
  HomogeneousField3 out = Z;
  const TowerPtr t = tower_of(Z.H);
  MultiPoly z1 = MultiPoly::var(3, 1, t), z2 = MultiPoly::var(3, 2, t);
  for (const auto& [e, c] : Z.H[0].terms()) {
    if (e[0] == 0) continue;
    Exponent m = e;
    m[0] -= 1;
    MultiPoly h = MultiPoly::monomial(c, m);
    out.H[0] -= MultiPoly::monomial(c, e);
    out.H[1] -= h * z1;
    out.H[2] -= h * z2;
  }
  for (const auto& h : out.H) {
    if (h.is_zero()) continue;
    FieldElement lc = h.terms().rbegin()->second;
    for (auto& g : out.H) g = div_scalar(g, lc);
    break;
  }
  return out;
}

VectorFieldGerm homogeneous_to_affine(const HomogeneousField3& Z, char chart) {
  const int k = chart_index(chart);
  auto [o0, o1] = others(k);
  const TowerPtr t = tower_of(Z.H);
  MultiPoly hk = dehomogenize(Z.H[k], chart);
  MultiPoly P = dehomogenize(Z.H[o0], chart) - MultiPoly::var(2, 0, t) * hk;
  MultiPoly Q = dehomogenize(Z.H[o1], chart) - MultiPoly::var(2, 1, t) * hk;
  if (P.is_zero() && Q.is_zero()) fail("RadialInput", "field is a multiple of the radial field");
  return VectorFieldGerm({P, Q});
}

bool top_part_radial(const VectorFieldGerm& X) {
  require_plane(X);
  const int D = X.degree();
  const TowerPtr t = X.tower();
  MultiPoly x = MultiPoly::var(2, 0, t), y = MultiPoly::var(2, 1, t);
  return (x * X[1].homogeneous(D) - y * X[0].homogeneous(D)).is_zero();
}

HomogeneousField3 affine_to_homogeneous(const VectorFieldGerm& X, char chart) {
  require_plane(X);
  const int k = chart_index(chart);
  auto [o0, o1] = others(k);
  const TowerPtr t = X.tower();
  const int D = X.degree();
  MultiPoly x = MultiPoly::var(2, 0, t), y = MultiPoly::var(2, 1, t);
  std::vector<MultiPoly> H(3, MultiPoly(3, t));
  int d = D;
  MultiPoly P = X[0], Q = X[1];
  if (top_part_radial(X)) {
    d = D - 1;
    MultiPoly PD = X[0].homogeneous(D), QD = X[1].homogeneous(D);
    MultiPoly g = PD.is_zero() ? div_exact(QD, y) : div_exact(PD, x);
    H[k] = homogenize(-g, d, chart);
    P = P - x * g;
    Q = Q - y * g;
  }
  H[o0] = homogenize(P, d, chart);
  H[o1] = homogenize(Q, d, chart);
  return normalize_radial(make_homogeneous_field(H));
}

VectorFieldGerm affine_to_other_chart(const VectorFieldGerm& X, char from, char to) {
  return homogeneous_to_affine(affine_to_homogeneous(X, from), to);
}

DegreeReport foliation_degree(const VectorFieldGerm& X, char chart) {
  require_plane(X);
  MultiPoly g = gcd2(X[0], X[1]);
  if (g.degree() > 0) fail("NonIsolatedZeros", "components share the factor " + g.str());
  DegreeReport r = degree_here(X);
  r.chart = chart;
  for (char other : {'a', 'b', 'c'}) {
    if (other == chart) continue;
    DegreeReport o = degree_here(affine_to_other_chart(X, chart, other));
    r.cross_checks.emplace_back(other, o.degree);
    if (o.degree != r.degree)
      fail("InternalError", std::string("degree differs in chart ") + other);
  }
  return r;
}

std::string degree_report_to_json(const DegreeReport& r, int indent) {
  nlohmann::ordered_json j;
  j["degree"] = r.degree;
  j["top_part_radial"] = r.top_part_radial;
  j["affine_degree"] = r.affine_degree;
  j["chart"] = std::string(1, r.chart);
  nlohmann::ordered_json cc = nlohmann::ordered_json::object();
  for (const auto& [c, d] : r.cross_checks) cc[std::string(1, c)] = d;
  j["cross_checks"] = cc;
  return j.dump(indent);
}

bool line_at_infinity_invariant(const VectorFieldGerm& X) { return !top_part_radial(X); }

TangencyCount tangency_count(const VectorFieldGerm& X, const FieldElement& lambda) {
  require_plane(X);
  const TowerPtr t = common_tower(X.tower(), lambda.tower());
  MultiPoly x = MultiPoly::var(1, 0, t);
  std::vector<MultiPoly> subs{x, lambda * x};
  MultiPoly f = lambda * X[0].embed(t).substitute(subs) - X[1].embed(t).substitute(subs);
  TangencyCount r;
  if (f.is_zero()) {
    r.line_invariant = true;
    return r;
  }
  r.count = f.degree();
  return r;
}

UPoly tangency_bad_polynomial(const VectorFieldGerm& X) {
  require_plane(X);
  const TowerPtr t = X.tower();
  DegreeReport r = degree_here(X);
  std::vector<FieldElement> c(r.degree + 2, FieldElement::zero(t));
  const MultiPoly Pd = X[0].homogeneous(r.degree), Qd = X[1].homogeneous(r.degree);
  for (const auto& [e, v] : Pd.terms()) c[e[1] + 1] += v;
  for (const auto& [e, v] : Qd.terms()) c[e[1]] -= v;
  return UPoly(t, c);
}

GenericTangency generic_tangency_count(const VectorFieldGerm& X, unsigned seed) {
  UPoly bad = tangency_bad_polynomial(X);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  GenericTangency g;
  g.bad_set_everything = bad.is_zero();
  for (int attempt = 0; attempt < 64; ++attempt) {
    long p = num(rng), q = den(rng);
    if (p == 0) continue;
    Rational v(p, q);
    v.canonicalize();
    FieldElement lam(v);
    if (!g.bad_set_everything && bad.eval(lam).is_zero()) {
      g.rejected.push_back(lam);
      continue;
    }
    g.lambda = lam;
    g.result = tangency_count(X, lam);
    return g;
  }
  fail("SamplingExhausted", "no generic slope found in 64 samples");
}

DimensionReport fol_space_dimension(int d) {
  if (d < 0) fail("InvalidArgument", "degree must be nonnegative");
  DimensionReport r;
  r.d = d;
  r.formula = static_cast<long>(d + 1) * (d + 3) - 1;
  std::vector<Exponent> rows = exponents_of_degree(3, d);
  std::vector<Exponent> cols = d >= 1 ? exponents_of_degree(3, d - 1) : std::vector<Exponent>{};
  std::map<Exponent, std::size_t, GradedLex> index;
  for (std::size_t k = 0; k < rows.size(); ++k) index[rows[k]] = k;
  std::vector<std::vector<Rational>> m(3 * rows.size(), std::vector<Rational>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < 3; ++i) {
      Exponent e = cols[j];
      e[i] += 1;
      m[i * rows.size() + index.at(e)][j] = 1;
    }
  r.radial_rank = cols.empty() ? 0 : rational_rank(m);
  r.counted = 3 * static_cast<long>(rows.size()) - r.radial_rank - 1;
  r.agree = r.counted == r.formula && r.radial_rank == binom(d + 1, 2);
  return r;
}

HomogeneousField3 jouanolou(int n) {
  if (n < 1) fail("InvalidArgument", "Jouanolou index must be at least 1");
  std::vector<MultiPoly> H;
  for (int i = 0; i < 3; ++i) H.push_back(MultiPoly::var(3, (i + 1) % 3).pow(n));
  return make_homogeneous_field(H);
}

std::optional<int> quasi_homogeneous_degree(const MultiPoly& p, const std::vector<int>& weights) {
  if (static_cast<int>(weights.size()) != p.nvars()) fail("DimensionMismatch", "one weight per variable");
  for (int w : weights)
    if (w <= 0) fail("InvalidArgument", "weights must be positive");
  std::optional<int> d;
  for (const auto& [e, c] : p.terms()) {
    int s = 0;
    for (int i = 0; i < p.nvars(); ++i) s += e[i] * weights[i];
    if (d && *d != s) return std::nullopt;
    d = s;
  }
  return d;
}

std::optional<int> quasi_homogeneous_degree(const VectorFieldGerm& X, const std::vector<int>& weights) {
  if (static_cast<int>(weights.size()) != X.dim()) fail("DimensionMismatch", "one weight per variable");
  std::optional<int> d;
  for (int i = 0; i < X.dim(); ++i) {
    std::optional<int> di = quasi_homogeneous_degree(X[i], weights);
    if (X[i].is_zero()) continue;
    if (!di) return std::nullopt;
    int cand = *di + 1 - weights[i];
    if (d && *d != cand) return std::nullopt;
    d = cand;
  }
  return d;
}

std::optional<RiccatiData> riccati_recognize(const VectorFieldGerm& X) {
  require_plane(X);
  const TowerPtr t = X.tower();
  if (X[0].is_zero()) return std::nullopt;
  std::vector<std::vector<FieldElement>> P(1), R(3);
  auto put = [&](std::vector<FieldElement>& v, int k, const FieldElement& c) {
    if (static_cast<int>(v.size()) <= k) v.resize(k + 1, FieldElement::zero(t));
    v[k] += c;
  };
  for (const auto& [e, c] : X[0].terms()) {
    if (e[1] != 0) return std::nullopt;
    put(P[0], e[0], c);
  }
  for (const auto& [e, c] : X[1].terms()) {
    if (e[1] > 2) return std::nullopt;
    put(R[e[1]], e[0], c);
  }
  RiccatiData r;
  r.P = UPoly(t, P[0]);
  r.c = UPoly(t, R[0]);
  r.b = UPoly(t, R[1]);
  r.a = UPoly(t, R[2]);
  if (r.P.degree() > 0) {
    for (auto& [f, m] : factor(r.P)) {
      InvariantFiber fib{f, m, std::nullopt};
      if (f.degree() == 1) fib.root = -f.coeff(0);
      r.fibers.push_back(fib);
    }
  } else {
    r.note = "P is constant: no invariant fiber in the affine chart; only the fiber over infinity can be invariant";
  }
  return r;
}

VectorFieldGerm riccati_field(const UPoly& P, const UPoly& a, const UPoly& b, const UPoly& c) {
  TowerPtr t = common_tower(common_tower(P.tower(), a.tower()), common_tower(b.tower(), c.tower()));
  MultiPoly y = MultiPoly::var(2, 1, t);
  MultiPoly A = MultiPoly::from_upoly(a.embed(t), 2, 0), B = MultiPoly::from_upoly(b.embed(t), 2, 0),
            C = MultiPoly::from_upoly(c.embed(t), 2, 0);
  return VectorFieldGerm({MultiPoly::from_upoly(P.embed(t), 2, 0), A * y * y + B * y + C});
}

}  // namespace folkit
