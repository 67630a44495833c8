#include "folkit/holonomy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "folkit/errors.hpp"
#include "folkit/parser.hpp"
#include "json.hpp"

namespace folkit {

namespace {

Rational frac_part(const Rational& r) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational f = r - Rational(fl);
  f.canonicalize();
  return f;
}

// Primitive root of unity exp(2 pi i t) as an exact element, when phi(den) <= 6.
std::optional<FieldElement> root_of_unity(const Rational& t) {
  long m = t.get_den().get_si();
  long k = t.get_num().get_si();
  if (m == 1) return FieldElement(1);
  if (m == 2) return FieldElement(-1);
  if (m == 4) return k % 4 == 1 ? FieldElement::i() : -FieldElement::i();
  // Phi_m over Q by dividing out Phi_d for proper divisors d.
  TowerPtr Q = Tower::rationals();
  auto xm1 = [&](long n) {
    std::vector<FieldElement> c(n + 1, FieldElement(0));
    c[0] = FieldElement(-1);
    c[n] = FieldElement(1);
    return UPoly(Q, c);
  };
  // Phi_m = (x^m - 1) / lcm of (x^d - 1), d | m, d < m
  UPoly phi = xm1(m);
  UPoly l = UPoly(Q, {FieldElement(1)});
  for (long d = 1; d < m; ++d)
    if (m % d == 0) l = divmod(l * xm1(d), gcd(l, xm1(d))).first;
  phi = divmod(phi, l).first;
  if (phi.degree() > 6) return std::nullopt;
  static std::mutex mu;
  static std::map<long, TowerPtr> cache;
  TowerPtr T;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, adjoin_root(Q, phi.monic(), TowerCaps{1, 6})).first;
    T = it->second;
  }
  FieldElement z = FieldElement::generator(T);
  std::complex<double> want = std::polar(1.0, 2 * M_PI * t.get_d());
  FieldElement pw = FieldElement::one(T);
  for (long j = 0; j < m; ++j) {
    if (std::abs(pw.numeric() - want) < 1e-9) return pw;
    pw *= z;
  }
  return std::nullopt;
}

using TSeries = std::vector<TauScalar>;  // index = power of z

TSeries ts_mul(const TSeries& a, const TSeries& b, int N) {
  TSeries r(N + 1);
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j)
      if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

TSeries ts_compose(const TSeries& f, const TSeries& g, int N) {
  TSeries r(N + 1), pw(N + 1);
  pw[0] = TauScalar(FieldElement(1));
  for (int k = 1; k <= N && k < static_cast<int>(f.size()); ++k) {
    pw = ts_mul(pw, g, N);
    if (f[k].is_zero()) continue;
    for (int i = 0; i <= N; ++i)
      if (!pw[i].is_zero()) r[i] = r[i] + f[k] * pw[i];
  }
  return r;
}

TauScalar from_poly_in_tau(const UPoly& a) {
  TauScalar r, pw(FieldElement(1));
  for (int j = 0; j <= a.degree(); ++j) {
    if (!a.coeff(j).is_zero()) r = r + TauScalar(a.coeff(j)) * pw;
    pw = pw * TauScalar::tau();
  }
  return r;
}

}  // namespace

Multiplier Multiplier::from_ratio(const FieldElement& r) {
  Multiplier m;
  m.ratio = r;
  if (r.is_rational()) m.turns = frac_part(r.rational());
  return m;
}

std::complex<double> Multiplier::value() const {
  if (turns) return std::polar(1.0, 2 * M_PI * turns->get_d());
  return std::exp(std::complex<double>(0, 2 * M_PI) * ratio.numeric());
}

double Multiplier::modulus() const { return std::exp(-2 * M_PI * ratio.numeric().imag()); }

std::optional<int> Multiplier::order() const {
  if (!turns) return std::nullopt;
  return static_cast<int>(turns->get_den().get_si());
}

std::string Multiplier::str() const {
  if (turns) return turns->get_num() == 0 ? "1" : "exp(2*pi*i*" + to_string(*turns) + ")";
  return "exp(2*pi*i*(" + render(ratio) + "))";
}

Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  TowerPtr T = common_tower(a.ratio.tower(), b.ratio.tower());
  return Multiplier::from_ratio(a.ratio.embed(T) + b.ratio.embed(T));
}

TauScalar HolonomyGerm::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(series.size())) return TauScalar();
  return series[k];
}

HolonomyGerm HolonomyGerm::from_coeffs(std::vector<TauScalar> coeffs, int N) {
  HolonomyGerm h;
  coeffs.resize(N + 1);
  h.series = coeffs;
  h.N = N;
  const TauScalar& c1 = h.series[1];
  if (c1.degree() != 0) return h;
  FieldElement v = c1.coeff(0), pw = v;
  std::complex<double> z = v.numeric();
  for (int m = 1; m <= 24; ++m, pw *= v) {
    if (pw != FieldElement(1)) continue;
    Rational q(std::lround(std::arg(z) / (2 * M_PI) * m), m);
    q.canonicalize();
    h.multiplier = Multiplier::from_ratio(FieldElement(q));
    return h;
  }
  // not a root of unity: log(v) / (2 pi i) through the float channel
  std::complex<double> r = std::log(z) / std::complex<double>(0, 2 * M_PI);
  h.multiplier = Multiplier::from_ratio(FieldElement::gaussian(Rational(r.real()), Rational(r.imag())));
  h.multiplier.turns.reset();
  h.multiplier.exact = false;
  return h;
}

HolonomyGerm compose(const HolonomyGerm& f, const HolonomyGerm& g) {
  int N = std::min(f.N, g.N);
  HolonomyGerm h;
  h.N = N;
  h.series = ts_compose(f.series, g.series, N);
  h.multiplier = f.multiplier * g.multiplier;
  return h;
}

HolonomyGerm inverse(const HolonomyGerm& h) {
  const int N = h.N;
  TauScalar c1 = h.coeff(1);
  if (c1.degree() != 0) fail("NotInvertible", "linear coefficient must be a nonzero constant");
  FieldElement ic = c1.coeff(0).inverse();
  TSeries g(N + 1);
  g[1] = TauScalar(ic);
  for (int k = 2; k <= N; ++k) {
    TSeries hg = ts_compose(h.series, g, k);
    g[k] = TauScalar(-ic) * hg[k];
  }
  HolonomyGerm r;
  r.N = N;
  r.series = g;
  r.multiplier = Multiplier::from_ratio(-h.multiplier.ratio);
  return r;
}

HolonomyGerm identity_germ(int N, const TowerPtr& t) {
  std::vector<TauScalar> c(N + 1);
  c[1] = TauScalar(FieldElement::one(t));
  return HolonomyGerm::from_coeffs(c, N);
}

HolonomyGerm linear_holonomy(const FieldElement& l1, const FieldElement& l2) {
  if (l1.is_zero()) fail("ZeroBaseEigenvalue", "lambda1 = 0");
  TowerPtr T = common_tower(l1.tower(), l2.tower());
  FieldElement r = l2.embed(T) / l1.embed(T);
  HolonomyGerm h;
  h.multiplier = Multiplier::from_ratio(r);
  h.N = 1;
  h.series.resize(2);
  if (h.multiplier.turns)
    if (auto z = root_of_unity(*h.multiplier.turns)) h.series[1] = TauScalar(*z);
  return h;
}

HolonomyGerm saddle_node_holonomy(int p, const FieldElement& lambda, int N) {
  if (p < 1) fail("WrongClass", "p must be positive");
  if (N < p + 2) fail("TruncationTooSmall", "N < p + 2");
  TowerPtr T = lambda.tower();
  // y(s) = sum a_k(s) z^k with s = tau t, dy/ds = y^(p+1) / (1 + lambda y^p).
  using USeries = std::vector<UPoly>;
  auto umul = [&](const USeries& a, const USeries& b) {
    USeries r(N + 1, UPoly(T));
    for (int i = 0; i <= N; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j <= N; ++j)
        if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
  };
  USeries a(N + 1, UPoly(T));
  a[1] = UPoly(T, {FieldElement::one(T)});
  for (int k = 2; k <= N; ++k) {
    USeries yp(N + 1, UPoly(T));
    yp[0] = UPoly(T, {FieldElement::one(T)});
    for (int j = 0; j < p; ++j) yp = umul(yp, a);
    USeries yp1 = umul(yp, a);
    // 1 / (1 + lambda y^p) as a geometric series
    USeries inv(N + 1, UPoly(T)), term(N + 1, UPoly(T));
    inv[0] = term[0] = UPoly(T, {FieldElement::one(T)});
    USeries ly(N + 1, UPoly(T));
    for (int i = 0; i <= N; ++i) ly[i] = (-lambda) * yp[i];
    for (int j = 1; j * p <= N; ++j) {
      term = umul(term, ly);
      for (int i = 0; i <= N; ++i) inv[i] = inv[i] + term[i];
    }
    UPoly g = umul(yp1, inv)[k];
    std::vector<FieldElement> integ(g.degree() + 2, FieldElement::zero(T));
    for (int j = 0; j <= g.degree(); ++j) integ[j + 1] = g.coeff(j) / FieldElement(static_cast<long>(j + 1));
    a[k] = UPoly(T, integ);
  }
  std::vector<TauScalar> c(N + 1);
  for (int k = 1; k <= N; ++k) c[k] = from_poly_in_tau(a[k]);
  return HolonomyGerm::from_coeffs(c, N);
}

HolonomyGerm saddle_node_holonomy(const NormalFormResult& dulac, int N) {
  if (!dulac.p || !dulac.lambda) fail("WrongClass", "no Dulac data");
  return saddle_node_holonomy(*dulac.p, *dulac.lambda, N);
}

GermOrder germ_order(const HolonomyGerm& h, int N, int cap) {
  GermOrder r;
  N = std::min(N, h.N);
  TauScalar c1 = h.coeff(1);
  if (c1.degree() != 0) {
    r.undecided = true;
    return r;
  }
  FieldElement c = c1.coeff(0);
  int m = 0;
  FieldElement pw = c;
  for (int k = 1; k <= cap; ++k) {
    if (pw == FieldElement(1)) {
      m = k;
      break;
    }
    pw *= c;
  }
  if (!m) {
    r.undecided = true;
    return r;
  }
  HolonomyGerm t = h;
  t.N = N;
  t.series.resize(N + 1);
  HolonomyGerm hm = t;
  for (int k = 1; k < m; ++k) hm = compose(t, hm);
  for (int k = 1; k <= N; ++k) {
    TauScalar want = k == 1 ? TauScalar(FieldElement(1)) : TauScalar();
    if (hm.coeff(k) != want) {
      r.obstruction_degree = k;
      r.obstruction = hm.coeff(k) - want;
      return r;
    }
  }
  r.order = m;
  return r;
}

std::string to_string(LeafVerdict v) {
  switch (v) {
    case LeafVerdict::SiegelRationalOK: return "SiegelRationalOK";
    case LeafVerdict::SiegelRationalObstructed: return "SiegelRationalObstructed";
    case LeafVerdict::SaddleNodeFail: return "SaddleNodeFail";
    case LeafVerdict::HyperbolicFail: return "HyperbolicFail";
    case LeafVerdict::PositiveRealRatioFail: return "PositiveRealRatioFail";
    case LeafVerdict::IrrationalSiegelUndecided: return "IrrationalSiegelUndecided";
    case LeafVerdict::DicriticalFail: return "DicriticalFail";
    case LeafVerdict::Regular: return "Regular";
  }
  return "";
}

std::string to_string(Overall v) {
  switch (v) {
    case Overall::PassesNecessaryConditions: return "PassesNecessaryConditions";
    case Overall::Fails: return "Fails";
    case Overall::Undecided: return "Undecided";
  }
  return "";
}

namespace {

bool is_failure(LeafVerdict v) {
  return v == LeafVerdict::SiegelRationalObstructed || v == LeafVerdict::SaddleNodeFail ||
         v == LeafVerdict::HyperbolicFail || v == LeafVerdict::PositiveRealRatioFail ||
         v == LeafVerdict::DicriticalFail;
}

// Orbital linearizability of the Poincare-Dulac form: psi_i / (lambda_i y_i) agree.
void check_siegel_leaf(const OneFormGerm& form, int N, LeafCheck& lc) {
  VectorFieldGerm X = dualize(form);
  auto d = diagonalize_linear_part(X);
  const FieldElement& l1 = d.eigenvalues[0];
  const FieldElement& l2 = d.eigenvalues[1];
  TowerPtr T = common_tower(l1.tower(), l2.tower());
  FieldElement ratio = l2.embed(T) / l1.embed(T);
  Rational q = -ratio.rational();
  long a = q.get_num().get_si(), b = q.get_den().get_si();
  int Neff = std::max(N, static_cast<int>(2 * (a + b) + 1));
  VectorFieldGerm Y = linear_change(X, d.P, d.Pinv);
  auto r = solve_conjugacy(Y, poincare_dulac(), Neff);
  TowerPtr U = r.normal_form.tower();
  MultiPoly A = (r.normal_form[0] - r.eigenvalues[0] * MultiPoly::var(2, 0, U)).div_var_power(0, 1);
  MultiPoly B = (r.normal_form[1] - r.eigenvalues[1] * MultiPoly::var(2, 1, U)).div_var_power(1, 1);
  MultiPoly diff = r.eigenvalues[0].inverse() * A - r.eigenvalues[1].inverse() * B;
  lc.multiplier = Multiplier::from_ratio(ratio);
  lc.checked_through = Neff;
  if (diff.is_zero()) {
    lc.verdict = LeafVerdict::SiegelRationalOK;
    lc.holonomy_order = lc.multiplier->order();
    lc.reason = "resonant normal form is orbitally linear through order " + std::to_string(Neff);
  } else {
    auto it = diff.terms().begin();
    lc.verdict = LeafVerdict::SiegelRationalObstructed;
    lc.obstruction_degree = total_degree(it->first) + 1;
    lc.obstruction = render(it->second);
    lc.reason = "holonomy is not periodic: resonant normal form is not orbitally linear";
  }
}

}  // namespace

CriterionReport mattei_moussu_criterion(const OneFormGerm& w, int N) {
  CriterionReport rep;
  rep.tree = seidenberg_resolve(w);
  for (const auto& n : rep.tree.nodes) {
    LeafCheck lc;
    lc.node = n.id;
    if (n.blown_up) {
      if (!n.dicritical) continue;
      lc.verdict = LeafVerdict::DicriticalFail;
      lc.reason = "dicritical blow-up: infinitely many separatrices";
      rep.leaves.push_back(lc);
      continue;
    }
    switch (n.report.cls) {
      case SingClass::Regular:
        lc.verdict = LeafVerdict::Regular;
        lc.reason = "regular point";
        break;
      case SingClass::SaddleNode:
        lc.verdict = LeafVerdict::SaddleNodeFail;
        lc.reason = "saddle-node in the resolution tree";
        break;
      case SingClass::Hyperbolic:
        lc.verdict = LeafVerdict::HyperbolicFail;
        lc.reason = "hyperbolic singularity in the resolution tree";
        break;
      case SingClass::SimplePoincareNonresonant:
        lc.verdict = LeafVerdict::PositiveRealRatioFail;
        lc.reason = "eigenvalue ratio in R+";
        break;
      case SingClass::SiegelIrrational:
        lc.verdict = LeafVerdict::IrrationalSiegelUndecided;
        lc.reason = "irrational rotation number";
        break;
      case SingClass::SiegelRational:
        check_siegel_leaf(n.form, N, lc);
        break;
      default:
        fail("InternalError", "leaf is not in final form");
    }
    rep.leaves.push_back(lc);
  }
  bool undecided = false;
  for (const auto& lc : rep.leaves) {
    if (is_failure(lc.verdict)) {
      rep.overall = Overall::Fails;
      rep.reason = to_string(lc.verdict);
      return rep;
    }
    if (lc.verdict == LeafVerdict::IrrationalSiegelUndecided) undecided = true;
  }
  if (undecided) {
    rep.overall = Overall::Undecided;
    rep.reason = to_string(LeafVerdict::IrrationalSiegelUndecided);
  }
  return rep;
}

std::string criterion_to_json(const CriterionReport& r, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["overall"] = to_string(r.overall);
  if (!r.reason.empty()) j["reason"] = r.reason;
  ordered_json leaves = ordered_json::array();
  for (const auto& lc : r.leaves) {
    ordered_json o;
    o["node"] = lc.node;
    o["verdict"] = to_string(lc.verdict);
    o["citation"] = lc.reason;
    if (lc.multiplier) o["multiplier"] = lc.multiplier->str();
    if (lc.holonomy_order) o["holonomy_order"] = *lc.holonomy_order;
    if (lc.checked_through) o["checked_through"] = lc.checked_through;
    if (lc.obstruction_degree) o["obstruction"] = {{"degree", lc.obstruction_degree}, {"coefficient", lc.obstruction}};
    leaves.push_back(o);
  }
  j["leaves"] = leaves;
  j["blowups"] = r.tree.blowups;
  return j.dump(indent);
}

HomogeneousIntegral first_integral_data(const VectorFieldGerm& X0) {
  if (X0.dim() != 2) fail("DimensionNotTwo", "first integrals need n = 2");
  if (X0.is_zero()) fail("ZeroInput", "zero field");
  const int k0 = X0.order();
  if (X0.degree() != k0) fail("WrongClass", "field is not homogeneous");
  MultiPoly h = gcd2(X0[0], X0[1]);
  VectorFieldGerm X({div_exact(X0[0], h), div_exact(X0[1], h)});
  const int k = X.degree();
  TowerPtr T = X.tower();
  MultiPoly F = X[0].embed(T), G = X[1].embed(T);
  std::vector<FieldElement> rc(k + 2, FieldElement::zero(T));
  for (const auto& [e, c] : G.terms()) rc[e[1]] += c;
  for (const auto& [e, c] : F.terms()) rc[e[1] + 1] -= c;
  UPoly R(T, rc);
  if (R.is_zero()) fail("DicriticalInput", "tangent cone vanishes identically");
  HomogeneousIntegral out;
  Rational sum = 0;
  for (const auto& [q, mult] : factor(R)) {
    if (mult > 1) fail("NonIntegerResidues", "repeated invariant line");
    TowerPtr E = q.degree() > 1 ? adjoin_root(T, q) : T;
    FieldElement t0 = q.degree() > 1 ? FieldElement::generator(E) : -q.coeff(0);
    FieldElement num = F.embed(E).eval({FieldElement::one(E), t0});
    FieldElement den = R.embed(E).derivative().eval(t0);
    FieldElement r = -num / den;
    if (!r.is_rational()) fail("NonIntegerResidues", "residue " + render(r) + " is not rational");
    InvariantLine L;
    L.degree = q.degree();
    L.residue = r.rational();
    L.form = MultiPoly(2, T);
    for (int j = 0; j <= q.degree(); ++j)
      if (!q.coeff(j).is_zero()) L.form.add_term({q.degree() - j, j}, q.coeff(j));
    sum += L.residue * L.degree;
    out.lines.push_back(L);
  }
  int inf = k + 1 - R.degree();
  if (inf > 1) fail("NonIntegerResidues", "repeated invariant line x = 0");
  if (inf == 1) {
    InvariantLine L;
    L.residue = 1 - sum;
    L.form = MultiPoly::var(2, 0, T);
    out.lines.push_back(L);
  }
  mpz_class lden = 1;
  for (const auto& L : out.lines) {
    if (L.residue <= 0) fail("NonIntegerResidues", "residue " + to_string(L.residue) + " is not positive");
    mpz_lcm(lden.get_mpz_t(), lden.get_mpz_t(), L.residue.get_den_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& L : out.lines) {
    Rational v = L.residue * Rational(lden);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  out.P = MultiPoly::constant(2, FieldElement::one(T));
  for (auto& L : out.lines) {
    Rational v = L.residue * Rational(lden) / Rational(g);
    L.exponent = static_cast<int>(v.get_num().get_si());
    out.total += L.exponent * L.degree;
    out.P = out.P * L.form.pow(L.exponent);
  }
  if (!wedge_vanishes(dualize(X), out.P)) fail("InternalError", "constructed integral fails the wedge identity");
  // Prefer the power of P whose Hamiltonian field is proportional to the input.
  const int dP = out.P.degree();
  if ((k0 + 1) % dP == 0) {
    const int m = (k0 + 1) / dP;
    MultiPoly Q = out.P.pow(m);
    VectorFieldGerm H = hamiltonian(Q);
    FieldElement c0 = X0[0].is_zero() ? X0[1].terms().begin()->second : X0[0].terms().begin()->second;
    FieldElement h0 = X0[0].is_zero() ? H[1].terms().begin()->second : H[0].terms().begin()->second;
    if (h0 * X0[0].embed(T) == c0 * H[0] && h0 * X0[1].embed(T) == c0 * H[1]) {
      out.P = Q;
      for (auto& L : out.lines) L.exponent *= m;
      out.total *= m;
    }
  }
  return out;
}

MultiPoly construct_first_integral_homogeneous(const VectorFieldGerm& X) { return first_integral_data(X).P; }

std::vector<Multiplier> projective_holonomy_generators(const VectorFieldGerm& X) {
  auto d = first_integral_data(X);
  std::vector<Multiplier> out;
  for (const auto& L : d.lines)
    for (int c = 0; c < L.degree; ++c)
      out.push_back(Multiplier::from_ratio(FieldElement(Rational(-L.exponent) / Rational(d.total))));
  return out;
}

bool verify_first_integral(const OneFormGerm& w, const MultiPoly& f) { return wedge_vanishes(w, f); }

}  // namespace folkit
