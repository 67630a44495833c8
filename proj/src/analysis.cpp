#include "folkit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "folkit/errors.hpp"

namespace folkit {

std::string to_string(SingClass c) {
  switch (c) {
    case SingClass::Regular: return "Regular";
    case SingClass::SimplePoincareNonresonant: return "SimplePoincareNonresonant";
    case SingClass::SimpleResonantRatioN: return "SimpleResonantRatioN";
    case SingClass::SiegelRational: return "SiegelRational";
    case SingClass::SiegelIrrational: return "SiegelIrrational";
    case SingClass::Hyperbolic: return "Hyperbolic";
    case SingClass::SaddleNode: return "SaddleNode";
    case SingClass::Nilpotent: return "Nilpotent";
    case SingClass::Degenerate: return "Degenerate";
  }
  return "?";
}

std::string to_string(Domain d) {
  switch (d) {
    case Domain::Poincare: return "Poincare";
    case Domain::Siegel: return "Siegel";
    case Domain::StrictSiegel: return "StrictSiegel";
    case Domain::None: return "none";
  }
  return "?";
}

std::string SingularityReport::tag() const {
  if (cls == SingClass::SimpleResonantRatioN) return "SimpleResonantRatioN(" + std::to_string(n) + ")";
  if (cls == SingClass::SiegelRational)
    return "SiegelRational(" + std::to_string(m) + "," + std::to_string(n) + ")";
  return to_string(cls);
}

bool SingularityReport::is_final() const {
  if (order > 1) return false;
  switch (cls) {
    case SingClass::Regular:
    case SingClass::SimplePoincareNonresonant:
    case SingClass::SiegelRational:
    case SingClass::SiegelIrrational:
    case SingClass::Hyperbolic:
    case SingClass::SaddleNode: return true;
    default: return false;
  }
}

LinearData linear_data(const VectorFieldGerm& X) {
  if (X.dim() != 2) fail("DimensionNotTwo", "linear data needs n = 2");
  TowerPtr t = X.tower();
  LinearData L;
  L.a = X[0].coeff({1, 0}).embed(t);
  L.b = X[0].coeff({0, 1}).embed(t);
  L.c = X[1].coeff({1, 0}).embed(t);
  L.d = X[1].coeff({0, 1}).embed(t);
  L.trace = L.a + L.d;
  L.det = L.a * L.d - L.b * L.c;
  if (!L.det.is_zero()) L.s = L.trace * L.trace / L.det;
  return L;
}

bool is_real(const FieldElement& v) {
  if (v.is_rational()) return true;
  if (v.is_gaussian()) return sgn(v.im()) == 0;
  auto z = v.numeric();
  return std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z));
}

namespace {

// Rational root of q(q-4) via the quadratic r^2 - (q-2) r + 1; returns the root with |r| >= 1.
std::optional<Rational> rational_ratio(const Rational& q, bool negative_side) {
  Rational disc = q * (q - 4), w;
  if (!rational_square(disc, &w)) return std::nullopt;
  Rational r = negative_side ? Rational(((q - 2) - w) / 2) : Rational(((q - 2) + w) / 2);
  r.canonicalize();
  return r;
}

}  // namespace

SingularityReport classify_singularity(const VectorFieldGerm& X) {
  if (X.dim() != 2) fail("DimensionNotTwo", "classification needs n = 2");
  if (X.is_zero()) fail("ZeroInput", "zero vector field");
  SingularityReport R;
  R.lin = linear_data(X);
  if (!X[0].constant_term().is_zero() || !X[1].constant_term().is_zero()) {
    R.order = 0;
    R.cls = SingClass::Regular;
    return R;
  }
  R.order = X.order();
  const LinearData& L = R.lin;
  if (L.a.is_zero() && L.b.is_zero() && L.c.is_zero() && L.d.is_zero()) {
    R.cls = SingClass::Degenerate;
    return R;
  }
  if (L.det.is_zero()) {
    if (!L.trace.is_zero()) {
      R.cls = SingClass::SaddleNode;
      R.domain = Domain::Siegel;
    } else {
      R.cls = SingClass::Nilpotent;
    }
    return R;
  }
  const FieldElement& s = *L.s;
  if (!is_real(s)) {
    R.cls = SingClass::Hyperbolic;
    R.domain = Domain::Poincare;
    return R;
  }
  if (!s.is_rational()) {
    double v = s.numeric().real();
    if (v <= 0) {
      R.cls = SingClass::SiegelIrrational;
      R.domain = Domain::Siegel;
    } else if (v < 4) {
      R.cls = SingClass::Hyperbolic;
      R.domain = Domain::Poincare;
    } else {
      R.cls = SingClass::SimplePoincareNonresonant;
      R.domain = Domain::Poincare;
    }
    return R;
  }
  Rational q = s.rational();
  if (sgn(q) <= 0) {
    R.domain = Domain::Siegel;
    auto r = rational_ratio(q, true);
    if (!r) {
      R.cls = SingClass::SiegelIrrational;
      return R;
    }
    Rational mr = -*r;  // n/m >= 1
    R.cls = SingClass::SiegelRational;
    R.n = static_cast<int>(mr.get_num().get_si());
    R.m = static_cast<int>(mr.get_den().get_si());
    return R;
  }
  R.domain = Domain::Poincare;
  if (q < 4) {
    R.cls = SingClass::Hyperbolic;
    return R;
  }
  auto r = rational_ratio(q, false);
  if (r && r->get_den() == 1) {
    R.cls = SingClass::SimpleResonantRatioN;
    R.n = static_cast<int>(r->get_num().get_si());
  } else {
    R.cls = SingClass::SimplePoincareNonresonant;
  }
  return R;
}

std::pair<FieldElement, FieldElement> eigenvalues(const LinearData& L, const TowerCaps& caps) {
  if (L.b.is_zero() || L.c.is_zero()) return {L.a, L.d};
  TowerPtr t = common_tower(L.trace.tower(), L.det.tower());
  UPoly chi(t, {L.det, -L.trace, FieldElement::one(t)});
  auto fs = factor(chi);
  if (fs.size() == 1 && fs[0].second == 1 && fs[0].first.degree() == 2) {
    TowerPtr e = adjoin_root(t, chi, caps);
    FieldElement l1 = FieldElement::generator(e);
    return {l1, L.trace.embed(e) - l1};
  }
  std::vector<FieldElement> roots;
  for (const auto& [f, m] : fs)
    for (int k = 0; k < m; ++k) roots.push_back(-f.coeff(0));
  std::sort(roots.begin(), roots.end(), [](const FieldElement& x, const FieldElement& y) {
    auto a = x.numeric(), b = y.numeric();
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return {roots[0], roots[1]};
}

FieldElement delta(const std::vector<FieldElement>& eigs, int i, const Exponent& q) {
  FieldElement s = -eigs[i];
  for (std::size_t j = 0; j < eigs.size(); ++j)
    if (q[j] != 0) s += FieldElement(static_cast<long>(q[j])) * eigs[j];
  return s;
}

ResonanceList detect_resonances(const std::vector<FieldElement>& eigs, int N) {
  ResonanceList out;
  const int n = static_cast<int>(eigs.size());
  for (int d = 2; d <= N; ++d)
    for (const auto& q : exponents_of_degree(n, d))
      for (int i = 0; i < n; ++i)
        if (delta(eigs, i, q).is_zero()) out.emplace_back(i, q);
  return out;
}

namespace {

template <class T>
struct Pt {
  T x, y;
};

int sign_of(const Rational& v, double) { return sgn(v); }
int sign_of(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

template <class T>
Domain hull_domain(const std::vector<Pt<T>>& pts, double eps) {
  bool has_zero = false;
  std::vector<Pt<T>> nz;
  for (const auto& p : pts) {
    if (sign_of(p.x, eps) == 0 && sign_of(p.y, eps) == 0)
      has_zero = true;
    else
      nz.push_back(p);
  }
  if (nz.empty()) return Domain::Siegel;
  auto half = [&](const Pt<T>& p) {
    int sy = sign_of(p.y, eps);
    return (sy < 0 || (sy == 0 && sign_of(p.x, eps) < 0)) ? 1 : 0;
  };
  auto cross = [&](const Pt<T>& a, const Pt<T>& b) { return sign_of(T(a.x * b.y - a.y * b.x), eps); };
  auto dot = [&](const Pt<T>& a, const Pt<T>& b) { return sign_of(T(a.x * b.x + a.y * b.y), eps); };
  std::sort(nz.begin(), nz.end(), [&](const Pt<T>& a, const Pt<T>& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
  });
  std::vector<Pt<T>> dirs;
  for (const auto& p : nz)
    if (dirs.empty() || !(cross(dirs.back(), p) == 0 && dot(dirs.back(), p) > 0)) dirs.push_back(p);
  if (dirs.size() > 1 && cross(dirs.back(), dirs.front()) == 0 && dot(dirs.back(), dirs.front()) > 0)
    dirs.pop_back();
  bool open = dirs.size() == 1, boundary = false;
  for (std::size_t k = 0; k < dirs.size() && dirs.size() > 1; ++k) {
    const auto& u = dirs[k];
    const auto& v = dirs[(k + 1) % dirs.size()];
    int c = cross(u, v);
    if (c < 0) open = true;
    if (c == 0) boundary = true;
  }
  if (open) return has_zero ? Domain::Siegel : Domain::Poincare;
  if (boundary) return Domain::Siegel;
  return Domain::StrictSiegel;
}

bool all_gaussian(const std::vector<FieldElement>& eigs) {
  return std::all_of(eigs.begin(), eigs.end(), [](const FieldElement& e) { return e.is_gaussian(); });
}

std::vector<std::complex<double>> to_complex(const std::vector<FieldElement>& eigs) {
  std::vector<std::complex<double>> v;
  for (const auto& e : eigs) v.push_back(e.numeric());
  return v;
}

}  // namespace

Domain domain_classification(const std::vector<FieldElement>& eigs) {
  if (eigs.size() < 2) fail("DimensionMismatch", "need at least two eigenvalues");
  if (!all_gaussian(eigs)) return domain_classification(to_complex(eigs));
  std::vector<Pt<Rational>> pts;
  for (const auto& e : eigs) pts.push_back({e.re(), e.im()});
  return hull_domain(pts, 0.0);
}

Domain domain_classification(const std::vector<std::complex<double>>& eigs, double eps) {
  if (eigs.size() < 2) fail("DimensionMismatch", "need at least two eigenvalues");
  std::vector<Pt<double>> pts;
  for (const auto& e : eigs) pts.push_back({e.real(), e.imag()});
  return hull_domain(pts, eps);
}

bool separating_line_exists(const std::vector<FieldElement>& eigs) {
  if (!all_gaussian(eigs)) return separating_line_exists(to_complex(eigs));
  std::vector<Pt<Rational>> pts;
  for (std::size_t k = 0; k < eigs.size(); ++k) {
    Rational sg = k == 0 ? 1 : -1;
    pts.push_back({sg * eigs[k].re(), sg * eigs[k].im()});
  }
  return hull_domain(pts, 0.0) == Domain::Poincare;
}

bool separating_line_exists(const std::vector<std::complex<double>>& eigs, double eps) {
  std::vector<Pt<double>> pts;
  for (std::size_t k = 0; k < eigs.size(); ++k) {
    double sg = k == 0 ? 1 : -1;
    pts.push_back({sg * eigs[k].real(), sg * eigs[k].imag()});
  }
  return hull_domain(pts, eps) == Domain::Poincare;
}

namespace {

bool vanishes_at_0(const MultiPoly& p) { return p.constant_term().is_zero(); }

int fulton(MultiPoly f, MultiPoly g) {
  int acc = 0;
  for (;;) {
    if (!vanishes_at_0(f) || !vanishes_at_0(g)) return acc;
    MultiPoly fr = f.restrict(1, FieldElement(0)), gr = g.restrict(1, FieldElement(0));
    if (fr.is_zero() && gr.is_zero()) fail("InternalError", "common component y = 0");
    if (fr.is_zero()) std::swap(f, g), std::swap(fr, gr);
    if (gr.is_zero()) {
      // g = y * g1: I(f, g) = I(f, y) + I(f, g1)
      acc += fr.var_order(0);
      g = g.div_var_power(1, 1);
      continue;
    }
    int r = fr.degree(), s = gr.degree();
    if (r > s) {
      std::swap(f, g);
      std::swap(fr, gr);
      std::swap(r, s);
    }
    FieldElement cf = fr.coeff({r, 0}), cg = gr.coeff({s, 0});
    g = g - MultiPoly::monomial(cg / cf, {s - r, 0}) * f;
  }
}

}  // namespace

std::optional<int> intersection_number(const MultiPoly& f0, const MultiPoly& g0) {
  if (f0.nvars() != 2 || g0.nvars() != 2) fail("DimensionNotTwo", "intersection needs n = 2");
  MultiPoly f = f0, g = g0;
  if (!vanishes_at_0(f) || !vanishes_at_0(g)) return 0;
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  MultiPoly h = gcd2(f, g);
  if (h.degree() > 0) {
    if (vanishes_at_0(h)) return std::nullopt;
    f = div_exact(f, h);
    g = div_exact(g, h);
  }
  return fulton(f, g);
}

}  // namespace folkit
