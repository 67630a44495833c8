#include "folkit/upoly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "folkit/errors.hpp"

namespace folkit {

UPoly::UPoly() : tower_(Tower::rationals()) {}
UPoly::UPoly(TowerPtr t) : tower_(std::move(t)) {}
UPoly::UPoly(TowerPtr t, std::vector<FieldElement> coeffs) : tower_(std::move(t)) {
  for (const auto& c : coeffs) tower_ = common_tower(tower_, c.tower());
  for (auto& c : coeffs) c_.push_back(c.embed(tower_));
  trim();
}

UPoly UPoly::monomial(const FieldElement& c, int k) {
  std::vector<FieldElement> v(k + 1, FieldElement::zero(c.tower()));
  v[k] = c;
  return UPoly(c.tower(), v);
}

UPoly UPoly::x(const TowerPtr& t) { return monomial(FieldElement::one(t), 1); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return FieldElement::zero(tower_);
  return c_[k];
}

FieldElement UPoly::lead() const {
  if (c_.empty()) return FieldElement::zero(tower_);
  return c_.back();
}

UPoly UPoly::embed(const TowerPtr& t) const {
  if (t == tower_) return *this;
  std::vector<FieldElement> v;
  for (const auto& c : c_) v.push_back(c.embed(t));
  return UPoly(t, v);
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  FieldElement inv = c_.back().inverse();
  std::vector<FieldElement> v;
  for (const auto& c : c_) v.push_back(c * inv);
  return UPoly(tower_, v);
}

UPoly UPoly::derivative() const {
  std::vector<FieldElement> v;
  for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * FieldElement(static_cast<long>(k)));
  return UPoly(tower_, v);
}

FieldElement UPoly::eval(const FieldElement& x) const {
  FieldElement r = FieldElement::zero(common_tower(tower_, x.tower()));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly r(common_tower(tower_, inner.tower()));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * inner + UPoly(r.tower(), {*it});
  return r;
}

UPoly UPoly::shift(const FieldElement& s) const {
  TowerPtr t = common_tower(tower_, s.tower());
  return compose(UPoly(t, {s, FieldElement::one(t)}));
}

UPoly UPoly::operator-() const {
  std::vector<FieldElement> v;
  for (const auto& c : c_) v.push_back(-c);
  return UPoly(tower_, v);
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  TowerPtr t = common_tower(a.tower_, b.tower_);
  std::vector<FieldElement> v(std::max(a.c_.size(), b.c_.size()), FieldElement::zero(t));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return UPoly(t, v);
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  TowerPtr t = common_tower(a.tower_, b.tower_);
  if (a.c_.empty() || b.c_.empty()) return UPoly(t);
  std::vector<FieldElement> v(a.c_.size() + b.c_.size() - 1, FieldElement::zero(t));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(t, v);
}

UPoly operator*(const FieldElement& s, const UPoly& a) { return UPoly(s.tower(), {s}) * a; }

bool operator==(const UPoly& a, const UPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t k = 0; k < a.c_.size(); ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

std::string UPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const FieldElement& c = c_[k];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string cs = c.str();
    bool neg = false;
    if (c.is_rational() && sgn(c.rational()) < 0) {
      neg = true;
      cs = (-c).str();
    }
    bool compound = cs.find_first_of("+- ") != std::string::npos && cs.size() > 0 &&
                    cs.find_first_of("+- ", 1) != std::string::npos;
    std::string body;
    if (mono.empty())
      body = compound ? "(" + cs + ")" : cs;
    else if (cs == "1")
      body = mono;
    else
      body = (compound ? "(" + cs + ")" : cs) + "*" + mono;
    if (out.empty())
      out = (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) fail("DivisionByZero", "polynomial division by 0");
  TowerPtr t = common_tower(a.tower(), b.tower());
  std::vector<FieldElement> r;
  for (const auto& c : a.coeffs()) r.push_back(c.embed(t));
  int db = b.degree();
  if (a.degree() < db) return {UPoly(t), a.embed(t)};
  std::vector<FieldElement> q(a.degree() - db + 1, FieldElement::zero(t));
  FieldElement inv = b.lead().inverse();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k].is_zero()) continue;
    FieldElement f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
  }
  r.resize(db);
  return {UPoly(t, q), UPoly(t, r)};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly* s, UPoly* t) {
  TowerPtr tw = common_tower(a.tower(), b.tower());
  UPoly r0 = a.embed(tw), r1 = b.embed(tw);
  UPoly s0(tw, {FieldElement::one(tw)}), s1(tw), t0(tw), t1(tw, {FieldElement::one(tw)});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (s) *s = s0;
  if (t) *t = t0;
  return r0;
}

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() <= 0) return out;
  UPoly fm = f.monic();
  UPoly d0 = fm.derivative();
  UPoly a = gcd(fm, d0);
  UPoly b = divmod(fm, a).first;
  UPoly c = divmod(d0, a).first;
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

FieldElement det(std::vector<std::vector<FieldElement>> m) {
  const std::size_t n = m.size();
  FieldElement d = FieldElement::one(m[0][0].tower());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return FieldElement::zero(d.tower());
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    FieldElement inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      FieldElement f = m[r][col] * inv;
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return d;
}

// Norm of x from its tower down to the parent.
FieldElement element_norm(const FieldElement& x) {
  const TowerPtr& T = x.tower();
  const TowerPtr& P = T->parent();
  const int d = T->degree();
  const std::size_t pd = P->dim();
  std::vector<std::vector<FieldElement>> m(d, std::vector<FieldElement>(d));
  FieldElement col = x;
  FieldElement alpha = FieldElement::generator(T);
  for (int j = 0; j < d; ++j) {
    const auto& c = col.coords();
    for (int r = 0; r < d; ++r)
      m[r][j] = FieldElement(P, std::vector<Rational>(c.begin() + r * pd, c.begin() + (r + 1) * pd));
    col *= alpha;
  }
  return det(m);
}

UPoly interpolate(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys,
                  const TowerPtr& t) {
  const std::size_t n = xs.size();
  std::vector<FieldElement> dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly r(t, {dd[n - 1]});
  for (std::size_t k = n - 1; k-- > 0;) {
    r = r * UPoly(t, {-xs[k], FieldElement::one(t)}) + UPoly(t, {dd[k]});
  }
  return r;
}

std::vector<UPoly> factor_squarefree(const UPoly& g);

std::vector<UPoly> factor_over_q(const UPoly& g) {
  Integer den = 1;
  for (const auto& c : g.coeffs()) {
    Rational q = c.rational();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<Integer> zi;
  for (const auto& c : g.coeffs()) {
    Rational q = c.rational() * den;
    zi.push_back(q.get_num());
  }
  Integer cont = 0;
  for (const auto& z : zi) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), z.get_mpz_t());
  for (auto& z : zi) z /= cont;
  std::vector<UPoly> out;
  for (const auto& [fz, m] : factor_integer(zi)) {
    (void)m;
    std::vector<FieldElement> v;
    for (const auto& z : fz) v.emplace_back(Rational(z));
    out.push_back(UPoly(g.tower(), v).monic());
  }
  return out;
}

std::vector<UPoly> factor_squarefree(const UPoly& g) {
  if (g.degree() <= 1) return {g.monic()};
  const TowerPtr& T = g.tower();
  if (T->is_base_q()) return factor_over_q(g);
  FieldElement alpha = FieldElement::generator(T);
  for (int k = 0; k < 64; ++k) {
    long s = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    FieldElement sh = FieldElement(s) * alpha;
    UPoly gs = g.shift(-sh);
    UPoly n = relative_norm(gs);
    if (gcd(n, n.derivative()).degree() > 0) continue;
    std::vector<UPoly> out;
    for (const UPoly& h : factor_squarefree(n)) {
      UPoly f = gcd(gs, h.embed(T));
      if (f.degree() > 0) out.push_back(f.shift(sh).monic());
    }
    return out;
  }
  fail("FactorizationFailed", "no squarefree norm found for " + g.str());
}

}  // namespace

UPoly relative_norm(const UPoly& f) {
  const TowerPtr& T = f.tower();
  if (T->is_base_q()) return f;
  const TowerPtr& P = T->parent();
  const int n = f.degree() * T->degree();
  std::vector<FieldElement> xs, ys;
  for (int k = 0; k <= n; ++k) {
    FieldElement x(static_cast<long>(k));
    xs.push_back(x.embed(P));
    ys.push_back(element_norm(f.eval(x.embed(T))).embed(P));
  }
  return interpolate(xs, ys, P);
}

std::vector<std::pair<UPoly, int>> factor(const UPoly& f) {
  if (f.is_zero()) fail("ZeroInput", "factor of 0");
  std::vector<std::pair<UPoly, int>> out;
  for (const auto& [g, m] : squarefree(f))
    for (const UPoly& h : factor_squarefree(g)) out.emplace_back(h, m);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    for (int k = a.first.degree(); k >= 0; --k) {
      int c = a.first.coeff(k).compare(b.first.coeff(k));
      if (c != 0) return c < 0;
    }
    return a.second < b.second;
  });
  return out;
}

bool is_irreducible(const UPoly& f) {
  if (f.degree() <= 0) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

std::vector<std::complex<double>> numeric_roots(const std::vector<std::complex<double>>& coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  while (n > 0 && std::abs(coeffs[n]) == 0.0) --n;
  if (n <= 0) return {};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

}  // namespace folkit
