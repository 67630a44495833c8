#include "folkit/field.hpp"

#include <algorithm>
#include <sstream>

#include "folkit/errors.hpp"
#include "folkit/upoly.hpp"

namespace folkit {

namespace {

bool zero_block(const Rational* a, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    if (sgn(a[k]) != 0) return false;
  return true;
}

void mul_rec(const Tower* T, const Rational* a, const Rational* b, Rational* out) {
  if (T->is_base_q()) {
    out[0] = a[0] * b[0];
    return;
  }
  if (T->is_gaussian_level()) {
    Rational r = a[0] * b[0] - a[1] * b[1];
    Rational s = a[0] * b[1] + a[1] * b[0];
    out[0] = r;
    out[1] = s;
    return;
  }
  const Tower* P = T->parent().get();
  const std::size_t pd = P->dim();
  const int d = T->degree();
  std::vector<Rational> tmp((2 * d - 1) * pd);
  std::vector<Rational> prod(pd);
  for (int i = 0; i < d; ++i) {
    if (zero_block(a + i * pd, pd)) continue;
    for (int j = 0; j < d; ++j) {
      if (zero_block(b + j * pd, pd)) continue;
      mul_rec(P, a + i * pd, b + j * pd, prod.data());
      for (std::size_t k = 0; k < pd; ++k) tmp[(i + j) * pd + k] += prod[k];
    }
  }
  const auto& m = T->minpoly();
  std::vector<Rational> lead(pd);
  for (int k = 2 * d - 2; k >= d; --k) {
    if (zero_block(tmp.data() + k * pd, pd)) continue;
    std::copy(tmp.begin() + k * pd, tmp.begin() + (k + 1) * pd, lead.begin());
    for (int j = 0; j < d; ++j) {
      const auto& mj = m[j].coords();
      if (zero_block(mj.data(), pd)) continue;
      mul_rec(P, lead.data(), mj.data(), prod.data());
      for (std::size_t q = 0; q < pd; ++q) tmp[(k - d + j) * pd + q] -= prod[q];
    }
  }
  std::copy(tmp.begin(), tmp.begin() + d * pd, out);
}

std::complex<double> numeric_rec(const Tower* T, const Rational* a) {
  if (T->is_base_q()) return {a[0].get_d(), 0.0};
  const Tower* P = T->parent().get();
  std::complex<double> v = 0, pw = 1;
  for (int j = 0; j < T->degree(); ++j) {
    v += numeric_rec(P, a + j * P->dim()) * pw;
    pw *= T->embedding();
  }
  return v;
}

std::string monomial_name(const std::vector<const Tower*>& chain, std::size_t index) {
  std::string out;
  for (std::size_t L = 1; L < chain.size(); ++L) {
    int d = chain[L]->degree();
    int e = static_cast<int>(index % d);
    index /= d;
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += chain[L]->name();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string gaussian_string(const Rational& re, const Rational& im) {
  if (sgn(im) == 0) return to_string(re);
  Rational a = abs(im);
  std::string ip = (a == 1) ? "i" : to_string(a) + "*i";
  if (sgn(re) == 0) return (sgn(im) < 0 ? "-" : "") + ip;
  return to_string(re) + (sgn(im) < 0 ? "-" : "+") + ip;
}

// ---------------------------------------------------------------- Tower

TowerPtr Tower::rationals() {
  static const TowerPtr q = std::make_shared<const Tower>();
  return q;
}

TowerPtr Tower::gaussian() {
  static const TowerPtr g = adjoin_root_unchecked(
      rationals(), {FieldElement(1), FieldElement(0), FieldElement(1)}, "i");
  return g;
}

int Tower::depth() const {
  auto ch = chain();
  if (ch.size() > 1 && ch[1]->is_gaussian_level()) return levels_ - 1;
  return levels_;
}

bool Tower::extends(const Tower* other) const {
  for (const Tower* t = this; t; t = t->parent_.get())
    if (t == other) return true;
  return false;
}

std::vector<const Tower*> Tower::chain() const {
  std::vector<const Tower*> out;
  for (const Tower* t = this; t; t = t->parent_.get()) out.push_back(t);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Tower::describe() const {
  std::ostringstream os;
  auto ch = chain();
  if (ch.size() == 1) return "Q";
  for (std::size_t L = 1; L < ch.size(); ++L) {
    if (L > 1) os << "; ";
    UPoly m(ch[L]->parent(), ch[L]->minpoly());
    os << ch[L]->name() << ": " << m.str("t") << " = 0";
  }
  return os.str();
}

TowerPtr adjoin_root_unchecked(const TowerPtr& tower, const std::vector<FieldElement>& monic,
                               const std::string& name) {
  auto t = std::make_shared<Tower>();
  t->parent_ = tower;
  t->degree_ = static_cast<int>(monic.size()) - 1;
  t->dim_ = tower->dim() * t->degree_;
  t->levels_ = tower->levels() + 1;
  for (const auto& c : monic) t->minpoly_.push_back(c.embed(tower));
  t->gaussian_level_ = tower->is_base_q() && t->degree_ == 2 && monic[0].is_one() &&
                       monic[1].is_zero() && monic[2].is_one();
  t->name_ = name.empty() ? "a" + std::to_string(t->levels_) : name;
  if (t->gaussian_level_) {
    t->embedding_ = {0.0, 1.0};
  } else {
    std::vector<std::complex<double>> num;
    for (const auto& c : t->minpoly_) num.push_back(c.numeric());
    auto roots = numeric_roots(num);
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
      if (std::abs(a.real() - b.real()) > 1e-9) return a.real() > b.real();
      return a.imag() > b.imag();
    });
    t->embedding_ = roots.empty() ? std::complex<double>(0.0) : roots.front();
  }
  return t;
}

TowerPtr adjoin_root(const TowerPtr& tower, const UPoly& minpoly, const TowerCaps& caps,
                     const std::string& name) {
  UPoly m = minpoly.embed(common_tower(tower, minpoly.tower()));
  if (m.tower() != tower) fail("TowerMismatch", "minimal polynomial lives in a larger tower");
  if (m.degree() < 2) fail("ReducibleMinimalPolynomial", "degree < 2");
  if (!m.lead().is_one()) fail("ReducibleMinimalPolynomial", "minimal polynomial must be monic");
  if (m.degree() > caps.max_degree)
    fail("ExtensionDegreeExceeded", "degree " + std::to_string(m.degree()));
  int base_depth = tower->depth();
  if (base_depth + 1 > caps.max_depth)
    fail("TowerDepthExceeded", "depth cap " + std::to_string(caps.max_depth));
  if (!is_irreducible(m)) fail("ReducibleMinimalPolynomial", m.str("t"));
  if (tower->is_base_q() && m.degree() == 2 && m.coeff(0).is_one() && m.coeff(1).is_zero())
    return Tower::gaussian();
  std::string nm = name;
  if (nm.empty()) nm = "a" + std::to_string(base_depth + 1);
  return adjoin_root_unchecked(tower, m.coeffs(), nm);
}

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a == b) return a;
  if (a->extends(b.get())) return a;
  if (b->extends(a.get())) return b;
  fail("TowerMismatch", a->describe() + " vs " + b->describe());
}

// --------------------------------------------------------- FieldElement

FieldElement::FieldElement() : tower_(Tower::rationals()), c_(1) {}
FieldElement::FieldElement(long v) : tower_(Tower::rationals()), c_{Rational(v)} {}
FieldElement::FieldElement(const Rational& q) : tower_(Tower::rationals()), c_{q} { c_[0].canonicalize(); }
FieldElement::FieldElement(TowerPtr tower, std::vector<Rational> coords)
    : tower_(std::move(tower)), c_(std::move(coords)) {
  if (c_.size() != tower_->dim()) fail("TowerMismatch", "coordinate vector size");
  for (auto& q : c_) q.canonicalize();
}

FieldElement FieldElement::zero(const TowerPtr& t) {
  return FieldElement(t, std::vector<Rational>(t->dim()));
}

FieldElement FieldElement::one(const TowerPtr& t) {
  std::vector<Rational> c(t->dim());
  c[0] = 1;
  return FieldElement(t, c);
}

FieldElement FieldElement::gaussian(const Rational& re, const Rational& im) {
  return FieldElement(Tower::gaussian(), {re, im});
}

FieldElement FieldElement::i() { return gaussian(0, 1); }

FieldElement FieldElement::generator(const TowerPtr& t) {
  if (t->is_base_q()) fail("TowerMismatch", "Q has no generator");
  std::vector<Rational> c(t->dim());
  c[t->parent()->dim()] = 1;
  return FieldElement(t, c);
}

bool FieldElement::is_zero() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool FieldElement::is_one() const {
  if (c_[0] != 1) return false;
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return false;
  return true;
}

Rational FieldElement::rational() const {
  if (!is_rational()) fail("NotRational", str());
  return c_[0];
}

bool FieldElement::is_gaussian() const {
  if (is_rational()) return true;
  auto ch = tower_->chain();
  if (ch.size() < 2 || !ch[1]->is_gaussian_level()) return false;
  for (std::size_t k = 2; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return false;
  return true;
}

Rational FieldElement::re() const {
  if (!is_gaussian()) fail("NotGaussian", str());
  return c_[0];
}

Rational FieldElement::im() const {
  if (!is_gaussian()) fail("NotGaussian", str());
  return c_.size() > 1 ? c_[1] : Rational(0);
}

FieldElement FieldElement::embed(const TowerPtr& target) const {
  if (target == tower_) return *this;
  if (!target->extends(tower_.get()))
    fail("TowerMismatch", "cannot embed into " + target->describe());
  std::vector<Rational> c(target->dim());
  std::copy(c_.begin(), c_.end(), c.begin());
  return FieldElement(target, std::move(c));
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (o.tower_ != tower_) {
    TowerPtr t = common_tower(tower_, o.tower_);
    if (t != tower_) *this = embed(t);
    if (o.tower_ != t) return *this += o.embed(t);
  }
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (o.tower_ != tower_) {
    TowerPtr t = common_tower(tower_, o.tower_);
    if (t != tower_) *this = embed(t);
    if (o.tower_ != t) return *this *= o.embed(t);
  }
  std::vector<Rational> out(c_.size());
  mul_rec(tower_.get(), c_.data(), o.c_.data(), out.data());
  c_ = std::move(out);
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail("DivisionByZero", "inverse of 0");
  if (tower_->is_base_q()) return FieldElement(1 / c_[0]);
  if (tower_->is_gaussian_level()) {
    Rational n = c_[0] * c_[0] + c_[1] * c_[1];
    return FieldElement(tower_, {c_[0] / n, -c_[1] / n});
  }
  const TowerPtr& P = tower_->parent();
  const std::size_t pd = P->dim();
  std::vector<FieldElement> blocks;
  for (int j = 0; j < tower_->degree(); ++j)
    blocks.emplace_back(P, std::vector<Rational>(c_.begin() + j * pd, c_.begin() + (j + 1) * pd));
  UPoly a(P, blocks), m(P, tower_->minpoly()), s, t;
  UPoly g = ext_gcd(a, m, &s, &t);
  if (g.degree() != 0) fail("DivisionByZero", "non-invertible element (reducible tower?)");
  std::vector<Rational> out(tower_->dim());
  for (int j = 0; j <= s.degree() && j < tower_->degree(); ++j) {
    FieldElement cj = (s.coeff(j) / g.coeff(0)).embed(P);
    const auto& cc = cj.coords();
    std::copy(cc.begin(), cc.end(), out.begin() + j * pd);
  }
  return FieldElement(tower_, out);
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.tower_ == b.tower_) return a.c_ == b.c_;
  TowerPtr t = common_tower(a.tower_, b.tower_);
  return a.embed(t).c_ == b.embed(t).c_;
}

std::complex<double> FieldElement::numeric() const { return numeric_rec(tower_.get(), c_.data()); }

std::string FieldElement::str() const {
  if (is_gaussian()) return gaussian_string(c_[0], c_.size() > 1 ? c_[1] : Rational(0));
  auto ch = tower_->chain();
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& q = c_[k];
    if (sgn(q) == 0) continue;
    std::string m = monomial_name(ch, k);
    Rational a = abs(q);
    std::string body = m.empty() ? to_string(a) : (a == 1 ? m : to_string(a) + "*" + m);
    if (out.empty())
      out = (sgn(q) < 0 ? "-" : "") + body;
    else
      out += (sgn(q) < 0 ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

int FieldElement::compare(const FieldElement& o) const {
  if (tower_->dim() != o.tower_->dim()) return tower_->dim() < o.tower_->dim() ? -1 : 1;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    int c = cmp(c_[k], o.c_[k]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

}  // namespace folkit
