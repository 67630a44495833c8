#include "folkit/multipoly.hpp"

#include <algorithm>

#include "folkit/errors.hpp"

namespace folkit {

int total_degree(const Exponent& e) {
  int s = 0;
  for (int q : e) s += q;
  return s;
}

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

namespace {

void exponents_of_degree(int n, int d, Exponent& cur, int pos, std::vector<Exponent>& out) {
  if (pos == n - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur[pos] = k;
    exponents_of_degree(n, d - k, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<Exponent> exponents_of_degree(int n, int d) {
  std::vector<Exponent> out;
  Exponent cur(n, 0);
  exponents_of_degree(n, d, cur, 0, out);
  return out;
}

MultiPoly::MultiPoly(int n, TowerPtr t) : n_(n), tower_(std::move(t)) {}

MultiPoly MultiPoly::constant(int n, const FieldElement& c) {
  MultiPoly p(n, c.tower());
  p.add_term(Exponent(n, 0), c);
  return p;
}

MultiPoly MultiPoly::var(int n, int i, TowerPtr t) {
  MultiPoly p(n, t);
  Exponent e(n, 0);
  e[i] = 1;
  p.add_term(e, FieldElement::one(t));
  return p;
}

MultiPoly MultiPoly::monomial(const FieldElement& c, Exponent e) {
  MultiPoly p(static_cast<int>(e.size()), c.tower());
  p.add_term(e, c);
  return p;
}

FieldElement MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElement::zero(tower_) : it->second;
}

FieldElement MultiPoly::constant_term() const { return coeff(Exponent(n_, 0)); }

int MultiPoly::degree() const {
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

int MultiPoly::order() const {
  if (terms_.empty()) fail("ZeroInput", "order of the zero polynomial");
  return total_degree(terms_.begin()->first);
}

bool MultiPoly::is_homogeneous() const { return terms_.empty() || order() == degree(); }

void MultiPoly::add_term(const Exponent& e, const FieldElement& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(e.size()) != n_) fail("DimensionMismatch", "exponent length");
  if (c.tower() != tower_) {
    TowerPtr t = common_tower(tower_, c.tower());
    if (t != tower_) *this = embed(t);
  }
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c.embed(tower_));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly MultiPoly::homogeneous(int k) const {
  MultiPoly r(n_, tower_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == k) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::truncate(int N) const {
  if (N == INT_MAX) return *this;
  MultiPoly r(n_, tower_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= N) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::embed(const TowerPtr& t) const {
  if (t == tower_) return *this;
  MultiPoly r(n_, t);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.embed(t));
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (n_ == 0 && terms_.empty()) n_ = o.n_;
  if (o.n_ != n_ && !o.terms_.empty()) fail("DimensionMismatch", "variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly MultiPoly::mul_trunc(const MultiPoly& o, int N) const {
  TowerPtr t = common_tower(tower_, o.tower_);
  MultiPoly r(std::max(n_, o.n_), t);
  if (terms_.empty() || o.terms_.empty()) return r;
  if (n_ != o.n_) fail("DimensionMismatch", "variable counts differ");
  Exponent e(n_);
  for (const auto& [ea, ca] : terms_) {
    int da = total_degree(ea);
    if (da > N) break;
    for (const auto& [eb, cb] : o.terms_) {
      if (N != INT_MAX && da + total_degree(eb) > N) break;
      for (int k = 0; k < n_; ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return a.mul_trunc(b, INT_MAX); }

MultiPoly operator*(const FieldElement& s, const MultiPoly& a) {
  TowerPtr t = common_tower(s.tower(), a.tower());
  MultiPoly r(a.n_, t);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, (s * c).embed(t));
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

MultiPoly MultiPoly::pow(int k, int N) const {
  MultiPoly r = constant(n_, FieldElement::one(tower_));
  MultiPoly b = *this;
  while (k > 0) {
    if (k & 1) r = r.mul_trunc(b, N);
    k >>= 1;
    if (k) b = b.mul_trunc(b, N);
  }
  return r;
}

MultiPoly MultiPoly::derivative(int i) const {
  MultiPoly r(n_, tower_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    r.terms_.emplace(f, c * FieldElement(static_cast<long>(e[i])));
  }
  return r;
}

MultiPoly MultiPoly::restrict(int i, const FieldElement& v) const {
  MultiPoly r(n_, common_tower(tower_, v.tower()));
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    FieldElement w = c;
    for (int k = 0; k < e[i]; ++k) w *= v;
    f[i] = 0;
    r.add_term(f, w);
  }
  return r;
}

FieldElement MultiPoly::eval(const std::vector<FieldElement>& pt) const {
  FieldElement s = FieldElement::zero(tower_);
  for (const auto& [e, c] : terms_) {
    FieldElement m = c;
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < e[k]; ++j) m *= pt[k];
    s += m;
  }
  return s;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& subs, int N) const {
  if (static_cast<int>(subs.size()) != n_) fail("DimensionMismatch", "substitution arity");
  int m = subs.empty() ? 0 : subs[0].nvars();
  TowerPtr t = tower_;
  for (const auto& s : subs) {
    if (s.nvars() != m && !s.is_zero()) fail("DimensionMismatch", "substitution variable counts");
    t = common_tower(t, s.tower());
  }
  std::vector<std::vector<MultiPoly>> powers(n_);
  auto power = [&](int k, int q) -> const MultiPoly& {
    auto& pw = powers[k];
    if (pw.empty()) pw.push_back(constant(m, FieldElement::one(t)));
    while (static_cast<int>(pw.size()) <= q) pw.push_back(pw.back().mul_trunc(subs[k], N));
    return pw[q];
  };
  MultiPoly r(m, t);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(m, c.embed(t));
    for (int k = 0; k < n_; ++k)
      if (e[k] > 0) term = term.mul_trunc(power(k, e[k]), N);
    r += term;
  }
  return r;
}

MultiPoly MultiPoly::translate(const std::vector<FieldElement>& c) const {
  std::vector<MultiPoly> subs;
  for (int k = 0; k < n_; ++k) subs.push_back(var(n_, k, tower_) + constant(n_, c[k]));
  return substitute(subs);
}

MultiPoly MultiPoly::div_var_power(int i, int k) const {
  MultiPoly r(n_, tower_);
  for (const auto& [e, c] : terms_) {
    if (e[i] < k) fail("NotDivisible", "monomial division");
    Exponent f = e;
    f[i] -= k;
    r.terms_.emplace(f, c);
  }
  return r;
}

int MultiPoly::var_order(int i) const {
  int k = INT_MAX;
  for (const auto& [e, c] : terms_) k = std::min(k, e[i]);
  return k;
}

MultiPoly MultiPoly::resize(int n) const {
  MultiPoly r(n, tower_);
  for (const auto& [e, c] : terms_) {
    Exponent f(n, 0);
    for (int k = 0; k < n_; ++k) {
      if (k < n)
        f[k] = e[k];
      else if (e[k] != 0)
        fail("DimensionMismatch", "dropping a used variable");
    }
    r.terms_.emplace(f, c);
  }
  return r;
}

UPoly MultiPoly::to_upoly(int i) const {
  std::vector<FieldElement> c;
  for (const auto& [e, v] : terms_) {
    for (int k = 0; k < n_; ++k)
      if (k != i && e[k] != 0) fail("NotUnivariate", "polynomial involves other variables");
    if (static_cast<int>(c.size()) <= e[i]) c.resize(e[i] + 1, FieldElement::zero(tower_));
    c[e[i]] = v;
  }
  return UPoly(tower_, c);
}

MultiPoly MultiPoly::from_upoly(const UPoly& u, int n, int i) {
  MultiPoly r(n, u.tower());
  for (int k = 0; k <= u.degree(); ++k) {
    Exponent e(n, 0);
    e[i] = k;
    r.add_term(e, u.coeff(k));
  }
  return r;
}

std::vector<std::string> default_var_names(int n) {
  std::vector<std::string> v;
  if (n <= 3) {
    const char* xyz[] = {"x", "y", "z"};
    for (int k = 0; k < n; ++k) v.emplace_back(xyz[k]);
    return v;
  }
  for (int k = 1; k <= n; ++k) v.push_back("x" + std::to_string(k));
  return v;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  int N = std::min(a.N, b.N);
  return TruncatedSeries(a.p + b.p, N);
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  int N = std::min(a.N, b.N);
  return TruncatedSeries(a.p - b.p, N);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  // Unknown tails start at degree N+1 and are multiplied by terms of degree >= order.
  int N = INT_MAX;
  if (!a.exact()) N = std::min(N, a.N + (b.p.is_zero() ? 0 : b.p.order()));
  if (!b.exact()) N = std::min(N, b.N + (a.p.is_zero() ? 0 : a.p.order()));
  if (!a.exact() && !b.exact()) N = std::min(N, std::min(a.N, b.N));
  return TruncatedSeries(a.p.mul_trunc(b.p, N), N);
}

TruncatedSeries substitute(const TruncatedSeries& target, const std::vector<TruncatedSeries>& assignment) {
  int N = target.N;
  std::vector<MultiPoly> subs;
  for (const auto& s : assignment) {
    if (!s.p.constant_term().is_zero() && !target.exact())
      fail("NonzeroConstantTermInAssignment", "assignment with nonzero constant term");
    N = std::min(N, s.N);
    subs.push_back(s.p);
  }
  return TruncatedSeries(target.p.substitute(subs, N), N);
}

namespace {

// K[x][y] with x = variable 0, y = variable 1.
using BiPoly = std::vector<UPoly>;

BiPoly to_bi(const MultiPoly& p) {
  BiPoly r;
  for (const auto& [e, c] : p.terms()) {
    if (static_cast<int>(r.size()) <= e[1]) r.resize(e[1] + 1, UPoly(p.tower()));
    r[e[1]] = r[e[1]] + UPoly::monomial(c, e[0]);
  }
  return r;
}

MultiPoly from_bi(const BiPoly& b, const TowerPtr& t) {
  MultiPoly r(2, t);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (int i = 0; i <= b[j].degree(); ++i) r.add_term({i, static_cast<int>(j)}, b[j].coeff(i));
  return r;
}

void trim(BiPoly& b) {
  while (!b.empty() && b.back().is_zero()) b.pop_back();
}

UPoly content(const BiPoly& b, const TowerPtr& t) {
  UPoly g(t);
  for (const auto& c : b) g = gcd(g, c);
  return g;
}

BiPoly primitive(BiPoly b, const TowerPtr& t) {
  UPoly c = content(b, t);
  if (c.is_zero()) return b;
  for (auto& x : b) x = divmod(x, c).first;
  return b;
}

BiPoly prem(BiPoly a, const BiPoly& b) {
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    UPoly la = a.back(), lb = b.back();
    for (auto& x : a) x = lb * x;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] = a[j + shift] - la * b[j];
    trim(a);
  }
  return a;
}

}  // namespace

MultiPoly gcd2(const MultiPoly& a0, const MultiPoly& b0) {
  if (a0.nvars() != 2 || b0.nvars() != 2) fail("DimensionNotTwo", "gcd2 needs two variables");
  TowerPtr t = common_tower(a0.tower(), b0.tower());
  MultiPoly a = a0.embed(t), b = b0.embed(t);
  if (a.is_zero() && b.is_zero()) return MultiPoly(2, t);
  BiPoly A = to_bi(a), B = to_bi(b);
  UPoly ca = content(A, t), cb = content(B, t);
  UPoly c = gcd(ca, cb);
  if (A.empty()) c = cb.monic();
  if (B.empty()) c = ca.monic();
  A = primitive(A, t);
  B = primitive(B, t);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    BiPoly R = prem(A, B);
    A = std::move(B);
    B = primitive(R, t);
  }
  BiPoly G = A;
  if (G.size() <= 1) G = {UPoly::monomial(FieldElement::one(t), 0)};
  for (auto& x : G) x = c * x;
  MultiPoly g = from_bi(G, t);
  FieldElement lc = g.terms().rbegin()->second;
  return lc.inverse() * g;
}

bool divides(const MultiPoly& b, const MultiPoly& a0, MultiPoly* quot) {
  if (b.is_zero()) fail("DivisionByZero", "polynomial division by 0");
  TowerPtr t = common_tower(a0.tower(), b.tower());
  MultiPoly r = a0.embed(t), q(a0.nvars(), t);
  const auto& [lb, cb] = *b.terms().rbegin();
  FieldElement inv = cb.inverse();
  const int n = a0.nvars();
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    Exponent e(n);
    for (int k = 0; k < n; ++k) {
      e[k] = lr[k] - lb[k];
      if (e[k] < 0) return false;
    }
    MultiPoly m = MultiPoly::monomial(cr * inv, e);
    q += m;
    r -= m * b;
  }
  if (quot) *quot = q;
  return true;
}

MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly q;
  if (!divides(b, a, &q)) fail("NotDivisible", "exact polynomial division failed");
  return q;
}

VectorFieldGerm::VectorFieldGerm(std::vector<MultiPoly> comps) : c_(std::move(comps)) {
  TowerPtr t = tower();
  for (auto& c : c_) {
    if (c.nvars() != dim()) c = c.is_zero() ? MultiPoly(dim(), t) : c;
    if (c.nvars() != dim()) fail("DimensionMismatch", "component variable count");
    c = c.embed(t);
  }
}

TowerPtr VectorFieldGerm::tower() const {
  TowerPtr t = Tower::rationals();
  for (const auto& c : c_) t = common_tower(t, c.tower());
  return t;
}

bool VectorFieldGerm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

int VectorFieldGerm::order() const {
  int k = INT_MAX;
  for (const auto& c : c_)
    if (!c.is_zero()) k = std::min(k, c.order());
  if (k == INT_MAX) fail("ZeroInput", "order of the zero field");
  return k;
}

int VectorFieldGerm::degree() const {
  int k = -1;
  for (const auto& c : c_) k = std::max(k, c.degree());
  return k;
}

VectorFieldGerm VectorFieldGerm::homogeneous(int k) const {
  std::vector<MultiPoly> v;
  for (const auto& c : c_) v.push_back(c.homogeneous(k));
  return VectorFieldGerm(v);
}

VectorFieldGerm VectorFieldGerm::embed(const TowerPtr& t) const {
  std::vector<MultiPoly> v;
  for (const auto& c : c_) v.push_back(c.embed(t));
  return VectorFieldGerm(v);
}

VectorFieldGerm VectorFieldGerm::operator*(const FieldElement& s) const {
  std::vector<MultiPoly> v;
  for (const auto& c : c_) v.push_back(s * c);
  return VectorFieldGerm(v);
}

bool operator==(const VectorFieldGerm& a, const VectorFieldGerm& b) { return a.c_ == b.c_; }

MultiPoly VectorFieldGerm::apply(const MultiPoly& f, int N) const {
  MultiPoly r(dim(), common_tower(tower(), f.tower()));
  for (int i = 0; i < dim(); ++i) r += c_[i].mul_trunc(f.derivative(i), N);
  return r;
}

OneFormGerm::OneFormGerm(std::vector<MultiPoly> comps) : c_(std::move(comps)) {
  TowerPtr t = tower();
  for (auto& c : c_) {
    if (c.nvars() != dim()) c = c.is_zero() ? MultiPoly(dim(), t) : c;
    if (c.nvars() != dim()) fail("DimensionMismatch", "component variable count");
    c = c.embed(t);
  }
}

TowerPtr OneFormGerm::tower() const {
  TowerPtr t = Tower::rationals();
  for (const auto& c : c_) t = common_tower(t, c.tower());
  return t;
}

int OneFormGerm::order() const {
  int k = INT_MAX;
  for (const auto& c : c_)
    if (!c.is_zero()) k = std::min(k, c.order());
  if (k == INT_MAX) fail("ZeroInput", "order of the zero form");
  return k;
}

bool operator==(const OneFormGerm& a, const OneFormGerm& b) { return a.c_ == b.c_; }

int order_at_origin(const MultiPoly& p) { return p.order(); }
int order_at_origin(const VectorFieldGerm& X) { return X.order(); }
int order_at_origin(const OneFormGerm& w) { return w.order(); }

VectorFieldGerm dualize(const OneFormGerm& w) {
  if (w.dim() != 2) fail("DimensionNotTwo", "dualize needs n = 2");
  return VectorFieldGerm({w[1], -w[0]});
}

OneFormGerm dualize(const VectorFieldGerm& X) {
  if (X.dim() != 2) fail("DimensionNotTwo", "dualize needs n = 2");
  return OneFormGerm({-X[1], X[0]});
}

bool wedge_vanishes(const OneFormGerm& w, const MultiPoly& f) {
  if (w.dim() != 2) fail("DimensionNotTwo", "wedge needs n = 2");
  return (w[0] * f.derivative(1) - w[1] * f.derivative(0)).is_zero();
}

VectorFieldGerm hamiltonian(const MultiPoly& f) {
  return VectorFieldGerm({f.derivative(1), -f.derivative(0)});
}

}  // namespace folkit
