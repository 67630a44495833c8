#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "folkit/field.hpp"
#include "folkit/upoly.hpp"

namespace folkit {

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);
// All exponents of total degree d in n variables, graded-lex order.
std::vector<Exponent> exponents_of_degree(int n, int d);

// Graded-lex order: ascending total degree, then x1 > x2 > ... within a degree.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class MultiPoly {
 public:
  using Terms = std::map<Exponent, FieldElement, GradedLex>;

  MultiPoly() = default;
  explicit MultiPoly(int n, TowerPtr t = Tower::rationals());
  static MultiPoly constant(int n, const FieldElement& c);
  static MultiPoly var(int n, int i, TowerPtr t = Tower::rationals());
  static MultiPoly monomial(const FieldElement& c, Exponent e);

  int nvars() const { return n_; }
  const TowerPtr& tower() const { return tower_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  FieldElement coeff(const Exponent& e) const;
  FieldElement constant_term() const;
  int degree() const;  // -1 for zero
  int order() const;   // ZeroInput for zero
  bool is_homogeneous() const;

  void add_term(const Exponent& e, const FieldElement& c);
  MultiPoly homogeneous(int k) const;
  MultiPoly truncate(int N) const;  // drop degree > N
  MultiPoly embed(const TowerPtr& t) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const FieldElement& s, const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly mul_trunc(const MultiPoly& o, int N) const;
  MultiPoly pow(int k, int N = INT_MAX) const;
  MultiPoly derivative(int i) const;
  // Replace variable i by a constant.
  MultiPoly restrict(int i, const FieldElement& v) const;
  FieldElement eval(const std::vector<FieldElement>& pt) const;
  // p(subs[0], ..., subs[n-1]); subs share a variable count m.
  MultiPoly substitute(const std::vector<MultiPoly>& subs, int N = INT_MAX) const;
  // p(x + c) for a base point c.
  MultiPoly translate(const std::vector<FieldElement>& c) const;
  // Exact division by x_i^k (must divide).
  MultiPoly div_var_power(int i, int k) const;
  int var_order(int i) const;  // largest k with x_i^k | p
  // Change variable count (new variables appended, or trailing unused removed).
  MultiPoly resize(int n) const;

  // Univariate view in variable i (others must be absent).
  UPoly to_upoly(int i) const;
  static MultiPoly from_upoly(const UPoly& u, int n, int i);

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int n_ = 0;
  TowerPtr tower_ = Tower::rationals();
  Terms terms_;
};

std::vector<std::string> default_var_names(int n);

// Truncated power series: payload of degree <= N, all higher degrees unknown.
struct TruncatedSeries {
  MultiPoly p;
  int N = INT_MAX;

  TruncatedSeries() = default;
  TruncatedSeries(MultiPoly poly, int order = INT_MAX) : p(poly.truncate(order)), N(order) {}
  bool exact() const { return N == INT_MAX; }
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
};

// Composition; assignments need zero constant terms unless target is exact.
TruncatedSeries substitute(const TruncatedSeries& target, const std::vector<TruncatedSeries>& assignment);

// Bivariate gcd over the tower (monic in the leading graded-lex term), for n = 2.
MultiPoly gcd2(const MultiPoly& a, const MultiPoly& b);
// Exact quotient a / b; fails if not divisible.
MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b);
bool divides(const MultiPoly& b, const MultiPoly& a, MultiPoly* quot = nullptr);

class VectorFieldGerm {
 public:
  VectorFieldGerm() = default;
  explicit VectorFieldGerm(std::vector<MultiPoly> comps);
  int dim() const { return static_cast<int>(c_.size()); }
  const MultiPoly& operator[](int i) const { return c_[i]; }
  MultiPoly& operator[](int i) { return c_[i]; }
  const std::vector<MultiPoly>& components() const { return c_; }
  TowerPtr tower() const;
  bool is_zero() const;
  int order() const;
  int degree() const;
  VectorFieldGerm homogeneous(int k) const;
  VectorFieldGerm embed(const TowerPtr& t) const;
  VectorFieldGerm operator*(const FieldElement& s) const;
  friend bool operator==(const VectorFieldGerm& a, const VectorFieldGerm& b);
  // X(f) = sum c_i df/dx_i.
  MultiPoly apply(const MultiPoly& f, int N = INT_MAX) const;

 private:
  std::vector<MultiPoly> c_;
};

class OneFormGerm {
 public:
  OneFormGerm() = default;
  explicit OneFormGerm(std::vector<MultiPoly> comps);
  int dim() const { return static_cast<int>(c_.size()); }
  const MultiPoly& operator[](int i) const { return c_[i]; }
  MultiPoly& operator[](int i) { return c_[i]; }
  const std::vector<MultiPoly>& components() const { return c_; }
  TowerPtr tower() const;
  int order() const;
  friend bool operator==(const OneFormGerm& a, const OneFormGerm& b);

 private:
  std::vector<MultiPoly> c_;
};

int order_at_origin(const MultiPoly& p);
int order_at_origin(const VectorFieldGerm& X);
int order_at_origin(const OneFormGerm& w);

// A dx + B dy  <->  B d/dx - A d/dy.
VectorFieldGerm dualize(const OneFormGerm& w);
OneFormGerm dualize(const VectorFieldGerm& X);

// A f_y - B f_x == 0.
bool wedge_vanishes(const OneFormGerm& w, const MultiPoly& f);

// Hamiltonian field f_y d/dx - f_x d/dy.
VectorFieldGerm hamiltonian(const MultiPoly& f);

}  // namespace folkit
