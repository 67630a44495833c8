#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "folkit/rational.hpp"

namespace folkit {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

struct TowerCaps {
  int max_depth = 3;   // adjoined levels above the base field
  int max_degree = 6;  // degree of a single adjoined level
};

// Element of a field tower Q ⊂ K1 ⊂ ... ⊂ KL, stored as rational coordinates
// in the mixed-radix power basis (lowest level varies fastest).
class FieldElement {
 public:
  FieldElement();
  FieldElement(long v);  // NOLINT: implicit by design
  FieldElement(const Rational& q);  // NOLINT
  FieldElement(TowerPtr tower, std::vector<Rational> coords);

  static FieldElement zero(const TowerPtr& t);
  static FieldElement one(const TowerPtr& t);
  static FieldElement gaussian(const Rational& re, const Rational& im);
  static FieldElement i();
  // The top generator of t.
  static FieldElement generator(const TowerPtr& t);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational() const;  // requires is_rational()
  // True iff the element lies in Q(i) (as the standard Gaussian level).
  bool is_gaussian() const;
  Rational re() const;  // Gaussian parts; require is_gaussian()
  Rational im() const;

  FieldElement embed(const TowerPtr& target) const;
  FieldElement inverse() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  std::complex<double> numeric() const;
  // Exact string: "a/b", "a/b+c/d*i", or a polynomial in the generators.
  std::string str() const;
  // Total order used only for deterministic sorting.
  int compare(const FieldElement& o) const;

 private:
  TowerPtr tower_;
  std::vector<Rational> c_;
};

class Tower {
 public:
  static TowerPtr rationals();
  static TowerPtr gaussian();

  const TowerPtr& parent() const { return parent_; }
  int degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  int levels() const { return levels_; }
  // Number of adjoined levels above the canonical base (Q or Q(i)).
  int depth() const;
  const std::string& name() const { return name_; }
  const std::vector<FieldElement>& minpoly() const { return minpoly_; }
  std::complex<double> embedding() const { return embedding_; }
  bool is_gaussian_level() const { return gaussian_level_; }
  bool is_base_q() const { return parent_ == nullptr; }
  // True iff `other` equals this tower or one of its ancestors.
  bool extends(const Tower* other) const;
  // Generator names and minimal polynomials, bottom up.
  std::string describe() const;
  std::vector<const Tower*> chain() const;  // bottom (Q) first

 private:
  friend TowerPtr adjoin_root_unchecked(const TowerPtr&, const std::vector<FieldElement>&,
                                        const std::string&);
  TowerPtr parent_;
  int degree_ = 1;
  std::size_t dim_ = 1;
  int levels_ = 0;
  std::string name_ = "Q";
  std::vector<FieldElement> minpoly_;
  std::complex<double> embedding_{1.0, 0.0};
  bool gaussian_level_ = false;
};

// Smallest tower containing both (one must extend the other).
TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b);

class UPoly;

// Adjoin a root of an irreducible monic polynomial. Checks irreducibility.
TowerPtr adjoin_root(const TowerPtr& tower, const UPoly& minpoly, const TowerCaps& caps = {},
                     const std::string& name = "");
TowerPtr adjoin_root_unchecked(const TowerPtr& tower, const std::vector<FieldElement>& monic,
                               const std::string& name);

std::string gaussian_string(const Rational& re, const Rational& im);

}  // namespace folkit
