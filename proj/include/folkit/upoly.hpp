#pragma once

#include <string>
#include <utility>
#include <vector>

#include "folkit/field.hpp"

namespace folkit {

// Univariate polynomial over a field tower, coefficients low to high.
class UPoly {
 public:
  UPoly();
  explicit UPoly(TowerPtr t);
  UPoly(TowerPtr t, std::vector<FieldElement> coeffs);
  static UPoly monomial(const FieldElement& c, int k);
  static UPoly x(const TowerPtr& t);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElement coeff(int k) const;
  FieldElement lead() const;

  UPoly embed(const TowerPtr& t) const;
  UPoly monic() const;
  UPoly derivative() const;
  FieldElement eval(const FieldElement& x) const;
  UPoly compose(const UPoly& inner) const;
  UPoly shift(const FieldElement& s) const;  // p(t + s)

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const FieldElement& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b);

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  TowerPtr tower_;
  std::vector<FieldElement> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic, zero if both zero
// g = s a + t b.
UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly* s, UPoly* t);
// Yun's square-free decomposition: f = lc * prod p_i^i.
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& f);

// Monic irreducible factors with multiplicities, deterministically ordered.
std::vector<std::pair<UPoly, int>> factor(const UPoly& f);
bool is_irreducible(const UPoly& f);

// Norm of f from the top level of its tower down to the parent level.
UPoly relative_norm(const UPoly& f);

// Factorization of a primitive integer polynomial over Z (Zassenhaus).
std::vector<std::pair<std::vector<Integer>, int>> factor_integer(const std::vector<Integer>& f);

// Numeric roots (for embeddings), coefficients low to high.
std::vector<std::complex<double>> numeric_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace folkit
