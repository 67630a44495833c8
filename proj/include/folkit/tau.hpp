#pragma once

#include <string>
#include <vector>

#include "folkit/field.hpp"

namespace folkit {

// Polynomial in the transcendental symbol tau = 2*pi*i.
class TauScalar {
 public:
  TauScalar() = default;
  TauScalar(const FieldElement& c);  // NOLINT
  static TauScalar tau();

  const std::vector<FieldElement>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElement coeff(int k) const;

  TauScalar operator-() const;
  friend TauScalar operator+(const TauScalar& a, const TauScalar& b);
  friend TauScalar operator-(const TauScalar& a, const TauScalar& b);
  friend TauScalar operator*(const TauScalar& a, const TauScalar& b);
  friend bool operator==(const TauScalar& a, const TauScalar& b);
  friend bool operator!=(const TauScalar& a, const TauScalar& b) { return !(a == b); }

  std::complex<double> numeric() const;
  std::string str() const;

 private:
  void trim();
  std::vector<FieldElement> c_;
};

}  // namespace folkit
