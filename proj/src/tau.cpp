#include "folkit/tau.hpp"

#include <numbers>

namespace folkit {

TauScalar::TauScalar(const FieldElement& c) : c_{c} { trim(); }

TauScalar TauScalar::tau() {
  TauScalar t;
  t.c_ = {FieldElement(0), FieldElement(1)};
  return t;
}

FieldElement TauScalar::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return FieldElement(0);
  return c_[k];
}

void TauScalar::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TauScalar TauScalar::operator-() const {
  TauScalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

TauScalar operator+(const TauScalar& a, const TauScalar& b) {
  TauScalar r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()), FieldElement(0));
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
  r.trim();
  return r;
}

TauScalar operator-(const TauScalar& a, const TauScalar& b) { return a + (-b); }

TauScalar operator*(const TauScalar& a, const TauScalar& b) {
  TauScalar r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElement(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

bool operator==(const TauScalar& a, const TauScalar& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t k = 0; k < a.c_.size(); ++k)
    if (a.c_[k] != b.c_[k]) return false;
  return true;
}

std::complex<double> TauScalar::numeric() const {
  const std::complex<double> t(0.0, 2 * std::numbers::pi);
  std::complex<double> r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k].numeric();
  return r;
}

std::string TauScalar::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    std::string cs = c_[k].str();
    if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
    std::string term;
    if (k == 0)
      term = cs;
    else {
      std::string tp = k == 1 ? "tau" : "tau^" + std::to_string(k);
      if (cs == "1")
        term = tp;
      else if (cs == "-1")
        term = "-" + tp;
      else
        term = cs + "*" + tp;
    }
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

}  // namespace folkit
