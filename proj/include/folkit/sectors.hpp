#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folkit/field.hpp"

namespace folkit {

// Real number held exactly (rational) or as a double compared with a tolerance.
class Real {
 public:
  Real() = default;
  Real(const Rational& q) : exact_(true), q_(q) {}  // NOLINT
  Real(long v) : Real(Rational(v)) {}               // NOLINT
  static Real approx(double d) {
    Real r;
    r.exact_ = false;
    r.d_ = d;
    return r;
  }
  bool exact() const { return exact_; }
  const Rational& rational() const { return q_; }
  double value() const { return exact_ ? q_.get_d() : d_; }
  int sign(double eps) const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  Real operator-() const { return Real(0) - *this; }

 private:
  bool exact_ = true;
  Rational q_ = 0;
  double d_ = 0.0;
};

struct Cx {
  Real re, im;
  Cx() = default;
  Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  static Cx from(const FieldElement& z);  // requires a Gaussian element
  static Cx approx(std::complex<double> z) { return {Real::approx(z.real()), Real::approx(z.imag())}; }
  bool exact() const { return re.exact() && im.exact(); }
  std::complex<double> value() const { return {re.value(), im.value()}; }
  Cx rot90() const { return {-im, re}; }  // multiply by i
  Cx operator-() const { return {-re, -im}; }
  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  bool is_zero(double eps) const { return re.sign(eps) == 0 && im.sign(eps) == 0; }
  std::string str() const;
};

// Re(a conj(b)): positive iff cos(arg a - arg b) > 0.
Real dot(const Cx& a, const Cx& b);
// Im(conj(a) b): positive iff b is counterclockwise from a within half a turn.
Real cross(const Cx& a, const Cx& b);

// Directions are nonzero vectors; angle comparisons are exact on Gaussian data.
struct AngleOrder {
  double eps = 1e-12;
  bool operator()(const Cx& a, const Cx& b) const;  // by argument in [0, 2 pi)
  bool same(const Cx& a, const Cx& b) const;
};
double turns(const Cx& u);  // argument / 2 pi in [0, 1)

struct EigenData {
  std::vector<Cx> gamma;     // gamma_2, ..., gamma_n; gamma_2 = 1 after normalization
  std::vector<double> alpha;  // real exponents (not used by the angular tests)
  Cx scale;                   // original gamma_2; the data were divided by it
  double eps = 1e-12;

  int m() const { return static_cast<int>(gamma.size()); }
};
// Normalizes gamma_2 = 1 and checks 0 outside the convex hull (NotPoincareDomain).
EigenData make_eigen_data(const std::vector<FieldElement>& gamma, std::vector<double> alpha = {});
EigenData make_eigen_data(const std::vector<std::complex<double>>& gamma, std::vector<double> alpha = {},
                          double eps = 1e-12);

// Open arc swept counterclockwise from `from` to `to`.
struct Arc {
  Cx from, to;
};
Arc antipode(const Arc& a);

enum class SectorKind { Attractor, Saddle, Mixed };
std::string to_string(SectorKind k);

struct Sector {
  Arc arc;
  SectorKind kind = SectorKind::Mixed;
};
struct SectorPartition {
  std::vector<Sector> sectors;          // counterclockwise, starting after direction 0
  std::vector<Cx> singular_directions;  // phi_j +- pi/2, sorted, distinct
};
SectorPartition solution_sectors(const EigenData& e);

using Monomial = std::pair<int, std::vector<int>>;  // (j in 2..n, Q = (q_2, ..., q_n))

struct SheafDirection {
  int j = 2;
  std::vector<int> Q;
  Cx w;          // (Q, gamma) - gamma_j
  Cx plus, minus;  // phi_jQ + pi/2, phi_jQ - pi/2
};
std::vector<SheafDirection> sheaf_singular_directions(const EigenData& e, int maxdeg);
std::vector<Cx> distinct_directions(const std::vector<SheafDirection>& ds, double eps = 1e-12);

// Admissible pairs on the open arc S: cos(phi_jQ - theta) < 0 for every theta in S.
std::vector<Monomial> admissible_monomials(const EigenData& e, const Arc& S, int maxdeg);

struct PlusSector {
  Cx phi0;          // midpoint of the widest direction-free attractor gap
  Arc plus, minus;  // S+ and its antipode S-
};
PlusSector sector_plus(const EigenData& e, int maxdeg);

// c_j -> c_j + sum_Q a_jQ c^Q over the supplied coefficients.
std::vector<FieldElement> leaf_transition(const std::vector<FieldElement>& c,
                                          const std::map<Monomial, FieldElement>& coeffs,
                                          const std::vector<Monomial>& admissible);

// "(y + a200 + a201*z, z + a300)" for m = 2, generic names otherwise.
std::string transition_shape(int m, const std::vector<Monomial>& admissible);

std::string sectors_to_json(const EigenData& e, int maxdeg, int indent = 2);

}  // namespace folkit
