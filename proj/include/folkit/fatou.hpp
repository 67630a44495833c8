#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace folkit {

using cd = std::complex<double>;
using cld = std::complex<long double>;

// f(z) = c[0] z + c[1] z^2 + ..., optionally with a closed-form evaluator.
struct NumericGerm {
  std::vector<cd> coeffs;
  double radius = 1.0;
  std::function<cld(cld)> closed_form;

  cld eval(cld z) const;
  cd multiplier() const { return coeffs.empty() ? cd(0) : coeffs[0]; }
  bool tangent_to_identity(double tol = 1e-14) const;
  int p() const;   // f = z + a z^(p+1) + ...; ZeroLeadingCoefficient if f = z
  cd a() const;
};

NumericGerm germ_from_coeffs(std::vector<cd> coeffs, double radius = 1.0);
// z / (1 - z), with coefficients through degree `terms`.
NumericGerm germ_f0(int terms = 40);
NumericGerm rotation_germ(cd multiplier);

std::vector<cd> attracting_directions(cd a, int p);
std::vector<cd> repelling_directions(cd a, int p);

// Formal Fatou coordinate Psi(z) = sum_{k=-p}^{K} d_k z^k + beta log z with
// Psi(f(z)) - Psi(z) - 1 = O(z^(M+1)).
struct FormalFatou {
  int p = 1;
  cd a;
  int kmin = 0;
  std::vector<cd> d;  // d[k - kmin]
  cd beta;            // log coefficient; equals b of g(w) = w + 1 + b/w + ... when p = 1
  int M = 0;

  cld eval(cld z, cd direction) const;  // log branch centred on `direction`
};
FormalFatou formal_fatou(const NumericGerm& f, int M = -1);

enum class Estimator { Refined, LogCorrected };

struct FatouOptions {
  long n_max = 100000;
  double increment_tol = 1e-8;
  Estimator estimator = Estimator::Refined;
  int petal_steps = 50;
  bool throw_on_slow = true;
};

struct FatouEstimate {
  cd phi;
  long n_max = 0;
  cd b;
  double increment = 0;  // |phi_{n_max} - phi_{n_max/2}|
  int petal = 0;          // index into attracting_directions(a, p)
  cd direction;
  Estimator estimator = Estimator::Refined;
};

FatouEstimate fatou_coordinate(const NumericGerm& f, cd z, const FatouOptions& opt = {});
// Same iteration for a map already in the chart at infinity, g(w) = w + 1 + b/w + ...
// (estimator g^n(w) - n - b log n).
FatouEstimate fatou_coordinate_infinity(const std::function<cd(cd)>& g, cd w, cd b, long n_max);

// max |phi(f(z)) - phi(z) - 1| over the samples.
double abel_residual(const NumericGerm& f, const std::function<cd(cd)>& phi, const std::vector<cd>& samples);
// Residual of the estimator itself; parallel over samples.
double abel_residual(const NumericGerm& f, const std::vector<cd>& samples, const FatouOptions& opt = {});
double abel_residual_serial(const NumericGerm& f, const std::vector<cd>& samples, const FatouOptions& opt = {});

enum class OrbitClass { Periodic, Escaping, Attracted, Undecided };
std::string to_string(OrbitClass c);

struct OrbitSample {
  cd z;
  OrbitClass cls = OrbitClass::Undecided;
  long steps = 0;  // period, escape time, or iterations run
  int direction = -1;  // nearest attracting direction for attracted samples
};

struct CensusOptions {
  double radius = 0.5;
  long max_iter = 10000;
  int grid = 40;  // grid x grid lattice over the disc
  double return_tol = 1e-9;
  double attract_ratio = 0.5;  // attracted if the final |z| is below attract_ratio |z0|
};

struct Census {
  std::vector<OrbitSample> samples;
  long finite_orbit = 0;  // orbits returning to their start (finite orbit set)
  long periodic = 0;
  long escaping = 0;
  long attracted = 0;
  long undecided = 0;
  std::map<long, long> periods;
  std::map<int, long> directions;
};

std::vector<cd> census_grid(const CensusOptions& opt);
OrbitSample classify_orbit(const NumericGerm& h, cd z, const CensusOptions& opt);
Census orbit_census(const NumericGerm& h, const CensusOptions& opt = {});
Census orbit_census_serial(const NumericGerm& h, const CensusOptions& opt = {});

std::string fatou_to_json(const FatouEstimate& e, std::optional<double> residual = {}, int indent = 2);
std::string census_to_json(const Census& c, int indent = 2);
std::string census_to_csv(const Census& c);

}  // namespace folkit
