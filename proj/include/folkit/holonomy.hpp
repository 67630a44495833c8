#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "folkit/blowup.hpp"
#include "folkit/normal_forms.hpp"
#include "folkit/tau.hpp"

namespace folkit {

// exp(2 pi i * ratio).
struct Multiplier {
  FieldElement ratio;
  std::optional<Rational> turns;  // ratio mod 1 in [0, 1) when rational
  bool exact = true;              // false: ratio is a float approximation

  static Multiplier from_ratio(const FieldElement& r);
  std::complex<double> value() const;
  double modulus() const;
  std::optional<int> order() const;  // denominator of turns
  bool is_one() const { return turns && *turns == 0; }
  std::string str() const;
};
Multiplier operator*(const Multiplier& a, const Multiplier& b);

// Germ z -> sum_{k>=1} c_k z^k, truncated at z^N; coefficients in K[tau].
struct HolonomyGerm {
  Multiplier multiplier;
  std::vector<TauScalar> series;  // series[k] is the z^k coefficient, series[0] unused
  int N = 0;

  TauScalar coeff(int k) const;
  static HolonomyGerm from_coeffs(std::vector<TauScalar> coeffs, int N);  // coeffs[k] for z^k
};

HolonomyGerm compose(const HolonomyGerm& f, const HolonomyGerm& g);  // f o g
HolonomyGerm inverse(const HolonomyGerm& h);
HolonomyGerm identity_germ(int N, const TowerPtr& t = Tower::rationals());

HolonomyGerm linear_holonomy(const FieldElement& l1, const FieldElement& l2);
// Time-tau flow of z^(p+1) / (1 + lambda z^p) d/dz.
HolonomyGerm saddle_node_holonomy(int p, const FieldElement& lambda, int N);
HolonomyGerm saddle_node_holonomy(const NormalFormResult& dulac, int N);

struct GermOrder {
  std::optional<int> order;
  int obstruction_degree = 0;
  TauScalar obstruction;
  bool undecided = false;  // multiplier not a root of unity of order <= cap
};
GermOrder germ_order(const HolonomyGerm& h, int N, int cap = 12);

enum class LeafVerdict {
  SiegelRationalOK,
  SiegelRationalObstructed,
  SaddleNodeFail,
  HyperbolicFail,
  PositiveRealRatioFail,
  IrrationalSiegelUndecided,
  DicriticalFail,
  Regular
};
enum class Overall { PassesNecessaryConditions, Fails, Undecided };
std::string to_string(LeafVerdict v);
std::string to_string(Overall v);

struct LeafCheck {
  int node = 0;
  LeafVerdict verdict = LeafVerdict::Regular;
  std::string reason;
  std::optional<Multiplier> multiplier;
  std::optional<int> holonomy_order;
  int checked_through = 0;
  int obstruction_degree = 0;
  std::string obstruction;
};

struct CriterionReport {
  ResolutionTree tree;
  std::vector<LeafCheck> leaves;
  Overall overall = Overall::PassesNecessaryConditions;
  std::string reason;
};

CriterionReport mattei_moussu_criterion(const OneFormGerm& w, int N = 12);
std::string criterion_to_json(const CriterionReport& r, int indent = 2);

struct InvariantLine {
  MultiPoly form;   // linear (or irreducible homogeneous) factor
  int degree = 1;   // number of lines in the orbit
  Rational residue;
  int exponent = 0;
};
struct HomogeneousIntegral {
  MultiPoly P;
  std::vector<InvariantLine> lines;
  int total = 0;  // sum of exponents over all lines
};
HomogeneousIntegral first_integral_data(const VectorFieldGerm& X);
MultiPoly construct_first_integral_homogeneous(const VectorFieldGerm& X);
// One multiplier exp(-2 pi i n_j / sum n) per line.
std::vector<Multiplier> projective_holonomy_generators(const VectorFieldGerm& X);
bool verify_first_integral(const OneFormGerm& w, const MultiPoly& f);

}  // namespace folkit
