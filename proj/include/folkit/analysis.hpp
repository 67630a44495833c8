#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folkit/multipoly.hpp"

namespace folkit {

struct LinearData {
  FieldElement a, b, c, d;  // Jacobian [[a, b], [c, d]] at 0
  FieldElement trace, det;
  std::optional<FieldElement> s;  // trace^2 / det
};

enum class SingClass {
  Regular,
  SimplePoincareNonresonant,
  SimpleResonantRatioN,
  SiegelRational,
  SiegelIrrational,
  Hyperbolic,
  SaddleNode,
  Nilpotent,
  Degenerate
};

enum class Domain { Poincare, Siegel, StrictSiegel, None };

struct SingularityReport {
  int order = 0;
  LinearData lin;
  SingClass cls = SingClass::Regular;
  int n = 0;  // SimpleResonantRatioN(n); SiegelRational(m, n) with m <= n
  int m = 0;
  Domain domain = Domain::None;

  std::string tag() const;  // e.g. "SiegelRational(2,3)"
  // Final reduced form: order <= 1, and either saddle-node or no eigenvalue ratio in N.
  bool is_final() const;
};

std::string to_string(SingClass c);
std::string to_string(Domain d);

LinearData linear_data(const VectorFieldGerm& X);
SingularityReport classify_singularity(const VectorFieldGerm& X);

// Realness of a field element: exact on Q(i), numeric embedding elsewhere.
bool is_real(const FieldElement& v);

// Eigenvalues of the linear part; adjoins a root of the characteristic polynomial when needed.
std::pair<FieldElement, FieldElement> eigenvalues(const LinearData& lin, const TowerCaps& caps = {});

// (component index, exponent) pairs, 0-based index, 2 <= |Q| <= N.
using ResonanceList = std::vector<std::pair<int, Exponent>>;
ResonanceList detect_resonances(const std::vector<FieldElement>& eigs, int N);
FieldElement delta(const std::vector<FieldElement>& eigs, int i, const Exponent& q);

Domain domain_classification(const std::vector<FieldElement>& eigs);
Domain domain_classification(const std::vector<std::complex<double>>& eigs, double eps = 1e-12);
// A line through 0 strictly separating eigs[0] from the others.
bool separating_line_exists(const std::vector<FieldElement>& eigs);
bool separating_line_exists(const std::vector<std::complex<double>>& eigs, double eps = 1e-12);

// Local intersection multiplicity at the origin; nullopt for infinity.
std::optional<int> intersection_number(const MultiPoly& f, const MultiPoly& g);

}  // namespace folkit
