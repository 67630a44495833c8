#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folkit/multipoly.hpp"

namespace folkit {

// Homogeneous field H0 d/dz0 + H1 d/dz1 + H2 d/dz2 on C^3, all H_i of degree d.
struct HomogeneousField3 {
  std::vector<MultiPoly> H;  // three polynomials in (z0, z1, z2)
  int degree = 0;
  MultiPoly removed_factor;  // gcd divided out on construction (1 if none)
  bool codim2 = true;        // singular set of codimension >= 2 after normalization

  VectorFieldGerm field() const { return VectorFieldGerm(H); }
};

// Validates homogeneity and divides out gcd(H0, H1, H2). Does not touch the radial class.
HomogeneousField3 make_homogeneous_field(std::vector<MultiPoly> H);
HomogeneousField3 make_homogeneous_field(const VectorFieldGerm& Z);

// Canonical representative modulo radial multiples and scalars: H0 free of z0,
// leading coefficient of the first nonzero component equal to 1.
HomogeneousField3 normalize_radial(const HomogeneousField3& Z);

// gcd of homogeneous polynomials in three variables.
MultiPoly homogeneous_gcd(const MultiPoly& a, const MultiPoly& b);

// Chart 'a': z0 = 1, (x, y) = (z1, z2); 'b': z1 = 1, (z0, z2); 'c': z2 = 1, (z0, z1).
int chart_index(char chart);
MultiPoly dehomogenize(const MultiPoly& h, char chart);
MultiPoly homogenize(const MultiPoly& p, int d, char chart);

VectorFieldGerm homogeneous_to_affine(const HomogeneousField3& Z, char chart = 'a');
// Inverse up to the radial class; the result is normalized.
HomogeneousField3 affine_to_homogeneous(const VectorFieldGerm& X, char chart = 'a');
VectorFieldGerm affine_to_other_chart(const VectorFieldGerm& X, char from, char to);

bool top_part_radial(const VectorFieldGerm& X);

struct DegreeReport {
  int affine_degree = 0;
  bool top_part_radial = false;
  int degree = 0;
  char chart = 'a';
  std::vector<std::pair<char, int>> cross_checks;  // degree recomputed in the other charts
};
DegreeReport foliation_degree(const VectorFieldGerm& X, char chart = 'a');
std::string degree_report_to_json(const DegreeReport& r, int indent = 2);

bool line_at_infinity_invariant(const VectorFieldGerm& X);

struct TangencyCount {
  std::optional<int> count;  // empty when the line is invariant
  bool line_invariant = false;
};
// Tangencies with y = lambda x: degree of lambda P(x, lambda x) - Q(x, lambda x).
TangencyCount tangency_count(const VectorFieldGerm& X, const FieldElement& lambda);
// Coefficient of x^d in lambda P(x, lambda x) - Q(x, lambda x), d the foliation degree, as a
// polynomial in lambda; its roots are the non-generic slopes.
UPoly tangency_bad_polynomial(const VectorFieldGerm& X);

struct GenericTangency {
  FieldElement lambda;
  TangencyCount result;
  std::vector<FieldElement> rejected;  // sampled slopes that hit the bad set
  bool bad_set_everything = false;     // no line through the origin is generic
};
GenericTangency generic_tangency_count(const VectorFieldGerm& X, unsigned seed = 1);

struct DimensionReport {
  int d = 0;
  long formula = 0;    // (d+1)(d+3) - 1
  long counted = 0;    // coefficients of degree-d fields minus the radial image rank, minus 1
  long radial_rank = 0;
  bool agree = false;
};
DimensionReport fol_space_dimension(int d);

HomogeneousField3 jouanolou(int n);

// Unique d with every monomial of weighted degree d; empty if none.
std::optional<int> quasi_homogeneous_degree(const MultiPoly& p, const std::vector<int>& weights);
// Unique d with component i monomials of weighted degree d - 1 + k_i.
std::optional<int> quasi_homogeneous_degree(const VectorFieldGerm& X, const std::vector<int>& weights);

struct InvariantFiber {
  UPoly factor;  // monic irreducible in x
  int multiplicity = 1;
  std::optional<FieldElement> root;  // when the factor is linear
};
struct RiccatiData {
  UPoly P, a, b, c;  // X = P(x) d/dx + (a y^2 + b y + c) d/dy
  std::vector<InvariantFiber> fibers;
  std::string note;
};
std::optional<RiccatiData> riccati_recognize(const VectorFieldGerm& X);
// Generic template P d/dx + (a y^2 + b y + c) d/dy with the given coefficient polynomials.
VectorFieldGerm riccati_field(const UPoly& P, const UPoly& a, const UPoly& b, const UPoly& c);

}  // namespace folkit
