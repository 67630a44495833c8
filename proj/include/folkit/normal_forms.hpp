#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "folkit/analysis.hpp"
#include "folkit/multipoly.hpp"

namespace folkit {

// Per slot (component i, exponent Q): solve for zeta (psi = 0), keep psi (zeta = 0),
// or solve exactly when delta_{i,Q} != 0.
enum class Rule { Solve, Keep, Auto };
using ConstraintPattern = std::function<Rule(int i, const Exponent& q)>;

ConstraintPattern full_linearization();
ConstraintPattern poincare_dulac();
ConstraintPattern siegel_axes();
ConstraintPattern invariant_plane();

using Matrix = std::vector<std::vector<FieldElement>>;

struct OrbitalStage {
  VectorFieldGerm model;  // y1 (1 + lambda y2^p) d1 + y2^(p+1) d2
  std::vector<MultiPoly> map;  // (v E(w), phi(w)) taking the model foliation to the prepared one
  FieldElement lambda;         // read off at the degree-p stage
};

struct NormalFormResult {
  int N = 0;
  std::vector<FieldElement> eigenvalues;
  Matrix P;                      // x = P y
  FieldElement scale = 1;        // the solver ran on scale * X
  VectorFieldGerm prepared;      // P^-1 (scale X)(P y), truncated
  std::vector<MultiPoly> zeta;   // in eigencoordinates
  std::vector<MultiPoly> H;      // x = P (y + zeta(y))
  VectorFieldGerm normal_form;   // linear part plus kept psi terms
  ResonanceList kept;            // slots with a nonzero kept coefficient
  std::optional<FieldElement> a;  // resonant coefficient
  std::optional<int> p;           // Dulac invariants
  std::optional<FieldElement> lambda;
  std::optional<OrbitalStage> orbital;
  bool resonance_free_all_degrees = false;  // Poincare: certified beyond N
};

// Diagonal linear part required; the input is X itself.
NormalFormResult solve_conjugacy(const VectorFieldGerm& X, const ConstraintPattern& pattern, int N);

NormalFormResult poincare_linearize(const VectorFieldGerm& X, int N = 12);
NormalFormResult resonant_normal_form(const VectorFieldGerm& X, int N = 12);
NormalFormResult siegel_straighten(const VectorFieldGerm& X, int N = 12);
NormalFormResult saddle_node_prepare(const VectorFieldGerm& X, int N = 12);
NormalFormResult invariant_plane_3d(const VectorFieldGerm& X, int N = 12);

// DH . X_nf - (scale X) o H through total degree N.
std::vector<MultiPoly> conjugacy_residual(const VectorFieldGerm& X, const NormalFormResult& r);
bool conjugacy_holds(const VectorFieldGerm& X, const NormalFormResult& r);
// (D map . model) ^ (prepared o map) through degree N.
bool orbital_identity_holds(const NormalFormResult& r);

// Diagonalize the linear part: x = P y with P^-1 J P diagonal. `order` ranks eigenvalues
// (lower first) when J is not already diagonal.
struct Diagonalization {
  Matrix P, Pinv;
  std::vector<FieldElement> eigenvalues;
};
Diagonalization diagonalize_linear_part(const VectorFieldGerm& X,
                                        const std::function<int(const FieldElement&)>& order = {},
                                        const TowerCaps& caps = {});
VectorFieldGerm linear_change(const VectorFieldGerm& X, const Matrix& P, const Matrix& Pinv);

// Exponents across the largest Poincare resonance degree: max|lambda| / dist(0, hull).
int poincare_resonance_bound(const std::vector<FieldElement>& eigs);

std::string normal_form_to_json(const NormalFormResult& r, int indent = 2);

}  // namespace folkit
