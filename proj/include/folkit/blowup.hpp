#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folkit/analysis.hpp"
#include "folkit/multipoly.hpp"

namespace folkit {

// A singular point of the blown-up form on the exceptional divisor.
struct DivisorPoint {
  UPoly minpoly;       // in the chart coordinate (t or s), monic irreducible
  int multiplicity;    // as a root of the restricted gcd
  FieldElement point;  // a root, possibly in an extended tower
  int orbit() const { return minpoly.degree(); }
};

struct BlowupChartResult {
  char chart = 'x';  // 'x': (x, t) with y = t x;  's': (s, y) with x = s y
  OneFormGerm form;  // strict transform, divisor power removed
  int divided_power = 0;
  bool dicritical = false;
  std::vector<DivisorPoint> singularities;  // chart 's' only reports s = 0
};

struct BlowupOptions {
  TowerCaps caps;
  bool auto_extend = true;
};

// Blow-up at the origin; returns the (x, t) and (s, y) charts.
std::pair<BlowupChartResult, BlowupChartResult> blow_up(const OneFormGerm& w, const BlowupOptions& opt = {});
std::pair<BlowupChartResult, BlowupChartResult> blow_up(const VectorFieldGerm& X, const BlowupOptions& opt = {});

OneFormGerm translate(const OneFormGerm& w, const std::vector<FieldElement>& c);
VectorFieldGerm translate(const VectorFieldGerm& X, const std::vector<FieldElement>& c);

struct TangentCone {
  UPoly poly;  // G_k(1,t) - t F_k(1,t); zero iff dicritical
  std::vector<std::pair<UPoly, int>> squarefree;
  bool infinity_root = false;
};
TangentCone tangent_cone(const VectorFieldGerm& X);

// (D pi . X~) ^ (X o pi) == 0 for the field dual to the chart form.
bool pullback_identity(const VectorFieldGerm& X, const BlowupChartResult& r);
// The two charts agree on t s = 1 up to a monomial factor.
bool chart_coherence(const BlowupChartResult& cx, const BlowupChartResult& cs);

struct DivisorComponent {
  int id = 0;
  int self_intersection = -1;
  bool invariant = true;
  int created_by = -1;  // node id
  int copies = 1;       // Galois conjugates represented by this entry
};

struct ResolutionNode {
  int id = 0;
  int parent = -1;
  int round = 0;
  char chart = '-';    // chart of the parent blow-up containing this point
  UPoly minpoly;       // of the center in the chart coordinate
  int orbit = 1;       // relative degree of the center over the parent field
  int copies = 1;      // total number of conjugate centers represented
  int multiplicity = 0;
  OneFormGerm form;    // local form centered at the point
  int order = 0;
  std::optional<int> I0;
  bool dicritical = false;
  bool blown_up = false;
  SingularityReport report;
  std::string final_tag;  // leaves: "reduced-nondegenerate", "reduced-saddle-node", "regular"
  std::vector<int> children;
  std::vector<std::pair<int, int>> divisors;  // (component id, axis index vanishing on it)
  long ledger_sum = 0;                        // sum of orbit-weighted child I values
  bool ledger_ok = true;
};

struct ResolveOptions {
  int max_blowups = 64;
  BlowupOptions blowup;
};

struct ResolutionTree {
  std::vector<ResolutionNode> nodes;
  std::vector<DivisorComponent> divisors;
  int blowups = 0;  // geometric count (conjugates counted)
  MultiPoly common_factor;
  std::vector<int> leaves() const;
};

ResolutionTree seidenberg_resolve(const OneFormGerm& w, const ResolveOptions& opt = {});
ResolutionTree seidenberg_resolve(const VectorFieldGerm& X, const ResolveOptions& opt = {});

// Exact ledger value predicted for a blown-up node: k^2 - k - 1 (invariant divisor) or k^2 + k - 1.
long ledger_constant(int k, bool dicritical);

struct LedgerViolation {
  int node;
  long I0;
  long predicted;
};
struct LedgerReport {
  std::vector<LedgerViolation> violations;
  int checked = 0;
  bool strict_decrease = true;  // sum of child I values < I0 at nodes with k > 1
};
LedgerReport verify_ledger(const ResolutionTree& tree);

std::string tree_to_json(const ResolutionTree& tree, int indent = 2);
std::string tree_to_dot(const ResolutionTree& tree);

}  // namespace folkit
