#include <random>

#include "doctest.h"
#include "folkit/errors.hpp"
#include "folkit/normal_forms.hpp"
#include "folkit/parser.hpp"
#include "support/random.hpp"

using namespace folkit;
using folkit::testing::perturbed_diagonal;

namespace {

VectorFieldGerm V(const std::string& s, int n = 2) { return parse_vector_field(s, n); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() + " " + e.detail();
  }
  return "";
}

bool is_linear(const VectorFieldGerm& X) {
  for (const auto& c : X.components())
    if (c.degree() > 1) return false;
  return true;
}

FieldElement G(long re, long im) { return FieldElement::gaussian(Rational(re), Rational(im)); }

}  // namespace

TEST_CASE("solver on trivial and one-step inputs") {
  auto r = solve_conjugacy(V("2*x*ddx + 3*y*ddy"), full_linearization(), 6);
  CHECK(r.zeta[0].is_zero());
  CHECK(r.zeta[1].is_zero());
  CHECK(is_linear(r.normal_form));

  auto X = V("2*x*ddx + (3*y + x^2)*ddy");
  auto s = solve_conjugacy(X, full_linearization(), 2);
  CHECK(delta(s.eigenvalues, 1, {2, 0}) == FieldElement(1));
  CHECK(s.zeta[1].coeff({2, 0}) == FieldElement(1));
  CHECK(s.zeta[1].terms().size() == 1);
  CHECK(is_linear(s.normal_form));
  CHECK(conjugacy_holds(X, s));

  CHECK(error_of([] { solve_conjugacy(V("x*ddx - y*ddy"), full_linearization(), 4); }) == "ZeroDivisorDelta (1,(2,1))");
  CHECK(error_of([] { solve_conjugacy(V("(x + y)*ddx + y*ddy"), full_linearization(), 4); }).rfind("LinearPartNotPrepared", 0) == 0);
}

TEST_CASE("degree-d output does not depend on higher-degree data") {
  auto X = V("2*x*ddx + (3*y + x^2 - x*y^2)*ddy");
  auto lo = solve_conjugacy(X, full_linearization(), 3);
  auto hi = solve_conjugacy(X, full_linearization(), 7);
  for (int i = 0; i < 2; ++i) CHECK(hi.zeta[i].truncate(3) == lo.zeta[i]);
  // Perturbing degree 5 leaves degrees <= 4 intact.
  auto Y = V("2*x*ddx + (3*y + x^2 - x*y^2 + 7*x^5)*ddy");
  auto hy = solve_conjugacy(Y, full_linearization(), 7);
  for (int i = 0; i < 2; ++i) CHECK(hy.zeta[i].truncate(4) == hi.zeta[i].truncate(4));
}

TEST_CASE("Poincare linearization") {
  std::mt19937 rng(21);
  for (int k = 0; k < 5; ++k) {
    auto X = perturbed_diagonal({FieldElement(2), FieldElement(3)}, 2, rng, false);
    auto r = poincare_linearize(X, 6);
    CHECK(is_linear(r.normal_form));
    CHECK(conjugacy_holds(X, r));
    CHECK(r.resonance_free_all_degrees);
  }
  CHECK(error_of([] { poincare_linearize(V("x*ddx + (2*y + x^2)*ddy")); }).rfind("ResonanceObstruction (2,(2,0))", 0) == 0);
  CHECK(error_of([] { poincare_linearize(V("x*ddx - 2*y*ddy")); }).rfind("NotPoincareDomain", 0) == 0);

  auto X3 = perturbed_diagonal({FieldElement(1), G(2, 1), FieldElement(5) + FieldElement::gaussian(0, Rational(1, 2))}, 3,
                               rng, true);
  auto r3 = poincare_linearize(X3, 5);
  CHECK(is_linear(r3.normal_form));
  CHECK(conjugacy_holds(X3, r3));
  // (1, 2+i, 5) has lambda3 = 5 lambda1.
  auto Xr = perturbed_diagonal({FieldElement(1), G(2, 1), FieldElement(5)}, 3, rng, true);
  CHECK(error_of([&] { poincare_linearize(Xr, 5); }).rfind("ResonanceObstruction", 0) == 0);
}

TEST_CASE("non-diagonal linear part is diagonalized") {
  // Eigenvalues (5 +- sqrt(5)) / 2.
  auto X = V("(2*x + y + y^2)*ddx + (x + 3*y + x*y)*ddy");
  auto r = poincare_linearize(X, 6);
  CHECK(is_linear(r.normal_form));
  CHECK(conjugacy_holds(X, r));
  auto Y = V("(5*x + y + x^2)*ddx + (x + 5*y)*ddy");
  auto s = poincare_linearize(Y, 6);
  CHECK(s.normal_form.tower()->depth() == 0);
  CHECK(conjugacy_holds(Y, s));
  CHECK(error_of([] { poincare_linearize(V("(x + y)*ddx + (y + x^2)*ddy")); }).rfind("LinearPartNotPrepared", 0) == 0);
}

TEST_CASE("resonant normal form") {
  CHECK(*resonant_normal_form(V("2*x*ddx + y*ddy")).a == FieldElement(0));
  CHECK(*resonant_normal_form(V("(2*x + y^2)*ddx + y*ddy")).a == FieldElement(1));
  auto X = V("(2*x + y^2 + x*y)*ddx + y*ddy");
  auto r = resonant_normal_form(X, 6);
  CHECK(*r.a == FieldElement(1));
  CHECK(conjugacy_holds(X, r));
  // Only the y^n slot of component 1 survives.
  CHECK(r.normal_form[0].terms().size() == 2);
  CHECK(r.normal_form[1].terms().size() == 1);
  // Swapped roles: x is the slow direction.
  auto Y = V("(x + y^3)*ddx + (3*y + x^3)*ddy");
  auto s = resonant_normal_form(Y, 6);
  CHECK(*s.a == FieldElement(1));
  CHECK(conjugacy_holds(Y, s));
  CHECK_THROWS_AS(resonant_normal_form(V("x*ddx - y*ddy")), Error);
}

TEST_CASE("Siegel straightening") {
  auto r0 = siegel_straighten(V("x*ddx - y*ddy"));
  CHECK(r0.zeta[0].is_zero());
  CHECK(r0.zeta[1].is_zero());
  auto X = V("(x - y^2)*ddx - y*ddy");
  auto r = siegel_straighten(X, 2);
  CHECK(delta(r.eigenvalues, 0, {0, 2}) == FieldElement(-3));
  CHECK(r.zeta[0].coeff({0, 2}) == FieldElement(Rational(1, 3)));
  CHECK(conjugacy_holds(X, r));
  std::mt19937 rng(5);
  for (int k = 0; k < 4; ++k) {
    auto Y = perturbed_diagonal({FieldElement(2), FieldElement(-3)}, 3, rng, k % 2 == 1);
    auto s = siegel_straighten(Y, 6);
    CHECK(conjugacy_holds(Y, s));
    CHECK(s.normal_form[0].var_order(0) >= 1);
    CHECK(s.normal_form[1].var_order(1) >= 1);
  }
}

TEST_CASE("Dulac invariants") {
  auto m = saddle_node_prepare(V("x*ddx + y^2*ddy"));
  CHECK(*m.p == 1);
  CHECK(m.lambda->is_zero());
  auto m5 = saddle_node_prepare(V("x*(1 + 5*y)*ddx + y^2*ddy"));
  CHECK(*m5.p == 1);
  CHECK(*m5.lambda == FieldElement(5));
  CHECK(m5.orbital->lambda == FieldElement(5));
  CHECK(orbital_identity_holds(m5));

  auto euler = V("x^2*ddx + (y - x^2)*ddy");
  auto e = saddle_node_prepare(euler, 8);
  CHECK(*e.p == 1);
  CHECK(*e.lambda == e.orbital->lambda);
  CHECK(conjugacy_holds(euler, e));
  CHECK(orbital_identity_holds(e));

  auto p2 = V("(x + x*y + y^2)*ddx + (y^3 + 2*x*y)*ddy");
  auto q = saddle_node_prepare(p2, 8);
  CHECK(*q.p == 2);
  CHECK(*q.lambda == q.orbital->lambda);
  CHECK(conjugacy_holds(p2, q));
  CHECK(orbital_identity_holds(q));
  // Unit rescaling and a linear change fixing the null direction.
  auto q3 = saddle_node_prepare(p2 * FieldElement(Rational(-7, 3)), 8);
  CHECK(*q3.p == 2);
  CHECK(*q3.lambda == *q.lambda);
  Matrix P{{FieldElement(1), FieldElement(0)}, {FieldElement(2), FieldElement(1)}};
  Matrix Pi{{FieldElement(1), FieldElement(0)}, {FieldElement(-2), FieldElement(1)}};
  auto q4 = saddle_node_prepare(linear_change(p2, P, Pi), 8);
  CHECK(*q4.lambda == *q.lambda);
  CHECK(error_of([] { saddle_node_prepare(V("x*ddx + y^5*ddy"), 4); }).rfind("TruncationTooSmall", 0) == 0);
}

TEST_CASE("invariant plane in dimension three") {
  auto I = invariant_plane_3d(V("x*ddx + 2*y*ddy", 3));
  CHECK(I.zeta[0].is_zero());
  auto X = V("(x + z^2)*ddx + 2*y*ddy + z^2*ddz", 3);
  auto r = invariant_plane_3d(X, 6);
  CHECK(r.normal_form[0].coeff({0, 0, 2}).is_zero());
  CHECK(conjugacy_holds(X, r));
  std::mt19937 rng(17);
  auto Y = perturbed_diagonal({FieldElement(1), G(1, 1), FieldElement(0)}, 3, rng, true);
  auto s = invariant_plane_3d(Y, 6);
  CHECK(conjugacy_holds(Y, s));
  CHECK(s.normal_form[2].var_order(2) >= 1);
  for (int i = 0; i < 2; ++i) {
    MultiPoly psi = s.normal_form[i] - s.eigenvalues[i] * MultiPoly::var(3, i, s.normal_form.tower());
    for (const auto& [e, c] : psi.terms()) CHECK(e[2] >= 1);
  }
}
