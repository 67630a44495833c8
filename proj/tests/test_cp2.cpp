#include <algorithm>
#include <random>

#include "doctest.h"
#include "folkit/cp2.hpp"
#include "folkit/errors.hpp"
#include "folkit/parser.hpp"
#include "support/random.hpp"

using namespace folkit;

namespace {

VectorFieldGerm V(const std::string& s) { return parse_vector_field(s); }
MultiPoly P3(const std::string& s) { return parse_poly(s, 3); }

HomogeneousField3 Z3(const std::string& h0, const std::string& h1, const std::string& h2) {
  return make_homogeneous_field(std::vector<MultiPoly>{P3(h0), P3(h1), P3(h2)});
}

// P1 Q2 - P2 Q1
MultiPoly wedge(const VectorFieldGerm& a, const VectorFieldGerm& b) { return a[0] * b[1] - a[1] * b[0]; }

long binom(long n, long k) {
  long r = 1;
  for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

VectorFieldGerm random_affine(std::mt19937& rng, int dmax) {
  for (;;) {
    VectorFieldGerm X({testing::random_poly(2, 0, dmax, rng, false), testing::random_poly(2, 0, dmax, rng, false)});
    if (X.is_zero() || gcd2(X[0], X[1]).degree() > 0) continue;
    return X;
  }
}

}  // namespace

TEST_CASE("homogeneous to affine") {
  SUBCASE("Jouanolou affine form matches the closed formula") {
    for (int n = 1; n <= 4; ++n) {
      std::string sn = std::to_string(n), sn1 = std::to_string(n + 1);
      VectorFieldGerm expect = V("(y^" + sn + " - x^" + sn1 + ")*ddx + (1 - y*x^" + sn + ")*ddy");
      CHECK(homogeneous_to_affine(jouanolou(n), 'c') == expect);
    }
  }
  SUBCASE("n = 1 components") {
    HomogeneousField3 J = jouanolou(1);
    CHECK(J.H[0] == P3("y"));
    CHECK(J.H[1] == P3("z"));
    CHECK(J.H[2] == P3("x"));
  }
  SUBCASE("radial input") {
    CHECK(kind_of([] { homogeneous_to_affine(Z3("x", "y", "z"), 'a'); }) == "RadialInput");
    // (x + y) * radial reduces by the gcd, still radial
    CHECK(kind_of([] { homogeneous_to_affine(Z3("x^2 + x*y", "x*y + y^2", "x*z + y*z")); }) == "RadialInput");
  }
  SUBCASE("constant chart field") {
    VectorFieldGerm X = homogeneous_to_affine(Z3("0", "x^2", "0"), 'a');
    CHECK(X == V("1*ddx"));
  }
  SUBCASE("common factor is removed") {
    HomogeneousField3 Z = Z3("x*y", "x*z", "x^2");
    CHECK(Z.degree == 1);
    CHECK(Z.removed_factor == P3("x"));
    CHECK(Z.H[0] == P3("y"));
  }
}

TEST_CASE("radial class") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    int d = 1 + trial % 3;
    std::vector<MultiPoly> H;
    for (int i = 0; i < 3; ++i) H.push_back(testing::random_poly(3, d, d, rng, false));
    if (H[0].is_zero() && H[1].is_zero() && H[2].is_zero()) continue;
    MultiPoly h = testing::random_poly(3, d - 1, d - 1, rng, false);
    std::vector<MultiPoly> G = H;
    for (int i = 0; i < 3; ++i) G[i] += h * MultiPoly::var(3, i);
    HomogeneousField3 Z = make_homogeneous_field(H), W = make_homogeneous_field(G);
    for (char c : {'a', 'b', 'c'}) {
      bool radial = false;
      VectorFieldGerm A, B;
      try {
        A = homogeneous_to_affine(Z, c);
        B = homogeneous_to_affine(W, c);
      } catch (const Error&) {
        radial = true;
      }
      if (!radial) CHECK(wedge(A, B).is_zero());
    }
    HomogeneousField3 nz = normalize_radial(Z), nw = normalize_radial(W);
    if (Z.degree == W.degree) CHECK(nz.H == nw.H);
    for (const auto& [e, c] : nz.H[0].terms()) CHECK(e[0] == 0);
  }
}

TEST_CASE("affine round trip") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    VectorFieldGerm X = random_affine(rng, 3);
    for (char c : {'a', 'b', 'c'}) {
      VectorFieldGerm Y = homogeneous_to_affine(affine_to_homogeneous(X, c), c);
      CHECK(wedge(X, Y).is_zero());
      // proportional by a constant
      FieldElement s = X[0].is_zero() ? Y[1].terms().rbegin()->second / X[1].terms().rbegin()->second
                                      : Y[0].terms().rbegin()->second / X[0].terms().rbegin()->second;
      CHECK(Y == X * s);
    }
  }
}

TEST_CASE("foliation degree") {
  CHECK(foliation_degree(V("x*ddx + y*ddy")).degree == 0);
  CHECK(foliation_degree(V("x*ddx + y*ddy")).top_part_radial);
  CHECK(foliation_degree(V("2*x*ddx + 3*y*ddy")).degree == 1);
  CHECK(foliation_degree(V("1*ddx")).degree == 0);
  for (int n = 1; n <= 4; ++n) {
    DegreeReport r = foliation_degree(homogeneous_to_affine(jouanolou(n), 'c'));
    CHECK(r.degree == n);
    CHECK(r.affine_degree == n + 1);
    CHECK(r.top_part_radial);
  }
  CHECK(kind_of([] { foliation_degree(V("x*y*ddx + x^2*ddy")); }) == "NonIsolatedZeros");

  SUBCASE("chart independence and homogeneous degree") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
      VectorFieldGerm X = random_affine(rng, 3);
      DegreeReport r = foliation_degree(X);
      REQUIRE(r.cross_checks.size() == 2);
      for (auto [c, d] : r.cross_checks) CHECK(d == r.degree);
      CHECK(affine_to_homogeneous(X).degree == r.degree);
    }
  }
  SUBCASE("json") {
    std::string j = degree_report_to_json(foliation_degree(homogeneous_to_affine(jouanolou(2), 'c')), -1);
    CHECK(j.find("\"degree\":2") != std::string::npos);
    CHECK(j.find("\"top_part_radial\":true") != std::string::npos);
  }
}

TEST_CASE("line at infinity") {
  CHECK(line_at_infinity_invariant(V("x*ddx - y*ddy")));
  CHECK_FALSE(line_at_infinity_invariant(V("x*ddx + y*ddy")));
  CHECK_FALSE(line_at_infinity_invariant(homogeneous_to_affine(jouanolou(3), 'c')));
  // Q_d(1, v) - v P_d(1, v) = -2v for the saddle
  VectorFieldGerm S = V("x*ddx - y*ddy");
  MultiPoly v = MultiPoly::var(1, 0);
  std::vector<MultiPoly> at{MultiPoly::constant(1, 1), v};
  CHECK(S[1].substitute(at) - v * S[0].substitute(at) == FieldElement(-2) * v);
}

TEST_CASE("tangency count") {
  CHECK(tangency_count(V("x*ddx - y*ddy"), 1).count == 1);
  CHECK(tangency_count(V("x*ddx + y*ddy"), Rational(3, 7)).line_invariant);
  VectorFieldGerm J2 = homogeneous_to_affine(jouanolou(2), 'c');
  CHECK(generic_tangency_count(J2, 17).result.count == 2);

  SUBCASE("equals the degree for generic slopes") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
      VectorFieldGerm X = random_affine(rng, 3);
      GenericTangency g = generic_tangency_count(X, trial + 1);
      if (g.bad_set_everything) continue;
      REQUIRE(g.result.count);
      CHECK(*g.result.count == foliation_degree(X).degree);
      UPoly bad = tangency_bad_polynomial(X);
      for (const auto& r : g.rejected) CHECK(bad.eval(r).is_zero());
    }
  }
  SUBCASE("bad slope is reported") {
    // x^2 d/dx + y^2 d/dy: top coefficient lambda - lambda^2 vanishes at 1
    VectorFieldGerm X = V("x^2*ddx + y^2*ddy");
    UPoly bad = tangency_bad_polynomial(X);
    CHECK(bad.eval(1).is_zero());
    CHECK(tangency_count(X, 1).line_invariant);
    CHECK(*tangency_count(X, 2).count == 2);
  }
}

TEST_CASE("space of foliations") {
  CHECK(fol_space_dimension(0).formula == 2);
  CHECK(fol_space_dimension(1).formula == 7);
  CHECK(fol_space_dimension(2).formula == 14);
  for (int d = 0; d <= 6; ++d) {
    DimensionReport r = fol_space_dimension(d);
    CHECK(r.agree);
    CHECK(r.counted == 3 * binom(d + 2, 2) - binom(d + 1, 2) - 1);
    CHECK(r.counted == r.formula);
  }
}

TEST_CASE("quasi-homogeneity") {
  CHECK(quasi_homogeneous_degree(P3("x*z + y^2"), {1, 2, 3}) == 4);
  CHECK(quasi_homogeneous_degree(P3("x^3 + x*y*z - 2*z^3"), {1, 1, 1}) == 3);
  CHECK_FALSE(quasi_homogeneous_degree(P3("x*z + y"), {1, 2, 3}).has_value());
  VectorFieldGerm X =
      parse_vector_field("(x*z + y^2)*ddx + (2*z*y + 3*x^5)*ddy + (x^3*z - y^3 + 2*z^2)*ddz", 3);
  CHECK(quasi_homogeneous_degree(X, {1, 2, 3}) == 4);
  CHECK_FALSE(quasi_homogeneous_degree(X, {1, 1, 1}).has_value());

  SUBCASE("scaling oracle") {
    // Lambda^* X = t^(d-1) X with Lambda(z) = (t z1, t^2 z2, t^3 z3): component i of X(Lambda z)
    // equals t^(d - 1 + k_i) X_i(z)
    FieldElement t(2);
    std::vector<int> k{1, 2, 3};
    std::vector<MultiPoly> subs;
    for (int i = 0; i < 3; ++i) {
      FieldElement s(1);
      for (int j = 0; j < k[i]; ++j) s *= t;
      subs.push_back(s * MultiPoly::var(3, i));
    }
    for (int i = 0; i < 3; ++i) {
      FieldElement s(1);
      for (int j = 0; j < 4 - 1 + k[i]; ++j) s *= t;
      CHECK(X[i].substitute(subs) == s * X[i]);
    }
  }
}

TEST_CASE("riccati recognition") {
  auto r = riccati_recognize(V("(x^2 - x)*ddx + (y^2 + x*y + 1)*ddy"));
  REQUIRE(r);
  REQUIRE(r->fibers.size() == 2);
  std::vector<Rational> roots;
  for (const auto& f : r->fibers) roots.push_back(f.root->rational());
  std::sort(roots.begin(), roots.end());
  CHECK(roots == std::vector<Rational>{0, 1});
  CHECK(r->a.degree() == 0);
  CHECK(r->b.degree() == 1);
  CHECK_FALSE(riccati_recognize(V("1*ddx + y^3*ddy")));
  auto flat = riccati_recognize(V("1*ddx + y^2*ddy"));
  REQUIRE(flat);
  CHECK(flat->fibers.empty());
  CHECK_FALSE(flat->note.empty());

  SUBCASE("template round trip") {
    VectorFieldGerm X = V("(x^3 + 2)*ddx + (x*y^2 - 3*y + x^2)*ddy");
    auto q = riccati_recognize(X);
    REQUIRE(q);
    CHECK(riccati_field(q->P, q->a, q->b, q->c) == X);
    REQUIRE(q->fibers.size() == 1);
    CHECK(q->fibers[0].factor.degree() == 3);
  }
}
