#include <algorithm>
#include <random>

#include "doctest.h"
#include "folkit/analysis.hpp"
#include "folkit/parser.hpp"

using namespace folkit;

namespace {

VectorFieldGerm V(const std::string& s) { return parse_vector_field(s); }
MultiPoly P(const std::string& s) { return parse_poly(s, 2); }

// Y(y) = A^{-1} X(A y).
VectorFieldGerm linear_change(const VectorFieldGerm& X, Rational a, Rational b, Rational c, Rational d) {
  MultiPoly x = P("x"), y = P("y");
  std::vector<MultiPoly> sub{FieldElement(a) * x + FieldElement(b) * y, FieldElement(c) * x + FieldElement(d) * y};
  MultiPoly F = X[0].substitute(sub), G = X[1].substitute(sub);
  Rational det = a * d - b * c;
  return VectorFieldGerm({FieldElement(Rational(d / det)) * F - FieldElement(Rational(b / det)) * G,
                          FieldElement(Rational(-c / det)) * F + FieldElement(Rational(a / det)) * G});
}

// Puiseux oracle: ord_t f(gamma(t)).
int order_along(const MultiPoly& f, const MultiPoly& gx, const MultiPoly& gy) {
  MultiPoly r = f.substitute({gx, gy});
  return r.is_zero() ? -1 : r.order();
}

}  // namespace

TEST_CASE("classification examples") {
  CHECK(classify_singularity(V("x^2*ddx + (y - x^2)*ddy")).cls == SingClass::SaddleNode);
  auto r = classify_singularity(V("2*x*ddx - 3*y*ddy"));
  CHECK(r.tag() == "SiegelRational(2,3)");
  CHECK(r.domain == Domain::Siegel);
  CHECK(classify_singularity(V("y*ddx")).cls == SingClass::Nilpotent);
  CHECK(classify_singularity(V("x*ddx + i*y*ddy")).cls == SingClass::Hyperbolic);
  CHECK(classify_singularity(V("x*ddx + 2*y*ddy")).tag() == "SimpleResonantRatioN(2)");
  CHECK(classify_singularity(V("x*ddx + y*ddy")).tag() == "SimpleResonantRatioN(1)");
  CHECK(classify_singularity(V("2*x*ddx + 3*y*ddy")).cls == SingClass::SimplePoincareNonresonant);
  CHECK(classify_singularity(V("x*ddx - 2*y*ddy + x^3*ddy")).tag() == "SiegelRational(1,2)");
  CHECK(classify_singularity(V("x^2*ddx + y^2*ddy")).cls == SingClass::Degenerate);
  CHECK(classify_singularity(V("1*ddx")).cls == SingClass::Regular);
  // x' = y, y' = 2x: eigenvalues +-sqrt 2, ratio -1 irrational? no: ratio -1
  CHECK(classify_singularity(V("y*ddx + 2*x*ddy")).tag() == "SiegelRational(1,1)");
  // x' = x + y, y' = -x + y... ratio non-real
  CHECK(classify_singularity(V("(x + y)*ddx + (y - x)*ddy")).cls == SingClass::Hyperbolic);
  // eigenvalues 1, -sqrt2 type: trace^2/det irrational-negative
  CHECK(classify_singularity(V("(x + y)*ddx + (x - 2*y)*ddy")).cls == SingClass::SiegelIrrational);
}

TEST_CASE("classification invariant under unit scaling and linear changes") {
  const char* fields[] = {"2*x*ddx - 3*y*ddy", "x*ddx + 2*y*ddy + x^2*ddy", "x*ddx + i*y*ddy",
                          "x^2*ddx + (y - x^2)*ddy", "y*ddx", "(x + y)*ddx + (x - 2*y)*ddy",
                          "2*x*ddx + 3*y*ddy + x*y*ddx"};
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-4, 4);
  for (const char* s : fields) {
    auto X = V(s);
    auto base = classify_singularity(X);
    auto scaled = classify_singularity(X * FieldElement::gaussian(Rational(2, 3), -1));
    CHECK(scaled.tag() == base.tag());
    for (int k = 0; k < 10; ++k) {
      Rational a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      if (a * e - b * c == 0) continue;
      auto Y = linear_change(X, a, b, c, e);
      CHECK(classify_singularity(Y).tag() == base.tag());
    }
  }
}

TEST_CASE("resonances") {
  auto R = detect_resonances({FieldElement(1), FieldElement(2)}, 3);
  REQUIRE(R.size() == 1);
  CHECK(R[0].first == 1);
  CHECK(R[0].second == Exponent{2, 0});
  CHECK(detect_resonances({FieldElement(2), FieldElement(3)}, 6).empty());
  auto S = detect_resonances({FieldElement(1), FieldElement(-1)}, 4);
  // (1,(q+1,q)) and (2,(q,q+1)) with |Q| <= 4: q = 1 only (|Q| = 3)
  REQUIRE(S.size() == 2);
  CHECK(S[0] == std::make_pair(0, Exponent{2, 1}));
  CHECK(S[1] == std::make_pair(1, Exponent{1, 2}));
  for (int N = 2; N < 7; ++N) {
    auto a = detect_resonances({FieldElement(1), FieldElement(-2)}, N);
    auto b = detect_resonances({FieldElement(1), FieldElement(-2)}, N + 1);
    bool subset = std::all_of(a.begin(), a.end(), [&](const auto& r) { return std::find(b.begin(), b.end(), r) != b.end(); });
    CHECK(subset);
  }
}

TEST_CASE("domains") {
  CHECK(domain_classification({FieldElement(1), FieldElement(2), FieldElement(3)}) == Domain::Poincare);
  CHECK(domain_classification({FieldElement(1), FieldElement(-1)}) == Domain::Siegel);
  std::vector<FieldElement> e{FieldElement(1), FieldElement::gaussian(-1, 1), FieldElement::gaussian(-1, -1)};
  CHECK(domain_classification(e) == Domain::StrictSiegel);
  CHECK(separating_line_exists(e));
  CHECK(domain_classification({FieldElement(1), FieldElement(0)}) == Domain::Siegel);
  CHECK(domain_classification({std::complex<double>(1, 0), std::complex<double>(0, 1)}) == Domain::Poincare);
  // brute-force oracle: 0 in hull iff some convex combination of a triangle hits 0
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int k = 0; k < 200; ++k) {
    std::vector<std::complex<double>> z;
    for (int j = 0; j < 3; ++j) z.emplace_back(d(rng), d(rng));
    bool hit = false;
    for (int a = 0; a <= 60 && !hit; ++a)
      for (int b = 0; a + b <= 60 && !hit; ++b) {
        auto p = (double(a) * z[0] + double(b) * z[1] + double(60 - a - b) * z[2]) / 60.0;
        if (std::abs(p) < 1e-9) hit = true;
      }
    Domain dom = domain_classification(z);
    if (hit) CHECK(dom != Domain::Poincare);
  }
}

TEST_CASE("intersection numbers") {
  CHECK(intersection_number(P("x"), P("y")) == 1);
  CHECK(intersection_number(P("y - x^2"), P("y")) == 2);
  CHECK(intersection_number(P("y^2 - x^3"), P("y")) == 3);
  CHECK_FALSE(intersection_number(P("x"), P("x*y")).has_value());
  CHECK(intersection_number(P("1 + x"), P("y")) == 0);
  // Puiseux oracle over parametrized curves
  std::vector<std::pair<MultiPoly, std::pair<MultiPoly, MultiPoly>>> curves{
      {P("y"), {P("x"), P("0")}}, {P("y - x^2"), {P("x"), P("x^2")}}, {P("y^2 - x^3"), {P("x^2"), P("x^3")}}};
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int k = 0; k < 30; ++k) {
    MultiPoly f(2);
    for (const auto& e : std::vector<Exponent>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {0, 3}, {2, 1}})
      f.add_term(e, FieldElement(c(rng)));
    if (f.is_zero()) continue;
    for (const auto& [g, gam] : curves) {
      int o = order_along(f, gam.first.resize(2), gam.second.resize(2));
      auto I = intersection_number(f, g);
      if (o < 0)
        CHECK_FALSE(I.has_value());
      else
        CHECK(I == o);
    }
  }
}

TEST_CASE("Fulton axioms") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> c(-2, 2);
  auto rnd = [&]() {
    MultiPoly f(2);
    for (const auto& e : std::vector<Exponent>{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}})
      f.add_term(e, FieldElement(c(rng)));
    return f;
  };
  for (int k = 0; k < 30; ++k) {
    MultiPoly f = rnd(), g = rnd(), h = rnd();
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    auto fg = intersection_number(f, g), gf = intersection_number(g, f);
    CHECK(fg == gf);
    auto fgh = intersection_number(f, g * h), fh = intersection_number(f, h);
    if (fg && fh) CHECK(fgh == *fg + *fh);
    else CHECK_FALSE(fgh.has_value());
    CHECK(intersection_number(f, g + h * f) == fg);
  }
}
