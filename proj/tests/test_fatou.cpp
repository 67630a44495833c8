#include <cmath>
#include <numbers>

#include "doctest.h"
#include "folkit/errors.hpp"
#include "folkit/fatou.hpp"

using namespace folkit;

namespace {

std::vector<cd> petal_samples(int k, double r = 0.1) {
  std::vector<cd> out;
  for (int i = 0; i < k; ++i) out.push_back(std::polar(r, std::numbers::pi + 0.8 * (i - (k - 1) / 2.0) / k));
  return out;
}

std::string kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST_CASE("formal coordinate") {
  SUBCASE("z/(1-z) has Psi = -1/z") {
    FormalFatou F = formal_fatou(germ_f0());
    CHECK(F.p == 1);
    CHECK(std::abs(F.beta) < 1e-15);
    CHECK(std::abs(F.d[0] - cd(-1)) < 1e-15);
    for (std::size_t i = 1; i < F.d.size(); ++i) CHECK(std::abs(F.d[i]) < 1e-14);
  }
  SUBCASE("log coefficient of z + z^2 + c z^3 is 1 - c") {
    for (double c : {0.0, 1.0, 0.5, -2.0}) {
      FormalFatou F = formal_fatou(germ_from_coeffs({1, 1, c}));
      CHECK(std::abs(F.beta - cd(1 - c)) < 1e-13);
    }
  }
  SUBCASE("log coefficient against the map at infinity") {
    // g(w) = -1/f(-1/w) for f = z + z^2 + z^3; w (g(w) - w - 1) -> b
    NumericGerm f = germ_from_coeffs({1, 1, 1});
    auto g = [&](cld w) { return cld(-1) / f.eval(cld(-1) / w); };
    cld w(1e6L, 0);
    cd numeric(static_cast<double>((w * (g(w) - w - cld(1))).real()), 0);
    CHECK(std::abs(numeric - formal_fatou(f).beta) < 1e-5);
  }
  SUBCASE("functional equation holds to high order") {
    NumericGerm f = germ_from_coeffs({1, cd(0.3, 0.7), cd(-1, 0.2), cd(0.5, 0)});
    FormalFatou F = formal_fatou(f, 10);
    cd v = attracting_directions(f.a(), 1)[0];
    for (double r : {1e-2, 5e-3}) {
      cld z = cld(r, 0) * cld(v.real(), v.imag());
      cld res = F.eval(f.eval(z), v) - F.eval(z, v) - cld(1);
      CHECK(std::abs(res) < 1e-15);
    }
  }
  SUBCASE("p = 2") {
    NumericGerm f = germ_from_coeffs({1, 0, 1});
    FormalFatou F = formal_fatou(f);
    CHECK(F.p == 2);
    CHECK(std::abs(F.d[0] - cd(-0.5)) < 1e-15);
    cd v = attracting_directions(f.a(), 2)[0];
    cld z = cld(0.02L, 0) * cld(v.real(), v.imag());
    CHECK(std::abs(F.eval(f.eval(z), v) - F.eval(z, v) - cld(1)) < 1e-14);
  }
}

TEST_CASE("petal directions") {
  auto at = attracting_directions(1, 2), rep = repelling_directions(1, 2);
  REQUIRE(at.size() == 2);
  CHECK(std::min(std::abs(at[0] - cd(0, 1)), std::abs(at[0] - cd(0, -1))) < 1e-12);
  CHECK(std::min(std::abs(at[1] - cd(0, 1)), std::abs(at[1] - cd(0, -1))) < 1e-12);
  CHECK(std::abs(at[0] - at[1]) > 1.9);
  CHECK(std::abs(rep[0] - cd(1)) < 1e-12);
  CHECK(std::abs(rep[1] - cd(-1)) < 1e-12);
  SUBCASE("interleaving and a z^p in direction v is negative real") {
    for (int p = 1; p <= 5; ++p) {
      cd a = std::polar(1.7, 0.4 * p);
      auto A = attracting_directions(a, p), R = repelling_directions(a, p);
      for (const cd& v : A) {
        cd t = a * std::pow(v, p);
        CHECK(t.real() < 0);
        CHECK(std::abs(t.imag()) < 1e-12);
        double nearest = 10;
        for (const cd& u : R) nearest = std::min(nearest, std::abs(std::arg(u / v)));
        CHECK(nearest == doctest::Approx(std::numbers::pi / p));
      }
    }
  }
}

TEST_CASE("numeric Fatou coordinate") {
  SUBCASE("z/(1-z): phi = -1/z") {
    FatouOptions opt;
    opt.n_max = 20000;
    NumericGerm f = germ_f0();
    for (cd z : petal_samples(20)) {
      FatouEstimate e = fatou_coordinate(f, z, opt);
      CHECK(std::abs(e.phi - (-1.0 / z)) < 1e-9);
      CHECK(std::abs(e.b) < 1e-15);
    }
    CHECK(abel_residual(f, petal_samples(20), opt) < 1e-9);
  }
  SUBCASE("z + z^2 + z^3: residual and Cauchy drift") {
    NumericGerm f = germ_from_coeffs({1, 1, 1});
    FatouOptions opt;
    opt.n_max = 100000;
    CHECK(abel_residual(f, petal_samples(8), opt) < 1e-6);
    FatouEstimate e1 = fatou_coordinate(f, {-0.1, 0.02}, opt);
    opt.n_max = 200000;
    FatouEstimate e2 = fatou_coordinate(f, {-0.1, 0.02}, opt);
    CHECK(std::abs(e1.phi - e2.phi) < 1e-8);
    CHECK(e1.increment < 1e-8);
  }
  SUBCASE("log-corrected estimator converges slowly") {
    NumericGerm f = germ_from_coeffs({1, 1, 1});
    FatouOptions opt;
    opt.estimator = Estimator::LogCorrected;
    opt.n_max = 100000;
    CHECK(kind_of([&] { fatou_coordinate(f, {-0.1, 0.02}, opt); }) == "SlowConvergence");
    opt.throw_on_slow = false;
    FatouEstimate e = fatou_coordinate(f, {-0.1, 0.02}, opt);
    CHECK(e.increment < 1e-3);
    CHECK(abel_residual(f, petal_samples(4), opt) < 1e-3);
  }
  SUBCASE("conjugation by 2z") {
    // h = 2 f(z/2) has a = 1/2; both coordinates satisfy the Abel equation
    NumericGerm f = germ_from_coeffs({1, 1, 1});
    NumericGerm h = germ_from_coeffs({1, 0.5, 0.25});
    FatouOptions opt;
    opt.n_max = 50000;
    std::vector<cd> zs = petal_samples(6), ws;
    for (cd z : zs) ws.push_back(2.0 * z);
    CHECK(abel_residual(f, zs, opt) < 1e-6);
    CHECK(abel_residual(h, ws, opt) < 1e-6);
    // phi_h(2z) - phi_f(z) is constant
    cd c0 = fatou_coordinate(h, ws[0], opt).phi - fatou_coordinate(f, zs[0], opt).phi;
    for (std::size_t i = 1; i < zs.size(); ++i)
      CHECK(std::abs(fatou_coordinate(h, ws[i], opt).phi - fatou_coordinate(f, zs[i], opt).phi - c0) < 1e-7);
  }
  SUBCASE("chart at infinity") {
    NumericGerm f = germ_f0();
    FatouEstimate e = fatou_coordinate_infinity([](cd w) { return w + 1.0; }, {10, 3}, 0, 1000);
    CHECK(std::abs(e.phi - cd(10, 3)) < 1e-9);
  }
  SUBCASE("errors") {
    NumericGerm f = germ_from_coeffs({1, 1, 1});
    CHECK(kind_of([&] { fatou_coordinate(f, {0.3, 0}); }) == "NotInPetal");
    CHECK(kind_of([&] { fatou_coordinate(germ_from_coeffs({0.5, 1}), {-0.1, 0}); }) == "NotTangentToIdentity");
    CHECK(kind_of([&] { germ_from_coeffs({1}).p(); }) == "ZeroLeadingCoefficient");
    FatouOptions opt;
    opt.estimator = Estimator::LogCorrected;
    CHECK(kind_of([&] { fatou_coordinate(germ_from_coeffs({1, 0, 1}), {0, 0.1}, opt); }) == "InvalidArgument");
  }
  SUBCASE("parallel equals serial") {
    NumericGerm f = germ_from_coeffs({1, 1, 1});
    FatouOptions opt;
    opt.n_max = 5000;
    opt.throw_on_slow = false;
    CHECK(abel_residual(f, petal_samples(16), opt) == abel_residual_serial(f, petal_samples(16), opt));
  }
}

TEST_CASE("orbit census") {
  SUBCASE("rotation of order 5") {
    Census c = orbit_census(rotation_germ(std::polar(1.0, 2 * std::numbers::pi / 5)));
    CHECK(c.samples.size() > 1000);
    CHECK(c.periodic == static_cast<long>(c.samples.size()));
    CHECK(c.periods.size() == 1);
    CHECK(c.periods.begin()->first == 5);
    CHECK(c.finite_orbit == c.periodic);
  }
  SUBCASE("irrational rotation has no finite orbits") {
    CensusOptions opt;
    opt.max_iter = 2000;
    opt.grid = 12;
    Census c = orbit_census(rotation_germ(std::polar(1.0, 2 * std::numbers::pi * (std::sqrt(2.0) - 1))), opt);
    CHECK(c.finite_orbit == 0);
    CHECK(c.undecided == static_cast<long>(c.samples.size()));
  }
  SUBCASE("parabolic: both attracted and escaping, no finite orbits") {
    CensusOptions opt;
    opt.grid = 20;
    opt.max_iter = 5000;
    NumericGerm f = germ_from_coeffs({1, 0, 1});
    Census c = orbit_census(f, opt);
    CHECK(c.finite_orbit == 0);
    CHECK(c.attracted > 0);
    CHECK(c.escaping > 0);
    CHECK(c.directions.size() == 2);
    Census s = orbit_census_serial(f, opt);
    CHECK(s.attracted == c.attracted);
    CHECK(s.escaping == c.escaping);
    CHECK(s.undecided == c.undecided);
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      CHECK(c.samples[i].cls == s.samples[i].cls);
      CHECK(c.samples[i].steps == s.samples[i].steps);
    }
  }
  SUBCASE("serialization") {
    CensusOptions opt;
    opt.grid = 4;
    opt.max_iter = 10;
    Census c = orbit_census(rotation_germ(std::polar(1.0, std::numbers::pi / 2)), opt);
    CHECK(census_to_json(c, -1).find("\"periods\":{\"4\":") != std::string::npos);
    CHECK(census_to_csv(c).rfind("re,im,class,steps,direction\n", 0) == 0);
  }
}
