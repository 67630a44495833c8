#include "folkit/fatou.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "folkit/errors.hpp"
#include "json.hpp"

namespace folkit {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

bool finite(cld z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string fmt(cd z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// log(1 + h) for a series with h_0 = 0.
std::vector<cd> series_log1p(const std::vector<cd>& h) {
  const std::size_t S = h.size();
  std::vector<cd> L(S, 0.0);
  for (std::size_t n = 1; n < S; ++n) {
    cd s = static_cast<double>(n) * h[n];
    for (std::size_t k = 1; k < n; ++k) s -= static_cast<double>(k) * L[k] * h[n - k];
    L[n] = s / static_cast<double>(n);
  }
  return L;
}

std::vector<cd> series_exp(const std::vector<cd>& A) {
  const std::size_t S = A.size();
  std::vector<cd> E(S, 0.0);
  E[0] = 1.0;
  for (std::size_t n = 1; n < S; ++n) {
    cd s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) s += static_cast<double>(j) * A[j] * E[n - j];
    E[n] = s / static_cast<double>(n);
  }
  return E;
}

int nearest_direction(const std::vector<cd>& dirs, cld z) {
  cd u(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  u /= std::abs(u);
  int best = 0;
  for (int k = 1; k < static_cast<int>(dirs.size()); ++k)
    if (std::abs(dirs[k] - u) < std::abs(dirs[best] - u)) best = k;
  return best;
}

struct OrbitResult {
  cld phi, phi_next, phi_half;
  int petal = 0;
};

// phi_n at z and at f(z) from one forward orbit.
OrbitResult run_orbit(const NumericGerm& f, cd z0, const FormalFatou& F, const FatouOptions& opt) {
  const int p = F.p;
  const cld a(F.a.real(), F.a.imag());
  auto w_of = [&](cld z) { return cld(-1) / (static_cast<long double>(p) * a * std::pow(z, p)); };
  const long n = opt.n_max, half = opt.n_max / 2;
  std::vector<cd> dirs = attracting_directions(F.a, p);
  cld z(z0.real(), z0.imag());
  long double prev = w_of(z).real();
  cld z_half, z_n;
  for (long k = 1; k <= n + 1; ++k) {
    z = f.eval(z);
    if (!finite(z) || std::abs(z) > static_cast<long double>(f.radius) || z == cld(0))
      fail("NotInPetal", "orbit of " + fmt(z0) + " leaves the disc at step " + std::to_string(k));
    if (k <= opt.petal_steps) {
      long double re = w_of(z).real();
      if (!(re > prev))
        fail("NotInPetal", "Re of the chart at infinity is not increasing along the orbit of " + fmt(z0));
      prev = re;
    }
    if (k == half) z_half = z;
    if (k == n) z_n = z;
  }
  OrbitResult r;
  r.petal = nearest_direction(dirs, z);
  cd v = dirs[r.petal];
  auto estimate = [&](cld zk, long k) -> cld {
    if (opt.estimator == Estimator::Refined) return F.eval(zk, v) - static_cast<long double>(k);
    // g^k(w) - k - b log k with w = -1/(a z)
    cld w = cld(-1) / (a * zk);
    return w - static_cast<long double>(k) -
           cld(F.beta.real(), F.beta.imag()) * std::log(static_cast<long double>(k));
  };
  r.phi = estimate(z_n, n);
  r.phi_half = estimate(z_half, half);
  r.phi_next = estimate(z, n);
  if (opt.estimator == Estimator::LogCorrected)
    r.phi_next = cld(-1) / (a * z) - static_cast<long double>(n) -
                 cld(F.beta.real(), F.beta.imag()) * std::log(static_cast<long double>(n));
  return r;
}

cd to_cd(cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

void check_estimator(const FormalFatou& F, const FatouOptions& opt) {
  if (opt.estimator == Estimator::LogCorrected && F.p != 1)
    fail("InvalidArgument", "the b log n estimator applies to p = 1 only");
  if (opt.n_max < 2) fail("InvalidArgument", "n_max must be at least 2");
}

}  // namespace

cld NumericGerm::eval(cld z) const {
  if (closed_form) return closed_form(z);
  cld s = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = (s + cld(it->real(), it->imag())) * z;
  return s;
}

bool NumericGerm::tangent_to_identity(double tol) const {
  return !coeffs.empty() && std::abs(coeffs[0] - cd(1)) <= tol;
}

int NumericGerm::p() const {
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    if (coeffs[k] != cd(0)) return static_cast<int>(k);
  fail("ZeroLeadingCoefficient", "germ is the identity up to its truncation");
}

cd NumericGerm::a() const { return coeffs[p()]; }

NumericGerm germ_from_coeffs(std::vector<cd> coeffs, double radius) {
  if (coeffs.empty()) fail("InvalidArgument", "empty coefficient list");
  NumericGerm g;
  g.coeffs = std::move(coeffs);
  g.radius = radius;
  return g;
}

NumericGerm germ_f0(int terms) {
  NumericGerm g;
  g.coeffs.assign(terms, cd(1));
  g.radius = 0.9;
  g.closed_form = [](cld z) { return z / (cld(1) - z); };
  return g;
}

NumericGerm rotation_germ(cd multiplier) {
  NumericGerm g;
  g.coeffs = {multiplier};
  g.radius = 1.0;
  return g;
}

std::vector<cd> attracting_directions(cd a, int p) {
  if (a == cd(0)) fail("ZeroLeadingCoefficient", "a must be nonzero");
  if (p < 1) fail("InvalidArgument", "p must be at least 1");
  std::vector<cd> out;
  const double base = std::arg(-std::abs(a) / a);
  for (int k = 0; k < p; ++k) out.push_back(std::polar(1.0, (base + 2 * std::numbers::pi * k) / p));
  return out;
}

std::vector<cd> repelling_directions(cd a, int p) {
  if (a == cd(0)) fail("ZeroLeadingCoefficient", "a must be nonzero");
  if (p < 1) fail("InvalidArgument", "p must be at least 1");
  std::vector<cd> out;
  const double base = std::arg(std::abs(a) / a);
  for (int k = 0; k < p; ++k) out.push_back(std::polar(1.0, (base + 2 * std::numbers::pi * k) / p));
  return out;
}

cld FormalFatou::eval(cld z, cd direction) const {
  cld s = 0, zk = std::pow(z, kmin);
  for (std::size_t i = 0; i < d.size(); ++i, zk *= z) s += cld(d[i].real(), d[i].imag()) * zk;
  cld v(direction.real(), direction.imag());
  cld lg = std::log(z / v) + std::log(v);
  return s + cld(beta.real(), beta.imag()) * lg;
}

FormalFatou formal_fatou(const NumericGerm& f, int M) {
  if (!f.tangent_to_identity()) fail("NotTangentToIdentity", "linear coefficient must be 1");
  FormalFatou F;
  F.p = f.p();
  F.a = f.a();
  const int p = F.p;
  F.M = M < 0 ? 6 * p : M;
  const int S = F.M + p + 1;
  std::vector<cd> h(S, 0.0);
  for (int j = 1; j < S && j < static_cast<int>(f.coeffs.size()); ++j) h[j] = f.coeffs[j];
  std::vector<cd> L = series_log1p(h);
  F.kmin = -p;
  const int kmax = F.M - p;
  F.d.assign(kmax - F.kmin + 1, 0.0);
  std::vector<std::vector<cd>> E(kmax - F.kmin + 1);
  for (int k = F.kmin; k <= kmax; ++k) {
    std::vector<cd> kL(S);
    for (int j = 0; j < S; ++j) kL[j] = static_cast<double>(k) * L[j];
    E[k - F.kmin] = series_exp(kL);
    E[k - F.kmin][0] -= 1.0;
  }
  for (int m = 0; m <= F.M; ++m) {
    const int ks = m - p;
    cd sum = 0.0;
    for (int k = F.kmin; k < ks; ++k) {
      int idx = m - k;
      if (idx < S) sum += F.d[k - F.kmin] * E[k - F.kmin][idx];
    }
    if (m > p) sum += F.beta * L[m];
    cd target = m == 0 ? 1.0 : 0.0;
    if (ks != 0)
      F.d[ks - F.kmin] = (target - sum) / (static_cast<double>(ks) * F.a);
    else
      F.beta = (target - sum) / F.a;
  }
  return F;
}

FatouEstimate fatou_coordinate(const NumericGerm& f, cd z, const FatouOptions& opt) {
  FormalFatou F = formal_fatou(f);
  check_estimator(F, opt);
  OrbitResult r = run_orbit(f, z, F, opt);
  FatouEstimate e;
  e.phi = to_cd(r.phi);
  e.n_max = opt.n_max;
  e.b = F.beta;
  e.increment = static_cast<double>(std::abs(r.phi - r.phi_half));
  e.petal = r.petal;
  e.direction = attracting_directions(F.a, F.p)[r.petal];
  e.estimator = opt.estimator;
  if (opt.throw_on_slow && e.increment > opt.increment_tol)
    fail("SlowConvergence", "increment " + std::to_string(e.increment) + " at n_max " + std::to_string(opt.n_max));
  return e;
}

FatouEstimate fatou_coordinate_infinity(const std::function<cd(cd)>& g, cd w, cd b, long n_max) {
  if (n_max < 2) fail("InvalidArgument", "n_max must be at least 2");
  cd x = w, half;
  for (long k = 1; k <= n_max; ++k) {
    x = g(x);
    if (k == n_max / 2) half = x;
  }
  auto phi = [&](cd v, long k) { return v - static_cast<double>(k) - b * std::log(static_cast<double>(k)); };
  FatouEstimate e;
  e.phi = phi(x, n_max);
  e.n_max = n_max;
  e.b = b;
  e.increment = std::abs(e.phi - phi(half, n_max / 2));
  e.estimator = Estimator::LogCorrected;
  return e;
}

double abel_residual(const NumericGerm& f, const std::function<cd(cd)>& phi, const std::vector<cd>& samples) {
  double r = 0;
  for (cd z : samples) r = std::max(r, std::abs(phi(to_cd(f.eval(cld(z.real(), z.imag())))) - phi(z) - 1.0));
  return r;
}

double abel_residual_serial(const NumericGerm& f, const std::vector<cd>& samples, const FatouOptions& opt) {
  FormalFatou F = formal_fatou(f);
  check_estimator(F, opt);
  double r = 0;
  for (cd z : samples) {
    OrbitResult o = run_orbit(f, z, F, opt);
    r = std::max(r, static_cast<double>(std::abs(o.phi_next - o.phi - cld(1))));
  }
  return r;
}

double abel_residual(const NumericGerm& f, const std::vector<cd>& samples, const FatouOptions& opt) {
  FormalFatou F = formal_fatou(f);
  check_estimator(F, opt);
  const long n = static_cast<long>(samples.size());
  std::vector<double> res(n, 0.0);
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      OrbitResult o = run_orbit(f, samples[i], F, opt);
      res[i] = static_cast<double>(std::abs(o.phi_next - o.phi - cld(1)));
    } catch (const Error& e) {
      errors[i] = e.kind() + "\x1f" + e.detail();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) {
      auto cut = e.find('\x1f');
      fail(e.substr(0, cut), e.substr(cut + 1));
    }
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

std::string to_string(OrbitClass c) {
  switch (c) {
    case OrbitClass::Periodic: return "periodic";
    case OrbitClass::Escaping: return "escaping";
    case OrbitClass::Attracted: return "attracted";
    case OrbitClass::Undecided: return "undecided";
  }
  return "";
}

std::vector<cd> census_grid(const CensusOptions& opt) {
  std::vector<cd> pts;
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      cd z(opt.radius * (-1.0 + (2.0 * i + 1) / opt.grid), opt.radius * (-1.0 + (2.0 * j + 1) / opt.grid));
      if (std::abs(z) < opt.radius && z != cd(0)) pts.push_back(z);
    }
  return pts;
}

OrbitSample classify_orbit(const NumericGerm& h, cd z0, const CensusOptions& opt) {
  OrbitSample s;
  s.z = z0;
  cld z(z0.real(), z0.imag()), start = z;
  for (long k = 1; k <= opt.max_iter; ++k) {
    z = h.eval(z);
    if (!finite(z) || std::abs(z) > static_cast<long double>(opt.radius)) {
      s.cls = OrbitClass::Escaping;
      s.steps = k;
      return s;
    }
    if (std::abs(z - start) < static_cast<long double>(opt.return_tol)) {
      s.cls = OrbitClass::Periodic;
      s.steps = k;
      return s;
    }
  }
  s.steps = opt.max_iter;
  if (std::abs(z) < static_cast<long double>(opt.attract_ratio) * std::abs(start)) {
    s.cls = OrbitClass::Attracted;
    if (h.tangent_to_identity()) s.direction = nearest_direction(attracting_directions(h.a(), h.p()), z);
  }
  return s;
}

namespace {

Census tally(std::vector<OrbitSample> samples) {
  Census c;
  for (const auto& s : samples) {
    switch (s.cls) {
      case OrbitClass::Periodic:
        ++c.periodic;
        ++c.periods[s.steps];
        break;
      case OrbitClass::Escaping: ++c.escaping; break;
      case OrbitClass::Attracted:
        ++c.attracted;
        if (s.direction >= 0) ++c.directions[s.direction];
        break;
      case OrbitClass::Undecided: ++c.undecided; break;
    }
  }
  c.finite_orbit = c.periodic;
  c.samples = std::move(samples);
  return c;
}

}  // namespace

Census orbit_census(const NumericGerm& h, const CensusOptions& opt) {
  std::vector<cd> pts = census_grid(opt);
  const long n = static_cast<long>(pts.size());
  std::vector<OrbitSample> out(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) out[i] = classify_orbit(h, pts[i], opt);
  return tally(std::move(out));
}

Census orbit_census_serial(const NumericGerm& h, const CensusOptions& opt) {
  std::vector<OrbitSample> out;
  for (cd z : census_grid(opt)) out.push_back(classify_orbit(h, z, opt));
  return tally(std::move(out));
}

std::string fatou_to_json(const FatouEstimate& e, std::optional<double> residual, int indent) {
  nlohmann::ordered_json j;
  j["phi"] = {e.phi.real(), e.phi.imag()};
  j["n_max"] = e.n_max;
  j["b"] = {e.b.real(), e.b.imag()};
  j["increment"] = e.increment;
  j["petal"] = e.petal;
  j["direction"] = {e.direction.real(), e.direction.imag()};
  j["estimator"] = e.estimator == Estimator::Refined ? "refined" : "log";
  if (residual) j["residual"] = *residual;
  return j.dump(indent);
}

std::string census_to_json(const Census& c, int indent) {
  nlohmann::ordered_json j;
  j["samples"] = c.samples.size();
  j["finite_orbit"] = c.finite_orbit;
  j["periodic"] = c.periodic;
  j["escaping"] = c.escaping;
  j["attracted"] = c.attracted;
  j["undecided"] = c.undecided;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (auto [k, v] : c.periods) per[std::to_string(k)] = v;
  j["periods"] = per;
  nlohmann::ordered_json dir = nlohmann::ordered_json::object();
  for (auto [k, v] : c.directions) dir[std::to_string(k)] = v;
  j["attracting_directions"] = dir;
  return j.dump(indent);
}

std::string census_to_csv(const Census& c) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,class,steps,direction\n";
  for (const auto& s : c.samples)
    os << s.z.real() << "," << s.z.imag() << "," << to_string(s.cls) << "," << s.steps << "," << s.direction << "\n";
  return os.str();
}

}  // namespace folkit
