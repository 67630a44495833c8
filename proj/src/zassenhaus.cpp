// Univariate factorization over Z: Cantor-Zassenhaus modulo p, linear Hensel
// lifting and subset recombination.
#include <algorithm>
#include <random>

#include "folkit/errors.hpp"
#include "folkit/upoly.hpp"

namespace folkit {

namespace {

using ZPoly = std::vector<Integer>;
using MPoly = std::vector<long>;

void trim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void trim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

long md(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = md(a, p);
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) fail("DivisionByZero", "not invertible mod p");
  return md(t, p);
}

MPoly reduce(const ZPoly& f, long p) {
  MPoly out;
  Integer pp = p;
  for (const auto& c : f) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
    out.push_back(r.get_si());
  }
  trim(out);
  return out;
}

MPoly sub(const MPoly& a, const MPoly& b, long p) {
  MPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] = md((k < a.size() ? a[k] : 0) - (k < b.size() ? b[k] : 0), p);
  trim(r);
  return r;
}

MPoly mul(const MPoly& a, const MPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

std::pair<MPoly, MPoly> divmod_p(MPoly a, const MPoly& b, long p) {
  if (b.empty()) fail("DivisionByZero", "mod-p division by 0");
  if (a.size() < b.size()) return {{}, a};
  long inv = inv_mod(b.back(), p);
  MPoly q(a.size() - b.size() + 1);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    long f = a[k] * inv % p;
    q[k - b.size() + 1] = f;
    if (f != 0)
      for (std::size_t j = 0; j < b.size(); ++j)
        a[k - b.size() + 1 + j] = md(a[k - b.size() + 1 + j] - f * b[j], p);
    if (k == b.size() - 1) break;
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

MPoly monic_p(MPoly a, long p) {
  if (a.empty()) return a;
  long inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

MPoly gcd_p(MPoly a, MPoly b, long p) {
  while (!b.empty()) {
    MPoly r = divmod_p(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic_p(a, p);
}

MPoly ext_gcd_p(MPoly a, MPoly b, long p, MPoly* s, MPoly* t) {
  MPoly s0{1}, s1, t0, t1{1};
  while (!b.empty()) {
    auto [q, r] = divmod_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
    MPoly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  long inv = inv_mod(a.back(), p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  *s = s0;
  *t = t0;
  return monic_p(a, p);
}

MPoly powmod_p(MPoly base, Integer e, const MPoly& m, long p) {
  MPoly r{1};
  base = divmod_p(base, m, p).second;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = divmod_p(mul(r, base, p), m, p).second;
    base = divmod_p(mul(base, base, p), m, p).second;
    e /= 2;
  }
  return r;
}

MPoly derivative_p(const MPoly& a, long p) {
  MPoly r;
  for (std::size_t k = 1; k < a.size(); ++k) r.push_back(static_cast<long>(k) % p * a[k] % p);
  trim(r);
  return r;
}

std::vector<std::pair<MPoly, int>> ddf(MPoly f, long p) {
  std::vector<std::pair<MPoly, int>> out;
  MPoly h{0, 1};
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = powmod_p(h, Integer(p), f, p);
    MPoly g = gcd_p(f, sub(h, MPoly{0, 1}, p), p);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = divmod_p(f, g, p).first;
      h = divmod_p(h, f, p).second;
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

void edf(const MPoly& g, int d, long p, std::mt19937_64& rng, std::vector<MPoly>& out) {
  int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(monic_p(g, p));
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<long> dist(0, p - 1);
  for (;;) {
    MPoly a(n);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (a.size() < 2) continue;
    MPoly b = sub(powmod_p(a, e, g, p), MPoly{1}, p);
    MPoly h = gcd_p(g, b, p);
    int dh = static_cast<int>(h.size()) - 1;
    if (dh > 0 && dh < n) {
      edf(h, d, p, rng, out);
      edf(divmod_p(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

ZPoly to_z(const MPoly& a) {
  ZPoly r;
  for (long c : a) r.emplace_back(static_cast<long>(c));
  return r;
}

void mod_z(ZPoly& a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
}

// Lift F ≡ g h (mod p), g and h monic, to modulus >= M.
void hensel_pair(const ZPoly& F, const MPoly& g0, const MPoly& h0, long p, const Integer& M,
                 ZPoly* G, ZPoly* H) {
  MPoly s, t;
  ext_gcd_p(g0, h0, p, &s, &t);
  ZPoly g = to_z(g0), h = to_z(h0);
  Integer pj = p;
  while (pj < M) {
    ZPoly e = zmul(g, h);
    e.resize(std::max(e.size(), F.size()));
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = (k < F.size() ? F[k] : Integer(0)) - e[k];
    for (auto& c : e) {
      Integer r;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
      (void)r;
    }
    trim(e);
    MPoly ep = reduce(e, p);
    auto [q, sigma] = divmod_p(mul(s, ep, p), h0, p);
    MPoly tau = divmod_p(sub(mul(t, ep, p), sub(MPoly{}, mul(q, g0, p), p), p), g0, p).second;
    ZPoly zs = to_z(sigma), zt = to_z(tau);
    for (std::size_t k = 0; k < zt.size(); ++k) {
      if (k >= g.size()) g.resize(k + 1);
      g[k] += pj * zt[k];
    }
    for (std::size_t k = 0; k < zs.size(); ++k) {
      if (k >= h.size()) h.resize(k + 1);
      h[k] += pj * zs[k];
    }
    pj *= p;
    mod_z(g, pj);
    mod_z(h, pj);
  }
  *G = g;
  *H = h;
}

bool divides(const ZPoly& f, const ZPoly& g, ZPoly* quot) {
  if (g.size() > f.size()) return false;
  std::vector<Rational> r(f.begin(), f.end());
  ZPoly q(f.size() - g.size() + 1);
  for (std::size_t k = f.size(); k-- >= g.size();) {
    Rational c = r[k] / Rational(g.back());
    c.canonicalize();
    if (c.get_den() != 1) return false;
    q[k - g.size() + 1] = c.get_num();
    if (sgn(c) != 0)
      for (std::size_t j = 0; j < g.size(); ++j) r[k - g.size() + 1 + j] -= c * Rational(g[j]);
    if (k == g.size() - 1) break;
  }
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    if (sgn(r[k]) != 0) return false;
  trim(q);
  *quot = q;
  return true;
}

ZPoly primitive(ZPoly a) {
  Integer c = 0;
  for (const auto& x : a) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
  if (sgn(c) == 0) return a;
  if (sgn(a.back()) < 0) c = -c;
  for (auto& x : a) x /= c;
  return a;
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<ZPoly> zassenhaus(ZPoly f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  static const long primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
                                     43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,
                                     101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157,
                                     163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227};
  long best_p = 0;
  std::vector<std::pair<MPoly, int>> best_ddf;
  std::size_t best_count = 0;
  int tried = 0;
  for (long p : primes) {
    Integer lcm = f.back() % Integer(p);
    if (sgn(lcm) == 0) continue;
    MPoly fp = monic_p(reduce(f, p), p);
    if (gcd_p(fp, derivative_p(fp, p), p).size() != 1) continue;
    auto dd = ddf(fp, p);
    std::size_t count = 0;
    for (const auto& [g, d] : dd) count += (g.size() - 1) / d;
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_ddf = dd;
      best_count = count;
    }
    if (++tried >= 5 || count == 1) break;
  }
  if (best_p == 0) fail("FactorizationFailed", "no suitable prime");
  if (best_count == 1) return {f};
  const long p = best_p;
  std::mt19937_64 rng(12345);
  std::vector<MPoly> modf;
  for (const auto& [g, d] : best_ddf) edf(g, d, p, rng, modf);

  // Coefficient bound for any factor, times the leading coefficient.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = norm * abs(f.back()) * 2;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  Integer M = p;
  while (M <= bound) M *= p;

  // Monic target F = lc^{-1} f mod M.
  Integer lc = f.back(), lcinv;
  mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
  ZPoly F = f;
  for (auto& c : F) c *= lcinv;
  mod_z(F, M);

  std::vector<ZPoly> lifted;
  ZPoly rest = F;
  for (std::size_t k = 0; k + 1 < modf.size(); ++k) {
    MPoly h0{1};
    for (std::size_t j = k + 1; j < modf.size(); ++j) h0 = mul(h0, modf[j], p);
    ZPoly G, H;
    hensel_pair(rest, modf[k], h0, p, M, &G, &H);
    lifted.push_back(G);
    rest = H;
  }
  lifted.push_back(rest);

  std::vector<ZPoly> out;
  std::vector<int> alive(lifted.size());
  for (std::size_t k = 0; k < alive.size(); ++k) alive[k] = static_cast<int>(k);
  Integer half = M / 2;
  for (int s = 1; 2 * s <= static_cast<int>(alive.size());) {
    std::vector<int> idx(s);
    for (int k = 0; k < s; ++k) idx[k] = k;
    bool found = false;
    do {
      ZPoly g{f.back()};
      for (int k : idx) {
        g = zmul(g, lifted[alive[k]]);
        mod_z(g, M);
      }
      for (auto& c : g)
        if (c > half) c -= M;
      trim(g);
      g = primitive(g);
      ZPoly q;
      if (divides(f, g, &q)) {
        out.push_back(g);
        f = primitive(q);
        std::vector<int> keep;
        for (int k = 0; k < static_cast<int>(alive.size()); ++k)
          if (std::find(idx.begin(), idx.end(), k) == idx.end()) keep.push_back(alive[k]);
        alive = keep;
        found = true;
        break;
      }
    } while (next_combination(idx, static_cast<int>(alive.size())));
    if (!found) ++s;
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

}  // namespace

std::vector<std::pair<std::vector<Integer>, int>> factor_integer(const std::vector<Integer>& f0) {
  ZPoly f = f0;
  trim(f);
  if (f.empty()) fail("ZeroInput", "factor of 0");
  f = primitive(f);
  std::vector<std::pair<std::vector<Integer>, int>> out;
  for (auto& g : zassenhaus(f)) out.emplace_back(primitive(g), 1);
  return out;
}

}  // namespace folkit
