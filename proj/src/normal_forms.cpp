#include "folkit/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "folkit/errors.hpp"
#include "folkit/parser.hpp"
#include "json.hpp"

namespace folkit {

ConstraintPattern full_linearization() {
  return [](int, const Exponent&) { return Rule::Solve; };
}

ConstraintPattern poincare_dulac() {
  return [](int, const Exponent&) { return Rule::Auto; };
}

ConstraintPattern siegel_axes() {
  return [](int i, const Exponent& q) { return q[i] == 0 ? Rule::Solve : Rule::Keep; };
}

ConstraintPattern invariant_plane() {
  return [](int i, const Exponent& q) {
    const int last = static_cast<int>(q.size()) - 1;
    if (i == last) return q[last] == 0 ? Rule::Solve : Rule::Keep;
    if (q[last] == 0) return Rule::Auto;
    bool pure = std::all_of(q.begin(), q.end() - 1, [](int e) { return e == 0; });
    return pure ? Rule::Solve : Rule::Keep;
  };
}

namespace {

std::string slot_str(int i, const Exponent& q) {
  std::string s = "(" + std::to_string(i + 1) + ",(";
  for (std::size_t k = 0; k < q.size(); ++k) s += (k ? "," : "") + std::to_string(q[k]);
  return s + "))";
}

Matrix identity(int n, const TowerPtr& T) {
  Matrix m(n, std::vector<FieldElement>(n, FieldElement::zero(T)));
  for (int i = 0; i < n; ++i) m[i][i] = FieldElement::one(T);
  return m;
}

Matrix jacobian_at_zero(const VectorFieldGerm& X) {
  const int n = X.dim();
  TowerPtr T = X.tower();
  Matrix J(n, std::vector<FieldElement>(n, FieldElement::zero(T)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Exponent e(n, 0);
      e[j] = 1;
      J[i][j] = X[i].coeff(e).embed(T);
    }
  return J;
}

Matrix embed(const Matrix& m, const TowerPtr& T) {
  Matrix r = m;
  for (auto& row : r)
    for (auto& v : row) v = v.embed(T);
  return r;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  TowerPtr T = a[0][0].tower();
  Matrix r(n, std::vector<FieldElement>(m, FieldElement::zero(T)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) r[i][j] += a[i][l] * b[l][j];
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& a) {
  std::vector<int> piv;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    FieldElement inv = a[r][c].inverse();
    for (auto& v : a[r]) v *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      FieldElement f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<std::vector<FieldElement>> nullspace(Matrix a) {
  const int n = static_cast<int>(a[0].size());
  TowerPtr T = a[0][0].tower();
  auto piv = rref(a);
  std::vector<std::vector<FieldElement>> basis;
  for (int f = 0; f < n; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    std::vector<FieldElement> v(n, FieldElement::zero(T));
    v[f] = FieldElement::one(T);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(v);
  }
  return basis;
}

Matrix inverse(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  TowerPtr T = m[0][0].tower();
  Matrix a(n, std::vector<FieldElement>(2 * n, FieldElement::zero(T)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = FieldElement::one(T);
  }
  auto piv = rref(a);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) fail("InternalError", "singular matrix");
  Matrix r(n, std::vector<FieldElement>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = a[i][n + j];
  return r;
}

// Faddeev-LeVerrier, coefficients low to high.
UPoly char_poly(const Matrix& A) {
  const int n = static_cast<int>(A.size());
  TowerPtr T = A[0][0].tower();
  std::vector<FieldElement> c(n + 1, FieldElement::zero(T));
  c[n] = FieldElement::one(T);
  Matrix M(n, std::vector<FieldElement>(n, FieldElement::zero(T)));
  for (int k = 1; k <= n; ++k) {
    Matrix AM = mat_mul(A, M);
    for (int i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    Matrix AMk = mat_mul(A, M);
    FieldElement tr = FieldElement::zero(T);
    for (int i = 0; i < n; ++i) tr += AMk[i][i];
    c[n - k] = -tr / FieldElement(static_cast<long>(k));
  }
  return UPoly(T, c);
}

bool is_diagonal(const Matrix& J) {
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = 0; j < J.size(); ++j)
      if (i != j && !J[i][j].is_zero()) return false;
  return true;
}

VectorFieldGerm embed_field(const VectorFieldGerm& X, const TowerPtr& T) { return X.embed(T); }

MultiPoly truncated_product(const MultiPoly& a, const MultiPoly& b, int N) { return a.mul_trunc(b, N); }

}  // namespace

VectorFieldGerm linear_change(const VectorFieldGerm& X, const Matrix& P, const Matrix& Pinv) {
  const int n = X.dim();
  TowerPtr T = common_tower(X.tower(), P[0][0].tower());
  VectorFieldGerm Y = embed_field(X, T);
  std::vector<MultiPoly> sub;
  for (int i = 0; i < n; ++i) {
    MultiPoly s(n, T);
    for (int j = 0; j < n; ++j) s = s + P[i][j].embed(T) * MultiPoly::var(n, j, T);
    sub.push_back(s);
  }
  std::vector<MultiPoly> XP;
  for (int i = 0; i < n; ++i) XP.push_back(Y[i].substitute(sub));
  std::vector<MultiPoly> out;
  for (int i = 0; i < n; ++i) {
    MultiPoly s(n, T);
    for (int j = 0; j < n; ++j) s = s + Pinv[i][j].embed(T) * XP[j];
    out.push_back(s);
  }
  return VectorFieldGerm(out);
}

Diagonalization diagonalize_linear_part(const VectorFieldGerm& X, const std::function<int(const FieldElement&)>& order,
                                        const TowerCaps& caps) {
  for (const auto& c : X.components())
    if (!c.constant_term().is_zero()) fail("RegularPoint", "the field does not vanish at 0");
  const int n = X.dim();
  Matrix J = jacobian_at_zero(X);
  TowerPtr T = X.tower();
  Diagonalization d;
  if (is_diagonal(J)) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (order) std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return order(J[a][a]) < order(J[b][b]); });
    d.P = Matrix(n, std::vector<FieldElement>(n, FieldElement::zero(T)));
    for (int j = 0; j < n; ++j) {
      d.P[perm[j]][j] = FieldElement::one(T);
      d.eigenvalues.push_back(J[perm[j]][perm[j]]);
    }
    d.Pinv = inverse(d.P);
    return d;
  }
  UPoly chi = char_poly(J);
  std::vector<std::pair<FieldElement, int>> roots;
  for (;;) {
    roots.clear();
    const UPoly* pending = nullptr;
    auto fac = factor(chi);
    for (const auto& [q, m] : fac) {
      if (q.degree() == 1) {
        roots.emplace_back(-q.coeff(0), m);
      } else if (!pending) {
        pending = &q;
      }
    }
    if (!pending) break;
    T = adjoin_root(T, *pending, caps);
    chi = chi.embed(T);
  }
  J = embed(J, T);
  std::vector<std::size_t> idx(roots.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (order)
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return order(roots[a].first) < order(roots[b].first); });
  Matrix cols;
  for (std::size_t k : idx) {
    auto [lam, m] = roots[k];
    lam = lam.embed(T);
    Matrix A = J;
    for (int i = 0; i < n; ++i) A[i][i] -= lam;
    auto ns = nullspace(A);
    if (static_cast<int>(ns.size()) != m) fail("LinearPartNotPrepared", "linear part is not diagonalizable");
    for (auto& v : ns) {
      cols.push_back(v);
      d.eigenvalues.push_back(lam);
    }
  }
  d.P = Matrix(n, std::vector<FieldElement>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.P[i][j] = cols[j][i];
  d.Pinv = inverse(d.P);
  return d;
}

int poincare_resonance_bound(const std::vector<FieldElement>& eigs) {
  std::vector<std::complex<double>> z;
  double mx = 0;
  for (const auto& e : eigs) {
    z.push_back(e.numeric());
    mx = std::max(mx, std::abs(z.back()));
  }
  double dist = 1e300;
  for (std::size_t i = 0; i < z.size(); ++i) {
    dist = std::min(dist, std::abs(z[i]));
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      std::complex<double> d = z[j] - z[i];
      double t = std::norm(d) > 0 ? std::clamp(-std::real(std::conj(d) * z[i]) / std::norm(d), 0.0, 1.0) : 0.0;
      dist = std::min(dist, std::abs(z[i] + t * d));
    }
  }
  if (dist <= 0) return -1;
  return static_cast<int>(std::floor(mx / dist * (1 + 1e-9))) + 1;
}

NormalFormResult solve_conjugacy(const VectorFieldGerm& X, const ConstraintPattern& pattern, int N) {
  if (N < 2) fail("TruncationTooSmall", "N must be at least 2");
  const int n = X.dim();
  TowerPtr T = X.tower();
  for (const auto& c : X.components())
    if (!c.constant_term().is_zero()) fail("RegularPoint", "the field does not vanish at 0");
  Matrix J = jacobian_at_zero(X);
  if (!is_diagonal(J)) fail("LinearPartNotPrepared", "linear part must be diagonal");

  NormalFormResult r;
  r.N = N;
  r.P = identity(n, T);
  for (int i = 0; i < n; ++i) r.eigenvalues.push_back(J[i][i]);
  const auto& lam = r.eigenvalues;
  std::vector<MultiPoly> y, phi, zeta, psi;
  for (int i = 0; i < n; ++i) {
    y.push_back(MultiPoly::var(n, i, T));
    phi.push_back((X[i].embed(T) - lam[i] * y[i]).truncate(N));
    zeta.emplace_back(n, T);
    psi.emplace_back(n, T);
  }
  for (int d = 2; d <= N; ++d) {
    std::vector<MultiPoly> subs;
    for (int j = 0; j < n; ++j) subs.push_back(y[j] + zeta[j]);
    std::vector<MultiPoly> rhs;
    for (int i = 0; i < n; ++i) {
      MultiPoly R = phi[i].substitute(subs, d).homogeneous(d);
      for (int j = 0; j < n; ++j) {
        if (psi[j].is_zero()) continue;
        R = R - truncated_product(psi[j], zeta[i].derivative(j), d).homogeneous(d);
      }
      rhs.push_back(R);
    }
    for (int i = 0; i < n; ++i) {
      for (const auto& q : exponents_of_degree(n, d)) {
        FieldElement dl = delta(lam, i, q);
        FieldElement c = rhs[i].coeff(q);
        Rule rule = pattern(i, q);
        if (rule == Rule::Auto) rule = dl.is_zero() ? Rule::Keep : Rule::Solve;
        if (rule == Rule::Solve) {
          if (dl.is_zero()) fail("ZeroDivisorDelta", slot_str(i, q));
          if (!c.is_zero()) zeta[i].add_term(q, c / dl);
        } else if (!c.is_zero()) {
          psi[i].add_term(q, c);
          r.kept.emplace_back(i, q);
        }
      }
    }
  }
  std::vector<MultiPoly> nf;
  for (int i = 0; i < n; ++i) {
    nf.push_back(lam[i] * y[i] + psi[i]);
    r.H.push_back(y[i] + zeta[i]);
  }
  r.zeta = zeta;
  r.normal_form = VectorFieldGerm(nf);
  r.prepared = VectorFieldGerm(std::vector<MultiPoly>(X.components())).embed(T);
  for (int i = 0; i < n; ++i) r.prepared[i] = r.prepared[i].truncate(N);
  return r;
}

namespace {

// Runs the solver in eigencoordinates and re-expresses H in the original ones.
NormalFormResult solve_in_eigencoordinates(const VectorFieldGerm& X, const Diagonalization& d,
                                           const ConstraintPattern& pattern, int N, const FieldElement& scale) {
  const int n = X.dim();
  VectorFieldGerm Xs = X * scale;
  VectorFieldGerm Y = linear_change(Xs, d.P, d.Pinv);
  NormalFormResult r = solve_conjugacy(Y, pattern, N);
  TowerPtr T = Y.tower();
  r.P = embed(d.P, T);
  r.scale = scale.embed(T);
  r.prepared = Y;
  for (int i = 0; i < n; ++i) r.prepared[i] = r.prepared[i].truncate(N);
  std::vector<MultiPoly> H;
  for (int i = 0; i < n; ++i) {
    MultiPoly h(n, T);
    for (int j = 0; j < n; ++j) h = h + r.P[i][j] * r.H[j];
    H.push_back(h);
  }
  r.H = H;
  return r;
}

int nonzero_first(const FieldElement& v) { return v.is_zero() ? 1 : 0; }

}  // namespace

NormalFormResult poincare_linearize(const VectorFieldGerm& X, int N) {
  auto d = diagonalize_linear_part(X);
  if (domain_classification(d.eigenvalues) != Domain::Poincare) fail("NotPoincareDomain", "0 lies in the hull");
  int bound = poincare_resonance_bound(d.eigenvalues);
  auto res = detect_resonances(d.eigenvalues, std::max(N, bound));
  if (!res.empty()) {
    std::string s;
    for (const auto& [i, q] : res) s += (s.empty() ? "" : " ") + slot_str(i, q);
    fail("ResonanceObstruction", s);
  }
  auto r = solve_in_eigencoordinates(X, d, full_linearization(), N, FieldElement(1));
  r.resonance_free_all_degrees = true;
  return r;
}

NormalFormResult resonant_normal_form(const VectorFieldGerm& X, int N) {
  if (X.dim() != 2) fail("WrongClass", "resonant normal form needs n = 2");
  auto rep = classify_singularity(X);
  if (rep.cls != SingClass::SimpleResonantRatioN) fail("WrongClass", rep.tag());
  int nr = rep.n;
  auto d = diagonalize_linear_part(X);
  // y1 carries lambda1 = n lambda2.
  if (d.eigenvalues[0] != FieldElement(static_cast<long>(nr)) * d.eigenvalues[1]) {
    std::swap(d.eigenvalues[0], d.eigenvalues[1]);
    for (auto& row : d.P) std::swap(row[0], row[1]);
    std::swap(d.Pinv[0], d.Pinv[1]);
  }
  auto r = solve_in_eigencoordinates(X, d, poincare_dulac(), N, FieldElement(1));
  r.a = r.normal_form[0].coeff({0, nr});
  return r;
}

NormalFormResult siegel_straighten(const VectorFieldGerm& X, int N) {
  if (X.dim() != 2) fail("WrongClass", "Siegel straightening needs n = 2");
  auto rep = classify_singularity(X);
  if (rep.cls != SingClass::SiegelRational && rep.cls != SingClass::SiegelIrrational) fail("WrongClass", rep.tag());
  auto d = diagonalize_linear_part(X);
  return solve_in_eigencoordinates(X, d, siegel_axes(), N, FieldElement(1));
}

NormalFormResult invariant_plane_3d(const VectorFieldGerm& X, int N) {
  if (X.dim() != 3) fail("WrongClass", "invariant plane needs n = 3");
  auto d = diagonalize_linear_part(X, nonzero_first);
  const auto& e = d.eigenvalues;
  if (!e[2].is_zero() || e[0].is_zero() || e[1].is_zero()) fail("WrongClass", "need exactly one zero eigenvalue");
  std::vector<FieldElement> pair{e[0], e[1]};
  if (domain_classification(pair) != Domain::Poincare) fail("WrongClass", "nonzero pair not in the Poincare domain");
  return solve_in_eigencoordinates(X, d, invariant_plane(), N, FieldElement(1));
}

namespace {

// Coefficients of a one-variable truncated series, degree 0..N.
using Series = std::vector<FieldElement>;

Series ser_mul(const Series& a, const Series& b, int N, const TowerPtr& T) {
  Series r(N + 1, FieldElement::zero(T));
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series ser_inv(const Series& a, int N, const TowerPtr& T) {
  Series r(N + 1, FieldElement::zero(T));
  FieldElement a0i = a[0].inverse();
  r[0] = a0i;
  for (int k = 1; k <= N; ++k) {
    FieldElement s = FieldElement::zero(T);
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j) s += a[j] * r[k - j];
    r[k] = -s * a0i;
  }
  return r;
}

// f(g) with g(0) = 0.
Series ser_compose(const Series& f, const Series& g, int N, const TowerPtr& T) {
  Series r(N + 1, FieldElement::zero(T));
  Series pw(N + 1, FieldElement::zero(T));
  pw[0] = FieldElement::one(T);
  for (int k = 0; k <= N && k < static_cast<int>(f.size()); ++k) {
    for (int i = 0; i <= N; ++i) r[i] += f[k] * pw[i];
    pw = ser_mul(pw, g, N, T);
  }
  return r;
}

Series ser_exp(const Series& a, int N, const TowerPtr& T) {
  // E' = a' E with a(0) = 0
  Series E(N + 1, FieldElement::zero(T));
  E[0] = FieldElement::one(T);
  for (int k = 1; k <= N; ++k) {
    FieldElement s = FieldElement::zero(T);
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j)
      s += FieldElement(static_cast<long>(j)) * a[j] * E[k - j];
    E[k] = s / FieldElement(static_cast<long>(k));
  }
  return E;
}

Series axis_series(const MultiPoly& p, int var, int N, const TowerPtr& T) {
  Series s(N + 1, FieldElement::zero(T));
  for (const auto& [e, c] : p.terms()) {
    bool ok = true;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (static_cast<int>(k) != var && e[k] != 0) ok = false;
    if (ok && e[var] <= N) s[e[var]] = c.embed(T);
  }
  return s;
}

// phi(w) = w psi(w), E(w) = exp(int L): the model foliation pulled forward onto
// y1 (1 + a(y2)) d1 + b(y2) d2 with b = y2^(p+1) beta.
OrbitalStage orbital_stage(const Series& a, const Series& beta, int p, int N, TowerCaps caps) {
  TowerPtr T = beta[0].tower();
  const int M = N + p + 1;
  // c^p beta0 = 1
  FieldElement target = beta[0].inverse();
  std::vector<FieldElement> pc(p + 1, FieldElement::zero(T));
  pc[p] = FieldElement::one(T);
  pc[0] = -target;
  UPoly cp(T, pc);
  FieldElement c;
  bool found = false;
  for (const auto& [q, m] : factor(cp))
    if (q.degree() == 1) {
      c = -q.coeff(0);
      found = true;
      break;
    }
  if (!found) {
    auto fac = factor(cp);
    T = adjoin_root(T, fac.front().first, caps);
    c = FieldElement::generator(T);
  }
  Series A(a.size()), B(beta.size());
  for (std::size_t k = 0; k < a.size(); ++k) A[k] = a[k].embed(T);
  for (std::size_t k = 0; k < beta.size(); ++k) B[k] = beta[k].embed(T);
  Series psi(M + 1, FieldElement::zero(T)), L(M + 1, FieldElement::zero(T));
  psi[0] = c;
  FieldElement lambda = FieldElement::zero(T);
  auto residual = [&](int j) {
    Series phi(M + 1, FieldElement::zero(T));
    for (int k = 0; k < M; ++k) phi[k + 1] = psi[k];
    Series pp(M + 1, FieldElement::zero(T));
    pp[0] = FieldElement::one(T);
    for (int k = 0; k <= p; ++k) pp = ser_mul(pp, psi, j, T);
    Series bphi = ser_compose(B, phi, j, T);
    Series f(j + 1, FieldElement::zero(T));
    f[0] = FieldElement::one(T);
    if (p <= j) f[p] += lambda;
    for (int k = 0; k + p + 1 <= j; ++k) f[k + p + 1] += L[k];
    Series lhs = ser_mul(ser_mul(pp, bphi, j, T), f, j, T);
    Series dphi(j + 1, FieldElement::zero(T));
    for (int k = 0; k <= j; ++k) dphi[k] = FieldElement(static_cast<long>(k + 1)) * phi[k + 1];
    Series aphi = ser_compose(A, phi, j, T);
    aphi[0] += FieldElement::one(T);
    Series rhs = ser_mul(dphi, aphi, j, T);
    return lhs[j] - rhs[j];
  };
  if (!residual(0).is_zero()) fail("InternalError", "orbital stage: leading coefficient");
  for (int j = 1; j <= M - 1; ++j) {
    FieldElement r0 = residual(j);
    if (j < p) {
      psi[j] = -r0 / FieldElement(static_cast<long>(p - j));
    } else if (j == p) {
      lambda = -r0 / c;
    } else {
      L[j - p - 1] = -r0 / c;
    }
  }
  // E = exp(int L)
  Series intL(N + 1, FieldElement::zero(T));
  for (int k = 0; k + 1 <= N; ++k) intL[k + 1] = L[k] / FieldElement(static_cast<long>(k + 1));
  Series E = ser_exp(intL, N, T);
  OrbitalStage st;
  st.lambda = lambda;
  MultiPoly v = MultiPoly::var(2, 0, T), w = MultiPoly::var(2, 1, T);
  MultiPoly Ew(2, T), phw(2, T);
  for (int k = 0; k <= N; ++k) {
    if (!E[k].is_zero()) Ew.add_term({0, k}, E[k]);
    if (k >= 1 && !psi[k - 1].is_zero()) phw.add_term({0, k}, psi[k - 1]);
  }
  st.map = {(v * Ew).truncate(N), phw};
  MultiPoly one = MultiPoly::constant(2, FieldElement::one(T));
  st.model = VectorFieldGerm({v * (one + lambda * w.pow(p)), w.pow(p + 1)});
  return st;
}

}  // namespace

NormalFormResult saddle_node_prepare(const VectorFieldGerm& X, int N) {
  if (X.dim() != 2) fail("WrongClass", "saddle-node needs n = 2");
  auto rep = classify_singularity(X);
  if (rep.cls != SingClass::SaddleNode) fail("WrongClass", rep.tag());
  auto d = diagonalize_linear_part(X, nonzero_first);
  FieldElement mu = d.eigenvalues[0];
  d.eigenvalues[0] = FieldElement::one(mu.tower());
  auto r = solve_in_eigencoordinates(X, d, poincare_dulac(), N, mu.inverse());
  TowerPtr T = r.normal_form.tower();
  // normal form: y1 (1 + a(y2)) d1 + b(y2) d2
  Series b = axis_series(r.normal_form[1], 1, N, T);
  int ordb = 0;
  while (ordb <= N && b[ordb].is_zero()) ++ordb;
  if (ordb > N) fail("TruncationTooSmall", "second component vanishes on the axis through order N");
  int p = ordb - 1;
  if (N < p + 2) fail("TruncationTooSmall", "N < p + 2");
  Series a = axis_series(r.normal_form[0].derivative(0), 1, N, T);
  a[0] = FieldElement::zero(T);
  Series beta(b.begin() + ordb, b.end());
  // lambda = Res (1 + a) / b
  Series one_a = a;
  one_a[0] = FieldElement::one(T);
  Series quo = ser_mul(one_a, ser_inv(beta, p, T), p, T);
  r.p = p;
  r.lambda = quo[p];
  r.orbital = orbital_stage(a, beta, p, N, TowerCaps{});
  return r;
}

std::vector<MultiPoly> conjugacy_residual(const VectorFieldGerm& X, const NormalFormResult& r) {
  const int n = X.dim();
  const int N = r.N;
  TowerPtr T = r.normal_form.tower();
  VectorFieldGerm Xs = X.embed(T) * r.scale;
  std::vector<MultiPoly> out;
  for (int i = 0; i < n; ++i) {
    MultiPoly lhs = r.normal_form.apply(r.H[i], N);
    MultiPoly rhs = Xs[i].substitute(r.H, N);
    out.push_back((lhs - rhs).truncate(N));
  }
  return out;
}

bool conjugacy_holds(const VectorFieldGerm& X, const NormalFormResult& r) {
  for (const auto& p : conjugacy_residual(X, r))
    if (!p.is_zero()) return false;
  return true;
}

bool orbital_identity_holds(const NormalFormResult& r) {
  if (!r.orbital) return false;
  const auto& st = *r.orbital;
  const int N = r.N;
  MultiPoly u = st.model.apply(st.map[0], N);
  MultiPoly v = st.model.apply(st.map[1], N);
  MultiPoly P = r.normal_form[0].substitute(st.map, N);
  MultiPoly Q = r.normal_form[1].substitute(st.map, N);
  return (u.mul_trunc(Q, N) - v.mul_trunc(P, N)).truncate(N).is_zero();
}

std::string normal_form_to_json(const NormalFormResult& r, int indent) {
  using nlohmann::ordered_json;
  auto terms = [](const std::vector<MultiPoly>& v) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
      for (const auto& [e, c] : v[i].terms()) a.push_back({{"component", i + 1}, {"exponent", e}, {"coefficient", render(c)}});
    return a;
  };
  ordered_json j;
  j["N"] = r.N;
  ordered_json ev = ordered_json::array();
  for (const auto& e : r.eigenvalues) ev.push_back(render(e));
  j["eigenvalues"] = ev;
  j["tower"] = r.normal_form.tower()->describe();
  j["scale"] = render(r.scale);
  j["zeta"] = terms(r.zeta);
  j["residual"] = terms(r.normal_form.components());
  j["normal_form"] = render(r.normal_form);
  ordered_json inv = ordered_json::object();
  if (r.a) inv["a"] = render(*r.a);
  if (r.p) inv["p"] = *r.p;
  if (r.lambda) inv["lambda"] = render(*r.lambda);
  j["invariants"] = inv;
  ordered_json kept = ordered_json::array();
  for (const auto& [i, q] : r.kept) kept.push_back({{"component", i + 1}, {"exponent", q}});
  j["kept"] = kept;
  if (r.orbital) {
    j["orbital"] = {{"model", render(r.orbital->model)},
                    {"map", {render(r.orbital->map[0]), render(r.orbital->map[1])}},
                    {"lambda", render(r.orbital->lambda)}};
  }
  return j.dump(indent);
}

}  // namespace folkit
