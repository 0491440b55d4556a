#include "pf.hpp"

#include <numeric>

namespace relttk {

namespace {

int side(const IMatrix& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) throw input_error("empty matrix");
  for (auto& row : m) {
    if (static_cast<int>(row.size()) != n) throw input_error("matrix not square");
    for (auto& x : row)
      if (x < 0) throw input_error("matrix has a negative entry");
  }
  return n;
}

std::vector<int> reachable(const IMatrix& m, int start) {
  int n = static_cast<int>(m.size());
  std::vector<int> seen(n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (!seen[w] && m[v][w] != 0) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace

IMatrix identity_matrix(int n) {
  IMatrix e(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

IMatrix mat_mul(const IMatrix& a, const IMatrix& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = k ? static_cast<int>(b[0].size()) : 0;
  IMatrix c(n, std::vector<BigInt>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < m; ++j)
        if (b[t][j] != 0) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

IMatrix mat_pow(const IMatrix& a, unsigned long k) {
  IMatrix r = identity_matrix(static_cast<int>(a.size()));
  IMatrix base = a;
  while (k > 0) {
    if (k & 1) r = mat_mul(r, base);
    k >>= 1;
    if (k) base = mat_mul(base, base);
  }
  return r;
}

std::vector<BigInt> mat_vec(const IMatrix& a, const std::vector<BigInt>& v) {
  int n = static_cast<int>(a.size());
  std::vector<BigInt> r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
      if (a[i][j] != 0 && v[j] != 0) r[i] += a[i][j] * v[j];
  return r;
}

bool is_irreducible(const IMatrix& m) {
  int n = side(m);
  if (n == 1) return m[0][0] > 0;
  for (int v = 0; v < n; ++v) {
    auto seen = reachable(m, v);
    for (int w = 0; w < n; ++w)
      if (!seen[w]) return false;
  }
  return true;
}

bool is_primitive(const IMatrix& m) {
  if (!is_irreducible(m)) return false;
  int n = side(m);
  if (n == 1) return true;
  // period = gcd over all arcs u -> w of depth(u) + 1 - depth(w)
  std::vector<int> depth(n, -1);
  std::vector<int> order{0};
  depth[0] = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int w = 0; w < n; ++w)
      if (m[v][w] != 0 && depth[w] < 0) {
        depth[w] = depth[v] + 1;
        order.push_back(w);
      }
  }
  int g = 0;
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w)
      if (m[u][w] != 0) g = std::gcd(g, depth[u] + 1 - depth[w]);
  return std::abs(g) == 1;
}

PFData pf_enclosure(const IMatrix& m, const Rational& tol) {
  int n = side(m);
  if (tol <= 0) throw input_error("tolerance must be positive");
  if (!is_irreducible(m)) throw input_error("matrix is not irreducible");

  PFData out;
  if (n == 1) {
    Rational lam(m[0][0]);
    out.lambda = {lam, lam};
    out.vec = {{Rational(1), Rational(1)}};
    return out;
  }

  // b = m + id is primitive; high powers of it have nearly proportional
  // columns, and the column ratio extremes bracket the eigenvector
  IMatrix p = m;
  for (int i = 0; i < n; ++i) p[i][i] += 1;
  while (true) {
    bool positive = true;
    for (auto& row : p)
      for (auto& x : row) positive = positive && x > 0;
    if (positive) break;
    p = mat_mul(p, p);
  }

  for (int round = 0; round < 48; ++round) {
    // ratio intervals r_i for v_i / v_0 of the true eigenvector
    std::vector<Interval> ratio(n);
    for (int i = 0; i < n; ++i) {
      Rational lo = Rational(p[i][0]) / Rational(p[0][0]);
      Rational hi = lo;
      for (int c = 1; c < n; ++c) {
        Rational r = Rational(p[i][c]) / Rational(p[0][c]);
        if (r < lo) lo = r;
        if (r > hi) hi = r;
      }
      ratio[i] = {lo, hi};
    }

    // normalize to sum one with outward rounding
    std::vector<Interval> vec(n);
    Rational lo_sum = 0, hi_sum = 0;
    for (auto& r : ratio) {
      lo_sum += r.lo;
      hi_sum += r.hi;
    }
    for (int i = 0; i < n; ++i) {
      vec[i].lo = ratio[i].lo / (ratio[i].lo + (hi_sum - ratio[i].hi));
      vec[i].hi = ratio[i].hi / (ratio[i].hi + (lo_sum - ratio[i].lo));
    }

    // eigenvalue bounds from an explicit positive vector
    std::vector<Rational> v(n);
    for (int i = 0; i < n; ++i) v[i] = ratio[i].mid();
    Rational lam_lo, lam_hi;
    for (int i = 0; i < n; ++i) {
      Rational q = 0;
      for (int j = 0; j < n; ++j)
        if (m[i][j] != 0) q += Rational(m[i][j]) * v[j];
      q /= v[i];
      if (i == 0 || q < lam_lo) lam_lo = q;
      if (i == 0 || q > lam_hi) lam_hi = q;
    }

    Rational worst = lam_hi - lam_lo;
    for (auto& iv : vec)
      if (iv.width() > worst) worst = iv.width();
    if (worst <= tol) {
      out.lambda = {lam_lo, lam_hi};
      out.vec = vec;
      return out;
    }
    p = mat_mul(p, p);
  }
  throw verify_error("eigenvalue enclosure did not converge");
}

PFTriple pf_data(const IMatrix& m, const Rational& tol) {
  int n = side(m);
  PFData right = pf_enclosure(m, tol);
  IMatrix t(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = m[j][i];
  PFData left = pf_enclosure(t, tol);

  PFTriple out;
  out.lambda.lo = std::max(right.lambda.lo, left.lambda.lo);
  out.lambda.hi = std::min(right.lambda.hi, left.lambda.hi);
  out.left = left.vec;
  out.right = right.vec;
  return out;
}

}  // namespace relttk
