// Copyright 2026 The qmarg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline Dense kron(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), m = b.size();
  Dense out(n * m, std::vector<C>(n * m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return out;
}

// Marginals of a (da*db)-dimensional matrix.
inline Dense trace_out_second(const Dense& r, std::size_t da, std::size_t db) {
  Dense out(da, std::vector<C>(da));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k) out[i][j] += r[i * db + k][j * db + k];
  return out;
}

inline Dense trace_out_first(const Dense& r, std::size_t da, std::size_t db) {
  Dense out(db, std::vector<C>(db));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k) out[i][j] += r[k * db + i][k * db + j];
  return out;
}

// Lowest eigenvalue of a 2x2 Hermitian matrix with unit trace.
inline double qubit_low(C a00, C a01, C a11) {
  const double t = a00.real() + a11.real();
  const double d = a00.real() - a11.real();
  return 0.5 * (t - std::sqrt(d * d + 4.0 * std::norm(a01)));
}

// Top-k partial sums of the decreasingly sorted, zero-padded string.
inline std::vector<double> top_sums(std::vector<double> v, std::size_t len) {
  v.resize(std::max(len, v.size()), 0.0);
  std::sort(v.begin(), v.end(), std::greater<>());
  std::partial_sum(v.begin(), v.end(), v.begin());
  return v;
}

inline bool majorized(const std::vector<double>& p, const std::vector<double>& q, double slack) {
  const std::size_t len = std::max(p.size(), q.size());
  const auto a = top_sums(p, len);
  const auto b = top_sums(q, len);
  for (std::size_t k = 0; k < len; ++k)
    if (a[k] > b[k] + slack) return false;
  return true;
}

// Solves A x = b by partial pivoting; false if singular.
inline bool solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) < 1e-12) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

// Vertices of {x : 0 <= x_i <= 1/2, x_i <= sum_{j != i} x_j} by trying every
// choice of n tight rows among the 3n. Each vertex is encoded as a bitmask of
// its 1/2 coordinates; any other coordinate value makes the call throw.
inline std::set<std::uint32_t> polytope_vertices(std::size_t n) {
  // Row r: coeffs . x <= rhs.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> lo(n, 0.0), hi(n, 0.0), tri(n, -1.0);
    lo[i] = -1.0;
    hi[i] = 1.0;
    tri[i] = 1.0;
    rows.push_back(lo);
    rhs.push_back(0.0);
    rows.push_back(hi);
    rhs.push_back(0.5);
    rows.push_back(tri);
    rhs.push_back(0.0);
  }
  const std::size_t m = rows.size();
  std::set<std::uint32_t> found;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<double> x;
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (auto r : pick) {
      a.push_back(rows[r]);
      b.push_back(rhs[r]);
    }
    if (solve(a, b, x)) {
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += rows[r][k] * x[k];
        ok = s <= rhs[r] + 1e-9;
      }
      if (ok) {
        std::uint32_t mask = 0;
        for (std::size_t k = 0; k < n; ++k) {
          if (std::abs(x[k] - 0.5) < 1e-9) {
            mask |= std::uint32_t{1} << k;
          } else if (std::abs(x[k]) > 1e-9) {
            throw std::runtime_error("vertex with a coordinate outside {0, 1/2}");
          }
        }
        found.insert(mask);
      }
    }
    // Next n-subset of m in lexicographic order.
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return found;
}

// 2x2 tables with row sums (ra, 1 - ra) and column sums (cb, 1 - cb) are
// p = [[t, ra - t], [cb - t, 1 - ra - cb + t]]. Scans t on a grid of the given
// step (plus both interval ends) for a table majorized by lambda.
inline bool grid_conv_2x2(double ra, double cb, const std::vector<double>& lambda, double step = 1e-3,
                          double slack = 1e-9) {
  const double lo = std::max(0.0, ra + cb - 1.0);
  const double hi = std::min(ra, cb);
  if (lo > hi + 1e-12) return false;
  auto good = [&](double t) {
    std::vector<double> p{t, ra - t, cb - t, 1.0 - ra - cb + t};
    for (auto& v : p) v = std::max(v, 0.0);
    return majorized(p, lambda, slack);
  };
  if (good(lo) || good(hi)) return true;
  for (double t = lo; t <= hi; t += step)
    if (good(t)) return true;
  return false;
}

}  // namespace oracle
