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

#include "qmarg/classical_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmarg/simplex.hpp"
#include "qmarg/spectra.hpp"

namespace qmarg {

JointDistribution::JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> table,
                                     const Tolerances& tol)
    : rows_(rows), cols_(cols), table_(std::move(table)) {
  if (rows == 0 || cols == 0 || table_.size() != rows * cols) {
    throw DimensionError("joint distribution: table shape mismatch");
  }
  double sum = 0.0;
  for (double& x : table_) {
    if (!std::isfinite(x) || x < -tol.psd) throw ContractViolation("joint distribution: negative entry");
    x = std::max(x, 0.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol.trace) throw ContractViolation("joint distribution: sum is not 1");
}

std::vector<double> JointDistribution::row_sums() const {
  std::vector<double> s(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
  }
  return s;
}

std::vector<double> JointDistribution::col_sums() const {
  std::vector<double> s(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
  }
  return s;
}

namespace {

constexpr std::size_t kMaxSubsetCells = 10;
constexpr double kMarginalTolerance = 1e-8;

void add_subset_rows(LinearSystem& lp, std::size_t cells, const std::vector<double>& top) {
  for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << cells); ++mask) {
    std::vector<double> row(lp.num_vars, 0.0);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      if ((mask >> c) & 1U) {
        row[c] = 1.0;
        ++k;
      }
    }
    lp.add(std::move(row), Relation::kLessEqual, top[k - 1]);
  }
}

void add_lifted_rows(LinearSystem& lp, std::size_t cells, const std::vector<double>& top) {
  // Per k: one t_k and `cells` u_{k,i}, appended after the table variables.
  const std::size_t per_k = cells + 1;
  lp.num_vars = cells + (cells - 1) * per_k;
  for (auto& c : lp.constraints) c.coeffs.resize(lp.num_vars, 0.0);
  for (std::size_t k = 1; k < cells; ++k) {
    const std::size_t t_var = cells + (k - 1) * per_k;
    std::vector<double> budget(lp.num_vars, 0.0);
    budget[t_var] = static_cast<double>(k);
    for (std::size_t i = 0; i < cells; ++i) {
      const std::size_t u_var = t_var + 1 + i;
      budget[u_var] = 1.0;
      std::vector<double> row(lp.num_vars, 0.0);
      row[i] = 1.0;
      row[t_var] = -1.0;
      row[u_var] = -1.0;
      lp.add(std::move(row), Relation::kLessEqual, 0.0);
    }
    lp.add(std::move(budget), Relation::kLessEqual, top[k - 1]);
  }
}

}  // namespace

std::optional<JointDistribution> conv_membership(const ConvQuery& q, MajorizationEncoding encoding) {
  const std::size_t da = q.spec_a.size();
  const std::size_t db = q.spec_b.size();
  const std::size_t cells = da * db;
  const std::size_t len = std::max(cells, q.lambda.size());
  const auto lam = zero_padded(q.lambda.values(), len);
  std::vector<double> top(len);
  std::partial_sum(lam.begin(), lam.end(), top.begin());
  // The k = cells constraint involves no free choice: all mass must fit.
  if (top[cells - 1] < 1.0 - Tolerances{}.maj) return std::nullopt;

  LinearSystem lp;
  lp.num_vars = cells;
  for (std::size_t i = 0; i < da; ++i) {
    std::vector<double> row(cells, 0.0);
    for (std::size_t j = 0; j < db; ++j) row[i * db + j] = 1.0;
    lp.add(std::move(row), Relation::kEqual, q.spec_a[i]);
  }
  for (std::size_t j = 0; j < db; ++j) {
    std::vector<double> row(cells, 0.0);
    for (std::size_t i = 0; i < da; ++i) row[i * db + j] = 1.0;
    lp.add(std::move(row), Relation::kEqual, q.spec_b[j]);
  }
  if (encoding == MajorizationEncoding::kAuto) {
    encoding = cells <= kMaxSubsetCells ? MajorizationEncoding::kSubsets : MajorizationEncoding::kLifted;
  }
  if (encoding == MajorizationEncoding::kSubsets) {
    if (cells > 20) throw DimensionError("conv_membership: too many cells for subset enumeration");
    add_subset_rows(lp, cells, top);
  } else {
    add_lifted_rows(lp, cells, top);
  }

  const auto x = lp_feasible(lp);
  if (!x) return std::nullopt;
  std::vector<double> table(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(cells));
  const double total = std::accumulate(table.begin(), table.end(), 0.0);
  for (double& v : table) v /= total;
  JointDistribution p(da, db, std::move(table));

  const auto rows = p.row_sums();
  const auto cols = p.col_sums();
  for (std::size_t i = 0; i < da; ++i) {
    if (std::abs(rows[i] - q.spec_a[i]) > kMarginalTolerance) {
      throw ConstructionError("conv_membership: row marginal check failed");
    }
  }
  for (std::size_t j = 0; j < db; ++j) {
    if (std::abs(cols[j] - q.spec_b[j]) > kMarginalTolerance) {
      throw ConstructionError("conv_membership: column marginal check failed");
    }
  }
  Tolerances loose;
  loose.maj = 1e-9;
  if (!majorized_by(p.flat(), q.lambda.values(), loose)) {
    throw ConstructionError("conv_membership: majorization check failed");
  }
  return p;
}

DensityMatrix separable_witness(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                const JointDistribution& p) {
  if (p.rows() != rho_a.dim() || p.cols() != rho_b.dim()) {
    throw DimensionError("separable_witness: table shape does not match local dimensions");
  }
  const auto ea = eig_hermitian(rho_a.matrix());
  const auto eb = eig_hermitian(rho_b.matrix());
  const auto rows = p.row_sums();
  const auto cols = p.col_sums();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (std::abs(rows[i] - ea.values[i]) > kMarginalTolerance) {
      throw ContractViolation("separable_witness: row sums differ from the spectrum of rho_a");
    }
  }
  for (std::size_t j = 0; j < p.cols(); ++j) {
    if (std::abs(cols[j] - eb.values[j]) > kMarginalTolerance) {
      throw ContractViolation("separable_witness: column sums differ from the spectrum of rho_b");
    }
  }
  const std::size_t dim = p.rows() * p.cols();
  ComplexMatrix rho(dim);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto pa = ComplexMatrix::projector(ea.vectors.column(i));
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j) == 0.0) continue;
      const auto pb = ComplexMatrix::projector(eb.vectors.column(j));
      rho += kron(pa, pb) * Complex(p(i, j));
    }
  }
  return DensityMatrix::by_construction(std::move(rho), {p.rows(), p.cols()});
}

JointDistribution diag_distribution(const DensityMatrix& rho, const ComplexMatrix& basis_a,
                                    const ComplexMatrix& basis_b, const Tolerances& tol) {
  const std::size_t da = basis_a.dim();
  const std::size_t db = basis_b.dim();
  if (da * db != rho.dim()) throw DimensionError("diag_distribution: basis dimensions");
  if (orthonormality_defect(basis_a) > tol.orth || orthonormality_defect(basis_b) > tol.orth) {
    throw ContractViolation("diag_distribution: basis is not orthonormal");
  }
  std::vector<double> table(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      const auto v = kron(basis_a.column(i), basis_b.column(j));
      const auto rv = rho.matrix() * std::span<const Complex>(v);
      Complex acc = 0.0;
      for (std::size_t k = 0; k < v.size(); ++k) acc += std::conj(v[k]) * rv[k];
      table[i * db + j] = acc.real();
    }
  }
  return JointDistribution(da, db, std::move(table), tol);
}

TripartiteVerdict tripartite_necessary(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                       const DensityMatrix& rho_c) {
  for (const auto* r : {&rho_a, &rho_b, &rho_c}) {
    if (r->factors() != 1) {
      throw DimensionError("tripartite_necessary: locals must be single-factor density matrices");
    }
  }
  const std::array<Spectrum, 3> s{spectrum(rho_a), spectrum(rho_b), spectrum(rho_c)};
  TripartiteVerdict out{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& x = s[k];
    const auto& y = s[(k + 1) % 3];
    const auto& z = s[(k + 2) % 3];
    out.tables[k] = conv_membership(ConvQuery{x, y, z});
    out.holds[k] = out.tables[k].has_value();
  }
  return out;
}

}  // namespace qmarg
