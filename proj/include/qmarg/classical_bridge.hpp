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

// Mixtures of a fixed spectrum's unitary orbit, reduced to bipartite
// probability tables: p with prescribed marginals and p majorized by lambda.

#include <array>
#include <optional>
#include <vector>

#include "qmarg/linalg.hpp"

namespace qmarg {

class JointDistribution {
 public:
  // Row-major table; entries >= -tol.psd (clipped) summing to 1 within tol.trace.
  JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> table,
                    const Tolerances& tol = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return table_[i * cols_ + j]; }
  const std::vector<double>& flat() const { return table_; }
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> table_;
};

struct ConvQuery {
  Spectrum spec_a;
  Spectrum spec_b;
  Spectrum lambda;
};

// How the constraint "p majorized by lambda" enters the linear system.
enum class MajorizationEncoding {
  kAuto,     // subsets up to 10 table cells, lifted beyond
  kSubsets,  // every size-k subset sum <= top-k sum of lambda
  kLifted,   // top-k sum via k t + sum_i u_i with u_i >= x_i - t
};

// A table with row sums spec_a, column sums spec_b and p majorized by lambda
// (lambda zero-padded as needed), or nothing when the linear system is
// infeasible. Rows and columns follow the decreasing order of the spectra.
// Every returned table has been re-checked against all three conditions.
std::optional<JointDistribution> conv_membership(const ConvQuery& q,
                                                 MajorizationEncoding encoding = MajorizationEncoding::kAuto);

// sum_ij p(i,j) |i_A><i_A| (x) |j_B><j_B| over the decreasing eigenbases of
// rho_a and rho_b. Throws ContractViolation when the table's marginals differ
// from the local spectra by more than 1e-8.
DensityMatrix separable_witness(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                const JointDistribution& p);

// p(i,j) = <i_A j_B| rho |i_A j_B> for orthonormal bases given as matrix
// columns. Throws ContractViolation for non-orthonormal bases.
JointDistribution diag_distribution(const DensityMatrix& rho, const ComplexMatrix& basis_a,
                                    const ComplexMatrix& basis_b, const Tolerances& tol = {});

struct TripartiteVerdict {
  // (A,B) against eig(C), (B,C) against eig(A), (C,A) against eig(B).
  std::array<bool, 3> holds;
  std::array<std::optional<JointDistribution>, 3> tables;
};

// Necessary conditions for a pure tripartite state with the given marginals.
TripartiteVerdict tripartite_necessary(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                       const DensityMatrix& rho_c);

}  // namespace qmarg
