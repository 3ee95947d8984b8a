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

// Mean field states, lowest-eigenvalue bookkeeping and majorization.

#include <span>
#include <vector>

#include "qmarg/linalg.hpp"
#include "qmarg/numerics.hpp"

namespace qmarg {

// Ordered collection of single-party density matrices.
class MeanFieldState {
 public:
  explicit MeanFieldState(std::vector<DensityMatrix> locals);

  const std::vector<DensityMatrix>& locals() const { return locals_; }
  std::size_t size() const { return locals_.size(); }
  const DensityMatrix& operator[](std::size_t i) const { return locals_[i]; }

 private:
  std::vector<DensityMatrix> locals_;
};

// Lowest local eigenvalues of an n-qubit mean field state, each in [0, 1/2].
class QubitMarginVector {
 public:
  // Entries within tol.psd outside [0, 1/2] are clamped; others throw
  // ContractViolation.
  explicit QubitMarginVector(std::vector<double> values, const Tolerances& tol = {});

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

// rho = U^dagger diag(1 - lowest, lowest) U
struct StandardForm {
  double lowest;
  ComplexMatrix unitary;  // U rho U^dagger = diag(1 - lowest, lowest)
};

StandardForm standard_form(const DensityMatrix& qubit);

QubitMarginVector margin_vector(const MeanFieldState& state);

// `p` with zeros appended up to `length`.
std::vector<double> zero_padded(std::span<const double> p, std::size_t length);

// True iff p is majorized by q: every top-k partial sum of sorted p is at most
// the matching one of sorted q, with slack tol.maj. The shorter string is
// zero-padded. Throws ContractViolation on negative entries or when either
// string does not sum to one.
bool majorized_by(std::span<const double> p, std::span<const double> q, const Tolerances& tol = {});

struct PermutationTerm {
  double weight;
  std::vector<std::size_t> perm;  // result_i = q[perm[i]]
};

struct PermutationCombination {
  std::vector<PermutationTerm> terms;

  // sum_sigma t_sigma * q o sigma
  std::vector<double> apply(std::span<const double> q) const;
  double total_weight() const;
};

// Convex combination of permutations with p_i = sum t_sigma q_{sigma(i)}, over
// the common zero-padded length. Built from a chain of at most d - 1
// T-transforms on the sorted strings, expanded and merged by permutation.
// Throws ContractViolation unless p is majorized by q.
PermutationCombination majorization_decompose(std::span<const double> p,
                                              std::span<const double> q,
                                              const Tolerances& tol = {});

// sum_a w_a U_a diag(lambda) U_a^dagger with Haar U_a; one unitary per weight.
DensityMatrix random_mix_with_spectrum(const Spectrum& lambda, std::span<const double> weights,
                                       SeededStream& stream);

}  // namespace qmarg
