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

// Seeded sampling, unitary-orbit hill climbing and related helpers shared by
// the verification suites.

#include <cstdint>
#include <variant>
#include <vector>

#include "qmarg/linalg.hpp"

namespace qmarg {

// SplitMix64 used as a counter-based generator: the k-th output (k = 1, 2, ...)
// is mix64(seed + k * 0x9E3779B97F4A7C15), where mix64 is the SplitMix64
// finalizer
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31).
// uniform() = (next_u64() >> 11) * 2^-53.
// normal() consumes two uniforms u1, u2 (Box-Muller, cosine branch):
//   sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  double uniform();
  double normal();
  // (N(0,1) + i N(0,1)) / sqrt(2)
  Complex complex_normal();

  // Independent stream for batch item `index`: seed ^ index, counter reset.
  SeededStream substream(std::uint64_t index) const { return SeededStream(seed_ ^ index); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

PureState random_haar_pure(std::vector<std::size_t> dims, SeededStream& stream);

// Haar unitary: Gram-Schmidt on the columns of a complex Gaussian matrix; the
// resulting R factor has positive diagonal, which fixes the phase freedom.
ComplexMatrix random_haar_unitary(std::size_t dim, SeededStream& stream);

// U diag(lambda) U^dagger with Haar U. `dims` defaults to a single factor.
DensityMatrix random_fixed_spectrum(const Spectrum& lambda, SeededStream& stream,
                                    std::vector<std::size_t> dims = {});

// Uniform on the simplex, sorted decreasing.
Spectrum random_spectrum(std::size_t dim, SeededStream& stream);

// GUE-style Hermitian matrix normalized to unit Frobenius norm.
ComplexMatrix random_hermitian(std::size_t dim, SeededStream& stream);

// exp(i * t * h) for Hermitian h, through the eigendecomposition of h.
ComplexMatrix expi_hermitian(const ComplexMatrix& h, double t);

// Gram-Schmidt re-orthonormalization of the columns.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

// Length of the Bloch vector of a qubit density matrix, equal to 1 - 2 * lowest
// eigenvalue.
double bloch_length(const ComplexMatrix& qubit);

// F[eta] = b - a, with a and b the Bloch lengths of the A and B marginals of a
// two-qubit state.
double polarization_gap(const DensityMatrix& two_qubit);

enum class OrbitDirection { kMinimize, kMaximize };

struct TraceObjective {
  ComplexMatrix op;  // tr(op * eta)
};
struct PolarizationGapObjective {};

struct OrbitProblem {
  std::variant<TraceObjective, PolarizationGapObjective> objective;
  Spectrum lambda;
  OrbitDirection direction = OrbitDirection::kMinimize;
};

struct OrbitSchedule {
  double initial_step = 0.1;
  int rejections_before_halving = 50;
  double min_step = 1e-7;
  int reorthonormalize_every = 100;
  long max_iterations = 10'000;
};

struct OrbitResult {
  double value;
  DensityMatrix eta;
};

double evaluate_objective(const OrbitProblem& problem, const DensityMatrix& eta);

// Random-direction hill climbing on {U diag(lambda) U^dagger}. Each restart r
// draws from stream.substream(r) and starts at a Haar-random point; the best
// value over all restarts is returned (ties go to the lower restart index).
// Optimality is not guaranteed.
OrbitResult orbit_optimize(const OrbitProblem& problem, int restarts, const SeededStream& stream,
                           const OrbitSchedule& schedule = {});

}  // namespace qmarg
