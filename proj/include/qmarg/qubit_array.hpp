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

// Pure-state compatibility for n-qubit mean field states: the polygon
// inequalities on lowest local eigenvalues, the vertex set of their solution
// polytope, and witnesses built from even pure states.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qmarg/linalg.hpp"
#include "qmarg/spectra.hpp"

namespace qmarg {

// Qubit i of an n-qubit computational basis string x corresponds to bit
// (n - 1 - i) of the state-vector index, i.e. qubit 0 is written leftmost.
using BasisIndex = std::uint64_t;

inline constexpr std::size_t kMaxQubitsEnumerate = 20;
inline constexpr std::size_t kMaxQubitsDecompose = 16;

// Indices i with lambda_i > sum_{j != i} lambda_j + tol.maj.
std::vector<std::size_t> qubit_violations(const QubitMarginVector& margins,
                                          const Tolerances& tol = {});

// lambda_i <= sum_{j != i} lambda_j for every i.
bool check_pure_compat_qubits(const QubitMarginVector& margins, const Tolerances& tol = {});

// Cube vertex with coordinates in {0, 1/2} that does not have exactly one 1/2.
class VStarVertex {
 public:
  // Bit i of `half_mask` set means coordinate i is 1/2. Throws
  // ContractViolation for single-1/2 masks or n out of range.
  VStarVertex(std::size_t n, std::uint32_t half_mask);

  std::size_t n() const { return n_; }
  std::uint32_t half_mask() const { return mask_; }
  bool is_half(std::size_t i) const { return (mask_ >> i) & 1U; }
  std::vector<double> coordinates() const;

  friend bool operator==(const VStarVertex&, const VStarVertex&) = default;
  friend auto operator<=>(const VStarVertex&, const VStarVertex&) = default;

 private:
  std::size_t n_;
  std::uint32_t mask_;
};

// All 2^n - n vertices, ordered by mask.
std::vector<VStarVertex> enumerate_vstar(std::size_t n);

struct VertexTerm {
  double weight;
  VStarVertex vertex;
};

struct VertexCombination {
  std::vector<VertexTerm> terms;
  std::vector<double> point() const;
};

// Convex weights over V* reproducing the margins, found by phase-1 simplex.
// Inputs violating the inequalities by at most 1e-9 are pulled onto the
// boundary first; larger violations throw MembershipError.
VertexCombination decompose_into_vstar(const QubitMarginVector& margins,
                                       const Tolerances& tol = {});

// State supported on even-weight basis strings.
class EpsAmplitudes {
 public:
  // Throws ContractViolation on odd-weight support or a norm off by tol.trace.
  EpsAmplitudes(std::size_t n, std::map<BasisIndex, Complex> amps, const Tolerances& tol = {});

  std::size_t n() const { return n_; }
  const std::map<BasisIndex, Complex>& amps() const { return amps_; }

  PureState to_pure_state() const;

 private:
  std::size_t n_;
  std::map<BasisIndex, Complex> amps_;
};

// Bit string with qubit 0 leftmost, e.g. "0110".
std::string basis_string(BasisIndex x, std::size_t n);
BasisIndex parse_basis_string(const std::string& bits);

// Uniform superposition of the even-weight strings supported on the 1/2
// positions of v (|0...0> when there are none).
EpsAmplitudes vertex_eps(const VStarVertex& v);

struct WeightedEps {
  double weight;
  EpsAmplitudes state;
};

// c_x = sqrt(sum_a w_a |c_{x,a}|^2). Phases are discarded.
EpsAmplitudes mix_eps(const std::vector<WeightedEps>& states);

// Diagonal marginals of an EPS. `ones[i]` is <1|rho_i|1>; when it exceeds
// 1/2 the state breaks the <0|rho|0> >= <1|rho|1> convention for qubit i and
// `breach[i]` is set. `ones` is then not a lowest eigenvalue.
struct EpsMarginals {
  std::vector<double> ones;
  std::vector<bool> breach;

  bool standard() const;
  // Throws ContractViolation when any qubit breaches the convention.
  QubitMarginVector margins() const;
};

EpsMarginals eps_marginals(const EpsAmplitudes& eps);

// n-qubit pure state whose i-th marginal has lowest eigenvalue margins[i].
// With `standard_form_unitaries` (the U_i of standard_form for each target
// local) the marginals equal the original U_i^dagger diag(1-l, l) U_i.
PureState witness_pure_qubits(
    const QubitMarginVector& margins,
    const std::optional<std::vector<ComplexMatrix>>& standard_form_unitaries = std::nullopt,
    const Tolerances& tol = {});

// Witness for a full qubit mean field state.
PureState witness_pure_qubits(const MeanFieldState& state, const Tolerances& tol = {});

}  // namespace qmarg
