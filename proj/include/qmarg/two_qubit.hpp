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

// Fixed-spectrum compatibility for two qubits: the four inequalities on the
// lowest local eigenvalues, the region they cut out, explicit witnesses, and
// the C^2 (x) C^2 (x) C^4 pure-state corollary.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qmarg/linalg.hpp"

namespace qmarg {

class TwoQubitQuery {
 public:
  // lambda_a, lambda_b are lowest local eigenvalues in [0, 1/2]; `lambda` is a
  // length-4 global spectrum.
  TwoQubitQuery(double lambda_a, double lambda_b, Spectrum lambda, const Tolerances& tol = {});

  double lambda_a() const { return la_; }
  double lambda_b() const { return lb_; }
  const Spectrum& lambda() const { return lambda_; }

 private:
  double la_;
  double lb_;
  Spectrum lambda_;
};

enum class TwoQubitInequality {
  kLowerA,      // lambda_a >= l3 + l4
  kLowerB,      // lambda_b >= l3 + l4
  kSum,         // lambda_a + lambda_b >= 2 l4 + l3 + l2
  kDifference,  // |lambda_a - lambda_b| <= min(l1 - l3, l2 - l4)
};

std::string describe(TwoQubitInequality which);

std::vector<TwoQubitInequality> two_qubit_violations(const TwoQubitQuery& q,
                                                     const Tolerances& tol = {});
bool check_two_qubit(const TwoQubitQuery& q, const Tolerances& tol = {});

struct RegionPoint {
  double la;
  double lb;
  friend bool operator==(const RegionPoint&, const RegionPoint&) = default;
};

// Corners of the region on the lambda_a >= lambda_b side of the diagonal.
struct RegionVertices {
  RegionPoint o, a, b, c, d;
};

RegionVertices region_vertices(const Spectrum& lambda);

// O, A, B, C, D followed by the mirror images of C, B, A across the diagonal.
std::vector<RegionPoint> region_polygon(const Spectrum& lambda);

// inf over eta with spectrum lambda of tr(O eta), given the decreasing
// eigenvalues of O: the anti-sorted pairing sum_i lambda_i O_{d+1-i}.
double min_trace_fixed_spectrum(std::span<const double> op_eigs, const Spectrum& lambda);

// 2 min(l1 - l3, l2 - l4)
double sup_F_bound(const Spectrum& lambda);

enum class WitnessFamily { kOCD, kOAB, kOBC };

std::string to_string(WitnessFamily family);

struct WitnessParams {
  WitnessFamily family;
  double alpha;
  double second;  // beta for OCD/OAB, phi for OBC
  bool swapped;    // built for (lambda_b, lambda_a) and conjugated by the qubit swap
  bool case_swap;  // l1 - l3 < l2 - l4
};

// The family's density matrix with spectrum lambda, before any qubit swap.
DensityMatrix assemble_family(WitnessFamily family, double alpha, double second,
                              const Spectrum& lambda);

struct TwoQubitWitness {
  DensityMatrix rho;  // dims {2, 2}
  WitnessParams params;
  double spectrum_residual;
  double marginal_residual;
};

// Throws MembershipError outside the region (beyond 1e-9 slack) and
// ConstructionError if no family reproduces the target within 1e-6.
TwoQubitWitness witness_two_qubit(const TwoQubitQuery& q);

// Lowest eigenvalue of a qubit density matrix.
double lowest_eigenvalue(const DensityMatrix& qubit);

// (rho_a, rho_b, rho_c) on C^2, C^2, C^4.
std::vector<TwoQubitInequality> pure_224_violations(const DensityMatrix& rho_a,
                                                    const DensityMatrix& rho_b,
                                                    const DensityMatrix& rho_c,
                                                    const Tolerances& tol = {});
bool check_pure_224(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                    const DensityMatrix& rho_c, const Tolerances& tol = {});

// Pure state on C^2 (x) C^2 (x) C^4 with the three given marginals (within 1e-7).
PureState witness_pure_224(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                           const DensityMatrix& rho_c);

}  // namespace qmarg
