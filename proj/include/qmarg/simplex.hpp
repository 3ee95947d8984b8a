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

// Phase-1 simplex for feasibility of small linear systems over x >= 0.

#include <cstddef>
#include <optional>
#include <vector>

namespace qmarg {

enum class Relation { kEqual, kLessEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<double> coeffs;  // one per variable
  Relation relation;
  double rhs;
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> constraints;

  void add(std::vector<double> coeffs, Relation relation, double rhs) {
    constraints.push_back({std::move(coeffs), relation, rhs});
  }
};

// Largest violation of any constraint (or of x >= 0) at `x`.
double max_violation(const LinearSystem& system, const std::vector<double>& x);

// A point with x >= 0 satisfying every constraint within `tol`, or nothing
// when phase 1 ends with positive infeasibility. Dense tableau with Bland's
// rule for both the entering and the leaving variable, so it terminates.
// Throws ContractViolation on malformed input (wrong row length, non-finite
// coefficients).
std::optional<std::vector<double>> lp_feasible(const LinearSystem& system, double tol = 1e-9);

}  // namespace qmarg
