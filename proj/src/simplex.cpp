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

#include "qmarg/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmarg/errors.hpp"

namespace qmarg {

double max_violation(const LinearSystem& system, const std::vector<double>& x) {
  double worst = 0.0;
  for (double xi : x) worst = std::max(worst, -xi);
  for (const auto& c : system.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < system.num_vars; ++j) lhs += c.coeffs[j] * x[j];
    const double diff = lhs - c.rhs;
    switch (c.relation) {
      case Relation::kEqual: worst = std::max(worst, std::abs(diff)); break;
      case Relation::kLessEqual: worst = std::max(worst, diff); break;
      case Relation::kGreaterEqual: worst = std::max(worst, -diff); break;
    }
  }
  return worst;
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * (cols + 1)) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return a_[r * (cols_ + 1) + cols_]; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<double>& cost) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) a_[pr * (cols_ + 1) + c] *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) a_[r * (cols_ + 1) + c] -= f * a_[pr * (cols_ + 1) + c];
      at(r, pc) = 0.0;
    }
    const double f = cost[pc];
    if (f != 0.0) {
      for (std::size_t c = 0; c <= cols_; ++c) cost[c] -= f * a_[pr * (cols_ + 1) + c];
      cost[pc] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
};

}  // namespace

std::optional<std::vector<double>> lp_feasible(const LinearSystem& system, double tol) {
  const std::size_t n = system.num_vars;
  const std::size_t m = system.constraints.size();
  for (const auto& c : system.constraints) {
    if (c.coeffs.size() != n) {
      throw ContractViolation("lp_feasible: constraint has " + std::to_string(c.coeffs.size()) +
                              " coefficients for " + std::to_string(n) + " variables");
    }
    if (!std::isfinite(c.rhs) ||
        !std::all_of(c.coeffs.begin(), c.coeffs.end(), [](double v) { return std::isfinite(v); })) {
      throw ContractViolation("lp_feasible: non-finite coefficient");
    }
  }
  if (m == 0) return std::vector<double>(n, 0.0);

  // Normalize to nonnegative right-hand sides.
  std::vector<Relation> rel(m);
  std::vector<double> sign(m, 1.0);
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = system.constraints[i].relation;
    if (system.constraints[i].rhs < 0.0) {
      sign[i] = -1.0;
      if (rel[i] == Relation::kLessEqual) {
        rel[i] = Relation::kGreaterEqual;
      } else if (rel[i] == Relation::kGreaterEqual) {
        rel[i] = Relation::kLessEqual;
      }
    }
    if (rel[i] != Relation::kEqual) ++slacks;
    if (rel[i] != Relation::kLessEqual) ++artificials;
  }

  const std::size_t cols = n + slacks + artificials;
  const std::size_t first_art = n + slacks;
  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::vector<double> cost(cols + 1, 0.0);  // reduced costs; last entry is -objective
  std::size_t next_slack = n;
  std::size_t next_art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = system.constraints[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign[i] * c.coeffs[j];
    t.rhs(i) = sign[i] * c.rhs;
    if (rel[i] == Relation::kLessEqual) {
      t.at(i, next_slack) = 1.0;
      basis[i] = next_slack++;
    } else {
      if (rel[i] == Relation::kGreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      basis[i] = next_art++;
      for (std::size_t j = 0; j < first_art; ++j) cost[j] -= t.at(i, j);
      cost[cols] -= t.rhs(i);
    }
  }

  const std::size_t max_pivots = 50 * (m + cols);
  for (std::size_t pivots = 0;; ++pivots) {
    if (pivots == max_pivots) throw ConstructionError("lp_feasible: pivot limit reached");
    // Artificial columns never re-enter.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (cost[j] < -kCostEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = t.rhs(i) / a;
      if (leave == m || ratio < best_ratio - 1e-14 ||
          (ratio <= best_ratio + 1e-14 && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      // Cannot happen for a phase-1 objective bounded below by zero.
      throw ContractViolation("lp_feasible: unbounded phase 1");
    }
    t.pivot(leave, enter, cost);
    basis[leave] = enter;
  }

  double infeasibility = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= first_art) infeasibility += std::max(t.rhs(i), 0.0);
  }
  if (infeasibility > tol) return std::nullopt;

  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = std::max(t.rhs(i), 0.0);
  }
  if (const double v = max_violation(system, x); v > tol) {
    throw ConstructionError("lp_feasible: phase-1 point violates a constraint by " +
                            std::to_string(v));
  }
  return x;
}

}  // namespace qmarg
