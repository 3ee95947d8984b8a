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

#include "qmarg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace qmarg {

MeanFieldState::MeanFieldState(std::vector<DensityMatrix> locals) : locals_(std::move(locals)) {
  if (locals_.empty()) throw ContractViolation("mean field state is empty");
  for (const auto& rho : locals_) {
    if (rho.factors() != 1) {
      throw DimensionError("mean field state entries must be single-factor density matrices");
    }
  }
}

QubitMarginVector::QubitMarginVector(std::vector<double> values, const Tolerances& tol)
    : values_(std::move(values)) {
  if (values_.empty()) throw ContractViolation("margin vector is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double& x = values_[i];
    if (!std::isfinite(x) || x < -tol.psd || x > 0.5 + tol.psd) {
      throw ContractViolation("margin " + std::to_string(i) + " = " + std::to_string(x) +
                              " is outside [0, 1/2]");
    }
    x = std::clamp(x, 0.0, 0.5);
  }
}

StandardForm standard_form(const DensityMatrix& qubit) {
  if (qubit.dim() != 2) throw DimensionError("standard_form: expected a qubit density matrix");
  const auto es = eig_hermitian(qubit.matrix());
  return StandardForm{std::clamp(es.values[1], 0.0, 0.5), es.vectors.adjoint()};
}

QubitMarginVector margin_vector(const MeanFieldState& state) {
  std::vector<double> lows;
  lows.reserve(state.size());
  for (const auto& rho : state.locals()) {
    if (rho.dim() != 2) throw DimensionError("margin_vector: every local must be a qubit");
    lows.push_back(eig_hermitian(rho.matrix()).values[1]);
  }
  return QubitMarginVector(std::move(lows));
}

std::vector<double> zero_padded(std::span<const double> p, std::size_t length) {
  std::vector<double> out(p.begin(), p.end());
  if (out.size() < length) out.resize(length, 0.0);
  return out;
}

namespace {

void check_probability_string(std::span<const double> p, const Tolerances& tol, const char* what) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -tol.psd) {
      throw ContractViolation(std::string(what) + ": negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol.trace) {
    throw ContractViolation(std::string(what) + ": entries do not sum to 1");
  }
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Indices that sort `v` decreasingly (stable).
std::vector<std::size_t> desc_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace

bool majorized_by(std::span<const double> p, std::span<const double> q, const Tolerances& tol) {
  check_probability_string(p, tol, "majorization");
  check_probability_string(q, tol, "majorization");
  const std::size_t d = std::max(p.size(), q.size());
  const auto ps = sorted_desc(zero_padded(p, d));
  const auto qs = sorted_desc(zero_padded(q, d));
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    sp += ps[k];
    sq += qs[k];
    if (sp > sq + tol.maj) return false;
  }
  return true;
}

std::vector<double> PermutationCombination::apply(std::span<const double> q) const {
  if (terms.empty()) return {};
  std::vector<double> out(terms.front().perm.size(), 0.0);
  for (const auto& term : terms) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += term.weight * q[term.perm[i]];
  }
  return out;
}

double PermutationCombination::total_weight() const {
  double s = 0.0;
  for (const auto& term : terms) s += term.weight;
  return s;
}

PermutationCombination majorization_decompose(std::span<const double> p,
                                              std::span<const double> q,
                                              const Tolerances& tol) {
  if (!majorized_by(p, q, tol)) {
    throw ContractViolation("majorization_decompose: p is not majorized by q");
  }
  const std::size_t d = std::max(p.size(), q.size());
  const auto pp = zero_padded(p, d);
  const auto qp = zero_padded(q, d);
  const auto p_order = desc_order(pp);
  const auto q_order = desc_order(qp);
  std::vector<double> target(d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) {
    target[i] = pp[p_order[i]];
    x[i] = qp[q_order[i]];
  }

  // Chain of T-transforms x <- t x + (1 - t) x o (j k), each fixing one coordinate.
  struct TTransform {
    double t;
    std::size_t j;
    std::size_t k;
  };
  std::vector<TTransform> chain;
  constexpr double kEps = 1e-14;
  for (std::size_t step = 0; step < d; ++step) {
    std::size_t j = d;
    for (std::size_t i = d; i-- > 0;) {
      if (x[i] > target[i] + kEps) {
        j = i;
        break;
      }
    }
    if (j == d) break;
    std::size_t k = d;
    for (std::size_t i = j + 1; i < d; ++i) {
      if (x[i] < target[i] - kEps) {
        k = i;
        break;
      }
    }
    if (k == d) break;  // only tolerance-level residue left
    const double delta = std::min(x[j] - target[j], target[k] - x[k]);
    const double gap = x[j] - x[k];
    const double t = (x[j] - delta - x[k]) / gap;
    chain.push_back({t, j, k});
    x[j] -= delta;
    x[k] += delta;
  }

  std::map<std::vector<std::size_t>, double> merged;
  {
    std::vector<std::size_t> id(d);
    std::iota(id.begin(), id.end(), 0);
    std::vector<PermutationTerm> terms{{1.0, id}};
    for (const auto& tt : chain) {
      std::vector<PermutationTerm> next;
      next.reserve(terms.size() * 2);
      for (const auto& term : terms) {
        if (tt.t > 0.0) next.push_back({term.weight * tt.t, term.perm});
        if (tt.t < 1.0) {
          auto swapped = term.perm;
          std::swap(swapped[tt.j], swapped[tt.k]);
          next.push_back({term.weight * (1.0 - tt.t), std::move(swapped)});
        }
      }
      terms = std::move(next);
    }
    // Undo the two sorting permutations: final(m) = q_order[sigma[p_rank[m]]].
    std::vector<std::size_t> p_rank(d);
    for (std::size_t i = 0; i < d; ++i) p_rank[p_order[i]] = i;
    for (const auto& term : terms) {
      std::vector<std::size_t> perm(d);
      for (std::size_t m = 0; m < d; ++m) perm[m] = q_order[term.perm[p_rank[m]]];
      merged[perm] += term.weight;
    }
  }

  PermutationCombination out;
  for (auto& [perm, w] : merged) {
    if (w > 0.0) out.terms.push_back({w, perm});
  }
  const auto rebuilt = out.apply(qp);
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(rebuilt[i] - pp[i]) > 1e-9) {
      throw ConstructionError("majorization_decompose: reconstruction residual too large");
    }
  }
  return out;
}

DensityMatrix random_mix_with_spectrum(const Spectrum& lambda, std::span<const double> weights,
                                       SeededStream& stream) {
  check_probability_string(weights, Tolerances{}, "random_mix_with_spectrum weights");
  const std::size_t d = lambda.size();
  ComplexMatrix acc(d);
  for (double w : weights) {
    const auto sample = random_fixed_spectrum(lambda, stream);
    acc += sample.matrix() * Complex(w);
  }
  auto rho = DensityMatrix::by_construction(std::move(acc), {d});
  if (!majorized_by(spectrum(rho).values(), lambda.values())) {
    throw ConstructionError("random_mix_with_spectrum: mixture spectrum escaped the hull");
  }
  return rho;
}

}  // namespace qmarg
