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

#include "qmarg/qubit_array.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qmarg/simplex.hpp"

namespace qmarg {

namespace {

constexpr double kBoundarySlack = 1e-9;

BasisIndex qubit_bit(std::size_t qubit, std::size_t n) { return BasisIndex{1} << (n - 1 - qubit); }

}  // namespace

std::vector<std::size_t> qubit_violations(const QubitMarginVector& margins, const Tolerances& tol) {
  const double total = std::accumulate(margins.values().begin(), margins.values().end(), 0.0);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (margins[i] > (total - margins[i]) + tol.maj) bad.push_back(i);
  }
  return bad;
}

bool check_pure_compat_qubits(const QubitMarginVector& margins, const Tolerances& tol) {
  return qubit_violations(margins, tol).empty();
}

VStarVertex::VStarVertex(std::size_t n, std::uint32_t half_mask) : n_(n), mask_(half_mask) {
  if (n < 1 || n > kMaxQubitsEnumerate) throw ContractViolation("V* vertex: n out of range");
  if (n < 32 && (half_mask >> n) != 0) throw ContractViolation("V* vertex: mask exceeds n bits");
  if (std::popcount(half_mask) == 1) {
    throw ContractViolation("V* vertex: exactly one 1/2 coordinate violates the inequalities");
  }
}

std::vector<double> VStarVertex::coordinates() const {
  std::vector<double> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = is_half(i) ? 0.5 : 0.0;
  return c;
}

std::vector<VStarVertex> enumerate_vstar(std::size_t n) {
  if (n < 2 || n > kMaxQubitsEnumerate) {
    throw ContractViolation("enumerate_vstar: n must lie in [2, 20]");
  }
  std::vector<VStarVertex> out;
  out.reserve((std::size_t{1} << n) - n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) != 1) out.emplace_back(n, mask);
  }
  return out;
}

std::vector<double> VertexCombination::point() const {
  if (terms.empty()) return {};
  std::vector<double> p(terms.front().vertex.n(), 0.0);
  for (const auto& term : terms) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (term.vertex.is_half(i)) p[i] += 0.5 * term.weight;
    }
  }
  return p;
}

VertexCombination decompose_into_vstar(const QubitMarginVector& margins, const Tolerances& tol) {
  const std::size_t n = margins.size();
  if (n < 2 || n > kMaxQubitsDecompose) {
    throw ContractViolation("decompose_into_vstar: n must lie in [2, 16]");
  }
  std::vector<double> lam = margins.values();
  const double total = std::accumulate(lam.begin(), lam.end(), 0.0);
  const double slack = std::max(kBoundarySlack, tol.maj);
  for (std::size_t i = 0; i < n; ++i) {
    const double rest = total - lam[i];
    if (lam[i] > rest + slack) {
      throw MembershipError("margin vector violates inequality " + std::to_string(i) + " by " +
                            std::to_string(lam[i] - rest));
    }
    if (lam[i] > rest) lam[i] = rest;
  }

  const auto vertices = enumerate_vstar(n);
  LinearSystem lp;
  lp.num_vars = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) row[v] = vertices[v].is_half(i) ? 0.5 : 0.0;
    lp.add(std::move(row), Relation::kEqual, lam[i]);
  }
  lp.add(std::vector<double>(vertices.size(), 1.0), Relation::kEqual, 1.0);

  const auto w = lp_feasible(lp, 1e-10);
  if (!w) throw MembershipError("decompose_into_vstar: margin vector is outside Conv(V*)");

  VertexCombination out;
  double sum = 0.0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if ((*w)[v] > 0.0) {
      out.terms.push_back({(*w)[v], vertices[v]});
      sum += (*w)[v];
    }
  }
  for (auto& term : out.terms) term.weight /= sum;
  const auto p = out.point();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(p[i] - margins[i]) > 1e-9) {
      throw ConstructionError("decompose_into_vstar: reconstruction residual too large");
    }
  }
  return out;
}

EpsAmplitudes::EpsAmplitudes(std::size_t n, std::map<BasisIndex, Complex> amps,
                             const Tolerances& tol)
    : n_(n), amps_(std::move(amps)) {
  if (n < 1 || n > 63) throw ContractViolation("EPS: qubit count out of range");
  double norm2 = 0.0;
  for (const auto& [x, c] : amps_) {
    if ((x >> n) != 0) throw ContractViolation("EPS: basis string longer than n");
    if (std::popcount(x) % 2 != 0) {
      throw ContractViolation("EPS: amplitude on odd-weight string " + basis_string(x, n));
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > tol.trace) throw ContractViolation("EPS: amplitudes not normalized");
}

PureState EpsAmplitudes::to_pure_state() const {
  if (n_ > kMaxQubitsDecompose) throw DimensionError("EPS: too many qubits for a dense state");
  std::vector<Complex> v(std::size_t{1} << n_);
  for (const auto& [x, c] : amps_) v[x] = c;
  return PureState::normalized(std::move(v), std::vector<std::size_t>(n_, 2));
}

std::string basis_string(BasisIndex x, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if (x & qubit_bit(i, n)) s[i] = '1';
  }
  return s;
}

BasisIndex parse_basis_string(const std::string& bits) {
  if (bits.empty() || bits.size() > 63) throw ContractViolation("basis string length");
  BasisIndex x = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ContractViolation("basis string must contain only 0 and 1");
    x = (x << 1) | static_cast<BasisIndex>(ch == '1');
  }
  return x;
}

EpsAmplitudes vertex_eps(const VStarVertex& v) {
  const std::size_t n = v.n();
  std::vector<BasisIndex> positions;
  for (std::size_t i = 0; i < n; ++i) {
    if (v.is_half(i)) positions.push_back(qubit_bit(i, n));
  }
  std::map<BasisIndex, Complex> amps;
  if (positions.empty()) {
    amps[0] = 1.0;
    return EpsAmplitudes(n, std::move(amps));
  }
  const std::size_t k = positions.size();
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(k - 1));
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << k); ++sub) {
    if (std::popcount(sub) % 2 != 0) continue;
    BasisIndex x = 0;
    for (std::size_t b = 0; b < k; ++b) {
      if ((sub >> b) & 1U) x |= positions[b];
    }
    amps[x] = amp;
  }
  return EpsAmplitudes(n, std::move(amps));
}

EpsAmplitudes mix_eps(const std::vector<WeightedEps>& states) {
  if (states.empty()) throw ContractViolation("mix_eps: no states");
  const std::size_t n = states.front().state.n();
  double total = 0.0;
  std::map<BasisIndex, double> weight2;
  for (const auto& [w, eps] : states) {
    if (eps.n() != n) throw DimensionError("mix_eps: states on different qubit counts");
    if (!(w >= 0.0)) throw ContractViolation("mix_eps: negative weight");
    total += w;
    for (const auto& [x, c] : eps.amps()) weight2[x] += w * std::norm(c);
  }
  if (std::abs(total - 1.0) > Tolerances{}.trace) {
    throw ContractViolation("mix_eps: weights do not sum to 1");
  }
  std::map<BasisIndex, Complex> amps;
  for (const auto& [x, p] : weight2) {
    if (p > 0.0) amps.emplace(x, std::sqrt(p / total));
  }
  return EpsAmplitudes(n, std::move(amps));
}

bool EpsMarginals::standard() const {
  return std::none_of(breach.begin(), breach.end(), [](bool b) { return b; });
}

QubitMarginVector EpsMarginals::margins() const {
  if (!standard()) throw ContractViolation("EPS marginals break the lowest-eigenvalue convention");
  return QubitMarginVector(ones);
}

EpsMarginals eps_marginals(const EpsAmplitudes& eps) {
  const std::size_t n = eps.n();
  EpsMarginals out{std::vector<double>(n, 0.0), std::vector<bool>(n, false)};
  double total = 0.0;
  for (const auto& [x, c] : eps.amps()) {
    const double p = std::norm(c);
    total += p;
    for (std::size_t i = 0; i < n; ++i) {
      if (x & qubit_bit(i, n)) out.ones[i] += p;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.breach[i] = out.ones[i] > (total - out.ones[i]) + 1e-12;
  return out;
}

PureState witness_pure_qubits(const QubitMarginVector& margins,
                              const std::optional<std::vector<ComplexMatrix>>& standard_form_unitaries,
                              const Tolerances& tol) {
  const std::size_t n = margins.size();
  if (standard_form_unitaries && standard_form_unitaries->size() != n) {
    throw DimensionError("witness_pure_qubits: one unitary per qubit required");
  }
  const auto combo = decompose_into_vstar(margins, tol);
  std::vector<WeightedEps> parts;
  parts.reserve(combo.terms.size());
  for (const auto& term : combo.terms) parts.push_back({term.weight, vertex_eps(term.vertex)});
  auto psi = mix_eps(parts).to_pure_state();
  if (standard_form_unitaries) {
    for (std::size_t i = 0; i < n; ++i) {
      psi = apply_local(psi, i, (*standard_form_unitaries)[i].adjoint());
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto local = partial_trace(psi, {i});
    const double lowest = eig_hermitian(local.matrix()).values[1];
    if (std::abs(lowest - margins[i]) > 1e-8) {
      throw ConstructionError("witness_pure_qubits: qubit " + std::to_string(i) +
                              " marginal residual " + std::to_string(std::abs(lowest - margins[i])));
    }
    if (standard_form_unitaries) {
      const auto& u = (*standard_form_unitaries)[i];
      const std::vector<double> diag{1.0 - margins[i], margins[i]};
      const auto target = u.adjoint() * ComplexMatrix::diagonal(diag) * u;
      if (max_abs_diff(local.matrix(), target) > 1e-8) {
        throw ConstructionError("witness_pure_qubits: qubit " + std::to_string(i) +
                                " marginal does not match its target");
      }
    }
  }
  return psi;
}

PureState witness_pure_qubits(const MeanFieldState& state, const Tolerances& tol) {
  std::vector<double> lows;
  std::vector<ComplexMatrix> unitaries;
  for (const auto& rho : state.locals()) {
    auto sf = standard_form(rho);
    lows.push_back(sf.lowest);
    unitaries.push_back(std::move(sf.unitary));
  }
  return witness_pure_qubits(QubitMarginVector(std::move(lows), tol), unitaries, tol);
}

}  // namespace qmarg
