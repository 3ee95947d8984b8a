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

#include "qmarg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace qmarg {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SeededStream::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double SeededStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SeededStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Both Box-Muller outputs, each with variance 1/2.
Complex SeededStream::complex_normal() {
  const double r = std::sqrt(-std::log(1.0 - uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, theta);
}

PureState random_haar_pure(std::vector<std::size_t> dims, SeededStream& stream) {
  std::vector<Complex> amps(dims_product(dims));
  for (auto& z : amps) z = stream.complex_normal();
  return PureState::normalized(std::move(amps), std::move(dims));
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix q = m;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(q(i, j));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= inv;
  }
  return q;
}

ComplexMatrix random_haar_unitary(std::size_t dim, SeededStream& stream) {
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = stream.complex_normal();
  }
  return orthonormalize_columns(g);
}

DensityMatrix random_fixed_spectrum(const Spectrum& lambda, SeededStream& stream,
                                    std::vector<std::size_t> dims) {
  const std::size_t d = lambda.size();
  if (dims.empty()) dims = {d};
  if (dims_product(dims) != d) throw DimensionError("random_fixed_spectrum: dims mismatch");
  const auto u = random_haar_unitary(d, stream);
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += u(i, k) * lambda[k] * std::conj(u(j, k));
      m(i, j) = acc;
    }
  }
  return DensityMatrix::by_construction(std::move(m), std::move(dims));
}

Spectrum random_spectrum(std::size_t dim, SeededStream& stream) {
  std::vector<double> w(dim);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - stream.uniform());
    total += x;
  }
  for (auto& x : w) x /= total;
  return Spectrum::from_unsorted(std::move(w));
}

ComplexMatrix random_hermitian(std::size_t dim, SeededStream& stream) {
  ComplexMatrix h(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    h(i, i) = stream.normal();
    for (std::size_t j = i + 1; j < dim; ++j) {
      h(i, j) = stream.complex_normal();
      h(j, i) = std::conj(h(i, j));
    }
  }
  double norm2 = 0.0;
  for (const auto& z : h.entries()) norm2 += std::norm(z);
  return h * Complex(1.0 / std::sqrt(norm2));
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h, double t) {
  const std::size_t d = h.dim();
  double frob = 0.0;
  for (const auto& z : h.entries()) frob += std::norm(z);
  frob = std::sqrt(frob) * std::abs(t);
  if (frob <= 0.5) {
    // Power series; the k-th term is bounded by frob^k / k!.
    if (hermiticity_defect(h) > Tolerances{}.herm) {
      throw ContractViolation("expi_hermitian: matrix is not Hermitian");
    }
    const ComplexMatrix step = h * Complex(0.0, t);
    ComplexMatrix term = ComplexMatrix::identity(d);
    ComplexMatrix sum = term;
    double bound = 1.0;
    for (int k = 1; k < 30 && bound > 1e-18; ++k) {
      term = term * step;
      term *= Complex(1.0 / k);
      sum += term;
      bound *= frob / k;
    }
    return sum;
  }
  const auto es = eig_hermitian(h);
  const std::size_t n = h.dim();
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, t * es.values[k]);
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += es.vectors(i, k) * phases[k] * std::conj(es.vectors(j, k));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

double bloch_length(const ComplexMatrix& qubit) {
  if (qubit.dim() != 2) throw DimensionError("bloch_length: expected a 2x2 matrix");
  const double z = qubit(0, 0).real() - qubit(1, 1).real();
  return std::sqrt(z * z + 4.0 * std::norm(qubit(0, 1)));
}

namespace {

// Marginals of a 4x4 matrix in the |ab> basis, without validation.
void two_qubit_marginals(const ComplexMatrix& m, ComplexMatrix& a, ComplexMatrix& b) {
  a = ComplexMatrix(2);
  b = ComplexMatrix(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        a(i, j) += m(2 * i + k, 2 * j + k);
        b(i, j) += m(2 * k + i, 2 * k + j);
      }
    }
  }
}

double gap_of(const ComplexMatrix& m) {
  ComplexMatrix a, b;
  two_qubit_marginals(m, a, b);
  return bloch_length(b) - bloch_length(a);
}

double raw_objective(const OrbitProblem& problem, const ComplexMatrix& eta) {
  if (const auto* tr = std::get_if<TraceObjective>(&problem.objective)) {
    const std::size_t d = eta.dim();
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) acc += (tr->op(i, j) * eta(j, i)).real();
    }
    return acc;
  }
  return gap_of(eta);
}

void orbit_point(const ComplexMatrix& u, const Spectrum& lambda, ComplexMatrix& eta) {
  const std::size_t d = u.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += u(i, k) * lambda[k] * std::conj(u(j, k));
      eta(i, j) = acc;
      eta(j, i) = std::conj(acc);
    }
  }
}

ComplexMatrix orbit_point(const ComplexMatrix& u, const Spectrum& lambda) {
  ComplexMatrix eta(u.dim());
  orbit_point(u, lambda, eta);
  return eta;
}

// next = c h term, out += next. Row-major d x d arrays.
template <std::size_t D>
void series_term(const Complex* h, const Complex* term, Complex* next, Complex* out, Complex c,
                 std::size_t d = D) {
  const std::size_t n = D == 0 ? d : D;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t m = 0; m < n; ++m) acc += h[i * n + m] * term[m * n + j];
      next[i * n + j] = c * acc;
      out[i * n + j] += next[i * n + j];
    }
  }
}

// out = e^{ith} u. For small arguments the power series is applied to u
// directly, reusing the scratch matrices `term` and `next`.
void rotate(const ComplexMatrix& h, double t, const ComplexMatrix& u, ComplexMatrix& out,
            ComplexMatrix& term, ComplexMatrix& next) {
  const std::size_t d = h.dim();
  double frob = 0.0;
  for (const auto& z : h.entries()) frob += std::norm(z);
  frob = std::sqrt(frob) * std::abs(t);
  if (frob > 0.5) {
    out = expi_hermitian(h, t) * u;
    return;
  }
  out = u;
  term = u;
  const Complex* hp = h.entries().data();
  double bound = 1.0;
  for (int k = 1; k < 30 && bound > 1e-18; ++k) {
    const Complex c(0.0, t / k);
    if (d == 4) {
      series_term<4>(hp, &term(0, 0), &next(0, 0), &out(0, 0), c);
    } else {
      series_term<0>(hp, &term(0, 0), &next(0, 0), &out(0, 0), c, d);
    }
    std::swap(term, next);
    bound *= frob / k;
  }
}

std::vector<std::size_t> orbit_dims(const OrbitProblem& problem) {
  if (std::holds_alternative<PolarizationGapObjective>(problem.objective)) return {2, 2};
  return {problem.lambda.size()};
}

}  // namespace

double polarization_gap(const DensityMatrix& two_qubit) {
  if (two_qubit.dim() != 4) throw DimensionError("polarization_gap: expected a two-qubit state");
  return gap_of(two_qubit.matrix());
}

double evaluate_objective(const OrbitProblem& problem, const DensityMatrix& eta) {
  return raw_objective(problem, eta.matrix());
}

OrbitResult orbit_optimize(const OrbitProblem& problem, int restarts, const SeededStream& stream,
                           const OrbitSchedule& schedule) {
  const std::size_t d = problem.lambda.size();
  if (const auto* tr = std::get_if<TraceObjective>(&problem.objective)) {
    if (tr->op.dim() != d) throw DimensionError("orbit_optimize: operator dimension");
    if (hermiticity_defect(tr->op) > Tolerances{}.herm) {
      throw ContractViolation("orbit_optimize: operator is not Hermitian");
    }
  } else if (d != 4) {
    throw DimensionError("orbit_optimize: the polarization gap needs a two-qubit spectrum");
  }
  if (restarts < 1) throw ContractViolation("orbit_optimize: restarts must be positive");

  // Internally always minimize.
  const double sign = problem.direction == OrbitDirection::kMinimize ? 1.0 : -1.0;
  double best = 0.0;
  ComplexMatrix best_u;
  ComplexMatrix candidate(d), term(d), next(d), point(d);
  for (int r = 0; r < restarts; ++r) {
    auto local = stream.substream(static_cast<std::uint64_t>(r));
    ComplexMatrix u = random_haar_unitary(d, local);
    orbit_point(u, problem.lambda, point);
    double current = sign * raw_objective(problem, point);
    double step = schedule.initial_step;
    int rejections = 0;
    long accepted = 0;
    for (long it = 0; it < schedule.max_iterations && step >= schedule.min_step; ++it) {
      const auto h = random_hermitian(d, local);
      rotate(h, step, u, candidate, term, next);
      orbit_point(candidate, problem.lambda, point);
      const double value = sign * raw_objective(problem, point);
      if (value < current) {
        std::swap(u, candidate);
        current = value;
        rejections = 0;
        if (++accepted % schedule.reorthonormalize_every == 0) u = orthonormalize_columns(u);
      } else if (++rejections >= schedule.rejections_before_halving) {
        step *= 0.5;
        rejections = 0;
      }
    }
    if (r == 0 || current < best) {
      best = current;
      best_u = u;
    }
  }
  best_u = orthonormalize_columns(best_u);
  auto eta = DensityMatrix::by_construction(orbit_point(best_u, problem.lambda),
                                            orbit_dims(problem));
  return OrbitResult{raw_objective(problem, eta.matrix()), std::move(eta)};
}

}  // namespace qmarg
