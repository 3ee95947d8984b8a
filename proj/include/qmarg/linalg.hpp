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

// Dense complex linear algebra for small multipartite systems.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmarg/errors.hpp"

namespace qmarg {

using Complex = std::complex<double>;

// Numerical slack used by validators and predicates. All fields may be
// overridden per call; the defaults suit dimensions up to 16.
struct Tolerances {
  double herm = 1e-9;   // max |m - m^dagger|
  double trace = 1e-9;  // |tr m - 1|
  double psd = 1e-9;    // smallest admissible eigenvalue is -psd
  double eig = 1e-8;    // eigen-residuals and reconstruction checks
  double orth = 1e-8;   // orthonormality of bases
  double maj = 1e-10;   // partial-sum and inequality comparisons
};

inline constexpr std::size_t kDefaultDimCap = 256;

// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  // |v><v|
  static ComplexMatrix projector(std::span<const Complex> ket);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  // Largest entry modulus.
  double max_abs() const;
  std::vector<double> real_diagonal() const;
  // Column `col` as a vector.
  std::vector<Complex> column(std::size_t col) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& m);
// max |(V^dagger V - I)_{ij}|
double orthonormality_defect(const ComplexMatrix& columns);

// Tensor product. Throws DimensionError when the product dimension exceeds `cap`.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t cap = kDefaultDimCap);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

// Eigenvalues in decreasing order; eigenvectors are the matching columns.
struct Eigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Cyclic complex Jacobi. Throws ContractViolation if `m` is not Hermitian
// within `herm_tol`.
Eigensystem eig_hermitian(const ComplexMatrix& m, double herm_tol = Tolerances{}.herm);

// Decreasing nonnegative string summing to one.
class Spectrum {
 public:
  Spectrum() = default;
  // Requires nonincreasing, nonnegative (down to -tol.psd, clipped), unit sum.
  explicit Spectrum(std::vector<double> values, const Tolerances& tol = {});
  // Sorts before validating.
  static Spectrum from_unsorted(std::vector<double> values, const Tolerances& tol = {});

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> values_;
};

std::size_t dims_product(std::span<const std::size_t> dims);

class DensityMatrix;

enum class DensityInvariant { kHermiticity, kPositivity, kTrace, kShape };

std::string to_string(DensityInvariant which);

struct DensityViolation {
  DensityInvariant invariant;
  double magnitude;  // how far outside the tolerance band the value sits, raw
  std::string describe() const;
};

class InvalidDensity : public Error {
 public:
  explicit InvalidDensity(DensityViolation v);
  const DensityViolation& violation() const { return violation_; }

 private:
  DensityViolation violation_;
};

// First violated invariant, or nothing when `m` is a valid density matrix on
// factors `dims`. Order of checks: shape, hermiticity, trace, positivity.
std::optional<DensityViolation> density_violation(const ComplexMatrix& m,
                                                  std::span<const std::size_t> dims,
                                                  const Tolerances& tol = {});

// Throws InvalidDensity carrying the violation report.
DensityMatrix validate_density(const ComplexMatrix& m, std::vector<std::size_t> dims,
                               const Tolerances& tol = {});

// Hermitian PSD unit-trace matrix with its tensor-factor layout.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return matrix_.dim(); }
  std::size_t factors() const { return dims_.size(); }

  // Same matrix, new factor layout with equal total dimension.
  DensityMatrix with_dims(std::vector<std::size_t> dims) const;

  // For results that are density matrices by construction (partial traces,
  // convex mixtures, unitary conjugations of valid inputs). Symmetrizes.
  static DensityMatrix by_construction(ComplexMatrix m, std::vector<std::size_t> dims);

 private:
  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims)
      : matrix_(std::move(m)), dims_(std::move(dims)) {}
  friend DensityMatrix validate_density(const ComplexMatrix&, std::vector<std::size_t>,
                                        const Tolerances&);

  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

// Normalized state vector with its tensor-factor layout.
class PureState {
 public:
  // Throws DimensionError on a layout mismatch and ContractViolation when the
  // squared norm is off by more than tol.trace.
  PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> dims,
            const Tolerances& tol = {});
  // Rescales to unit norm first.
  static PureState normalized(std::vector<Complex> amplitudes, std::vector<std::size_t> dims);

  const std::vector<Complex>& amplitudes() const { return amps_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return amps_.size(); }

  DensityMatrix density() const;

 private:
  std::vector<Complex> amps_;
  std::vector<std::size_t> dims_;
};

// Marginal on the factors listed in `keep` (0-based, any order, no repeats).
// The result lists the kept factors in increasing index order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);
// Marginal of |psi><psi| without forming the full projector.
DensityMatrix partial_trace(const PureState& psi, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const PureState& psi, std::initializer_list<std::size_t> keep);

Spectrum spectrum(const DensityMatrix& rho);

// sum_k sqrt(lambda_k) |v_k> (x) |k>, ancilla appended as the last factor.
PureState purify(const DensityMatrix& rho);

// U (x) I applied to factor `factor` of a pure state.
PureState apply_local(const PureState& psi, std::size_t factor, const ComplexMatrix& unitary);
// U rho U^dagger
DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& unitary);

}  // namespace qmarg
