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

#include "qmarg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qmarg {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim * dim) {
    throw DimensionError("matrix entry count does not match dimension");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i).real();
  return d;
}

std::vector<Complex> ComplexMatrix::column(std::size_t col) const {
  std::vector<Complex> v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v[i] = (*this)(i, col);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix sum: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionError("matrix difference: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix product: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.dim() != v.size()) throw DimensionError("matrix-vector product: dimension mismatch");
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double best = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    best = std::max(best, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return best;
}

double orthonormality_defect(const ComplexMatrix& columns) {
  return max_abs_diff(columns.adjoint() * columns, ComplexMatrix::identity(columns.dim()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t cap) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (db != 0 && da > cap / db) {
    throw DimensionError("kron: product dimension " + std::to_string(da) + "x" +
                         std::to_string(db) + " exceeds cap " + std::to_string(cap));
  }
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x * y);
  }
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

Eigensystem eig_hermitian(const ComplexMatrix& m, double herm_tol) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= herm_tol)) {
    throw ContractViolation("eig_hermitian: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
  const std::size_t n = m.dim();
  // Work on the exactly Hermitian part.
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = 1e-13 * std::max(1.0, frobenius_norm(a));
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const Complex phase = apq / r;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real Jacobi angle for [[app, r], [r, aqq]].
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rotation J = [[c, s e^{i theta}], [-s e^{-i theta}, c]] on columns p, q.
        const Complex s_ph = s * phase;
        const Complex s_phc = s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s_phc * akq;
          a(k, q) = s_ph * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s_ph * aqk;
          a(q, k) = s_phc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s_phc * vkq;
          v(k, q) = s_ph * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps the Jacobi order inside degenerate blocks.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  Eigensystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Spectrum::Spectrum(std::vector<double> values, const Tolerances& tol) : values_(std::move(values)) {
  if (values_.empty()) throw ContractViolation("spectrum is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double& x = values_[i];
    if (!std::isfinite(x)) throw ContractViolation("spectrum entry is not finite");
    if (x < -tol.psd) {
      throw ContractViolation("spectrum entry " + std::to_string(i) + " is negative");
    }
    if (x < 0.0) x = 0.0;
    if (i > 0 && x > values_[i - 1] + tol.maj) {
      throw ContractViolation("spectrum is not in nonincreasing order");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol.trace) {
    throw ContractViolation("spectrum does not sum to 1 (sum " + std::to_string(sum) + ")");
  }
}

Spectrum Spectrum::from_unsorted(std::vector<double> values, const Tolerances& tol) {
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum(std::move(values), tol);
}

std::size_t dims_product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

std::string to_string(DensityInvariant which) {
  switch (which) {
    case DensityInvariant::kHermiticity: return "hermiticity";
    case DensityInvariant::kPositivity: return "positivity";
    case DensityInvariant::kTrace: return "trace";
    case DensityInvariant::kShape: return "shape";
  }
  return "unknown";
}

std::string DensityViolation::describe() const {
  std::ostringstream os;
  os << to_string(invariant) << " violation of magnitude " << magnitude;
  return os.str();
}

InvalidDensity::InvalidDensity(DensityViolation v) : Error(v.describe()), violation_(v) {}

std::optional<DensityViolation> density_violation(const ComplexMatrix& m,
                                                  std::span<const std::size_t> dims,
                                                  const Tolerances& tol) {
  if (m.dim() == 0 || dims.empty() || dims_product(dims) != m.dim() ||
      std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end()) {
    return DensityViolation{DensityInvariant::kShape, 0.0};
  }
  for (const auto& z : m.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      return DensityViolation{DensityInvariant::kShape, 0.0};
    }
  }
  const double herm = hermiticity_defect(m);
  if (herm > tol.herm) return DensityViolation{DensityInvariant::kHermiticity, herm};
  const double tr_err = std::abs(m.trace().real() - 1.0);
  if (tr_err > tol.trace) return DensityViolation{DensityInvariant::kTrace, tr_err};
  const auto es = eig_hermitian(m, tol.herm);
  const double lowest = es.values.back();
  if (lowest < -tol.psd) return DensityViolation{DensityInvariant::kPositivity, -lowest};
  return std::nullopt;
}

DensityMatrix validate_density(const ComplexMatrix& m, std::vector<std::size_t> dims,
                               const Tolerances& tol) {
  if (auto v = density_violation(m, dims, tol)) throw InvalidDensity(*v);
  return DensityMatrix::by_construction(m, std::move(dims));
}

DensityMatrix DensityMatrix::with_dims(std::vector<std::size_t> dims) const {
  if (dims_product(dims) != dim()) throw DimensionError("with_dims: product mismatch");
  return DensityMatrix(matrix_, std::move(dims));
}

DensityMatrix DensityMatrix::by_construction(ComplexMatrix m, std::vector<std::size_t> dims) {
  if (dims_product(dims) != m.dim()) throw DimensionError("density matrix: dims mismatch");
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

PureState::PureState(std::vector<Complex> amplitudes, std::vector<std::size_t> dims,
                     const Tolerances& tol)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (dims_.empty() || dims_product(dims_) != amps_.size()) {
    throw DimensionError("pure state: amplitude count does not match dims");
  }
  double norm2 = 0.0;
  for (const auto& z : amps_) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > tol.trace) {
    throw ContractViolation("pure state: squared norm " + std::to_string(norm2));
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes, std::vector<std::size_t> dims) {
  double norm2 = 0.0;
  for (const auto& z : amplitudes) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw ContractViolation("pure state: zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : amplitudes) z *= inv;
  return PureState(std::move(amplitudes), std::move(dims));
}

DensityMatrix PureState::density() const {
  return DensityMatrix::by_construction(ComplexMatrix::projector(amps_), dims_);
}

namespace {

// Splits a flat index space into kept and traced parts. For every kept
// multi-index a and traced multi-index t, flat = kept_offset[a] + traced_offset[t].
struct TraceLayout {
  std::vector<std::size_t> kept_dims;
  std::vector<std::size_t> kept_offset;
  std::vector<std::size_t> traced_offset;
};

std::vector<std::size_t> offsets_for(std::span<const std::size_t> factors,
                                     std::span<const std::size_t> dims,
                                     std::span<const std::size_t> strides) {
  std::vector<std::size_t> out{0};
  for (auto f : factors) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[f]);
    for (auto base : out) {
      for (std::size_t x = 0; x < dims[f]; ++x) next.push_back(base + x * strides[f]);
    }
    out = std::move(next);
  }
  return out;
}

TraceLayout make_layout(std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  if (keep.empty()) throw IndexError("partial_trace: keep set is empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw IndexError("partial_trace: repeated factor index");
  }
  if (kept.back() >= dims.size()) {
    throw IndexError("partial_trace: factor index " + std::to_string(kept.back()) +
                     " out of range for " + std::to_string(dims.size()) + " factors");
  }
  std::vector<std::size_t> strides(dims.size());
  std::size_t stride = 1;
  for (std::size_t f = dims.size(); f-- > 0;) {
    strides[f] = stride;
    stride *= dims[f];
  }
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);
  }
  TraceLayout layout;
  for (auto f : kept) layout.kept_dims.push_back(dims[f]);
  layout.kept_offset = offsets_for(kept, dims, strides);
  layout.traced_offset = offsets_for(traced, dims, strides);
  return layout;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto layout = make_layout(rho.dims(), keep);
  const std::size_t k = layout.kept_offset.size();
  const auto& m = rho.matrix();
  ComplexMatrix out(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      Complex acc = 0.0;
      for (auto t : layout.traced_offset) {
        acc += m(layout.kept_offset[a] + t, layout.kept_offset[b] + t);
      }
      out(a, b) = acc;
    }
  }
  return DensityMatrix::by_construction(std::move(out), layout.kept_dims);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix partial_trace(const PureState& psi, std::span<const std::size_t> keep) {
  const auto layout = make_layout(psi.dims(), keep);
  const std::size_t k = layout.kept_offset.size();
  const auto& amp = psi.amplitudes();
  ComplexMatrix out(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      Complex acc = 0.0;
      for (auto t : layout.traced_offset) {
        acc += amp[layout.kept_offset[a] + t] * std::conj(amp[layout.kept_offset[b] + t]);
      }
      out(a, b) = acc;
      out(b, a) = std::conj(acc);
    }
  }
  return DensityMatrix::by_construction(std::move(out), layout.kept_dims);
}

DensityMatrix partial_trace(const PureState& psi, std::initializer_list<std::size_t> keep) {
  return partial_trace(psi, std::span<const std::size_t>(keep.begin(), keep.size()));
}

Spectrum spectrum(const DensityMatrix& rho) {
  auto values = eig_hermitian(rho.matrix()).values;
  for (auto& x : values) x = std::max(x, 0.0);
  return Spectrum(std::move(values));
}

PureState purify(const DensityMatrix& rho) {
  const auto es = eig_hermitian(rho.matrix());
  const std::size_t n = rho.dim();
  std::vector<Complex> amps(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::sqrt(std::max(es.values[k], 0.0));
    for (std::size_t i = 0; i < n; ++i) amps[i * n + k] = w * es.vectors(i, k);
  }
  auto dims = rho.dims();
  dims.push_back(n);
  return PureState::normalized(std::move(amps), std::move(dims));
}

PureState apply_local(const PureState& psi, std::size_t factor, const ComplexMatrix& unitary) {
  const auto& dims = psi.dims();
  if (factor >= dims.size()) throw IndexError("apply_local: factor out of range");
  if (unitary.dim() != dims[factor]) throw DimensionError("apply_local: unitary dimension");
  std::size_t inner = 1;
  for (std::size_t f = factor + 1; f < dims.size(); ++f) inner *= dims[f];
  const std::size_t d = dims[factor];
  const std::size_t outer = psi.dim() / (inner * d);
  const auto& in = psi.amplitudes();
  std::vector<Complex> out(in.size());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex u = unitary(i, j);
        if (u == Complex{}) continue;
        for (std::size_t r = 0; r < inner; ++r) {
          out[(o * d + i) * inner + r] += u * in[(o * d + j) * inner + r];
        }
      }
    }
  }
  return PureState::normalized(std::move(out), dims);
}

DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& unitary) {
  return DensityMatrix::by_construction(unitary * rho.matrix() * unitary.adjoint(), rho.dims());
}

}  // namespace qmarg
