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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmarg/classical_bridge.hpp"
#include "qmarg/qubit_array.hpp"
#include "qmarg/spectra.hpp"

using namespace qmarg;

namespace {

DensityMatrix diag_density(std::vector<double> v) {
  const std::size_t d = v.size();
  return validate_density(ComplexMatrix::diagonal(v), {d});
}

void check_certificate(const ConvQuery& q, const JointDistribution& p) {
  const auto rows = p.row_sums();
  const auto cols = p.col_sums();
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(std::abs(rows[i] - q.spec_a[i]) <= 1e-8);
  for (std::size_t j = 0; j < cols.size(); ++j) CHECK(std::abs(cols[j] - q.spec_b[j]) <= 1e-8);
  for (double x : p.flat()) CHECK(x >= 0.0);
  CHECK(oracle::majorized(p.flat(), q.lambda.values(), 1e-9));
}

}  // namespace

TEST_CASE("joint distribution validation") {
  CHECK_THROWS_AS(JointDistribution(2, 2, {0.5, 0.5, 0.0}), DimensionError);
  CHECK_THROWS_AS(JointDistribution(2, 2, {0.5, 0.6, 0.0, -0.1}), ContractViolation);
  CHECK_THROWS_AS(JointDistribution(1, 2, {0.5, 0.4}), ContractViolation);
  const JointDistribution p(2, 2, {0.1, 0.2, 0.3, 0.4});
  CHECK(p(1, 0) == doctest::Approx(0.3));
  CHECK(p.row_sums()[0] == doctest::Approx(0.3));
  CHECK(p.col_sums()[1] == doctest::Approx(0.6));
}

TEST_CASE("counterexample spectra are feasible") {
  const ConvQuery q{Spectrum({0.6, 0.4}), Spectrum({0.5, 0.5}), Spectrum({0.3, 0.3, 0.3, 0.1})};
  const auto p = conv_membership(q);
  REQUIRE(p);
  check_certificate(q, *p);
  // The product table also works.
  CHECK(majorized_by(std::vector<double>{0.3, 0.3, 0.2, 0.2}, q.lambda.values()));
}

TEST_CASE("point-mass marginals need a pure spectrum") {
  const Spectrum delta({1.0, 0.0});
  CHECK(conv_membership(ConvQuery{delta, delta, Spectrum({1.0, 0.0, 0.0, 0.0})}));
  CHECK_FALSE(conv_membership(ConvQuery{delta, delta, Spectrum({0.9, 0.1, 0.0, 0.0})}));
  CHECK_FALSE(conv_membership(ConvQuery{delta, delta, Spectrum({0.25, 0.25, 0.25, 0.25})}));
}

TEST_CASE("short lambda is zero-padded and long lambda needs room") {
  // Table of 4 cells against a 2-entry lambda.
  CHECK(conv_membership(ConvQuery{Spectrum({0.5, 0.5}), Spectrum({1.0, 0.0}), Spectrum({0.5, 0.5})}));
  CHECK(conv_membership(ConvQuery{Spectrum({0.5, 0.5}), Spectrum({0.5, 0.5}), Spectrum({0.5, 0.5})}));
  CHECK(conv_membership(ConvQuery{Spectrum({0.5, 0.5}), Spectrum({0.5, 0.5}), Spectrum({1.0, 0.0})}));
  // Only the uniform table is majorized by a uniform lambda.
  CHECK_FALSE(conv_membership(ConvQuery{Spectrum({0.9, 0.1}), Spectrum({0.5, 0.5}), Spectrum({0.25, 0.25, 0.25, 0.25})}));
  // Lambda longer than the table: the mass beyond the table cannot be used.
  CHECK_FALSE(conv_membership(ConvQuery{Spectrum({1.0}), Spectrum({1.0}), Spectrum({0.5, 0.5})}));
  CHECK_FALSE(conv_membership(ConvQuery{Spectrum({0.5, 0.5}), Spectrum({1.0}), Spectrum({0.5, 0.3, 0.2})}));
  CHECK(conv_membership(ConvQuery{Spectrum({0.5, 0.5}), Spectrum({1.0}), Spectrum({0.5, 0.5, 0.0})}));
}

TEST_CASE("2x2 feasibility agrees with the grid search") {
  SeededStream s(1);
  int feasible = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = random_spectrum(2, s);
    const auto b = random_spectrum(2, s);
    const auto l = random_spectrum(4, s);
    const auto p = conv_membership(ConvQuery{a, b, l});
    CHECK(p.has_value() == oracle::grid_conv_2x2(a[0], b[0], l.values()));
    if (p) check_certificate(ConvQuery{a, b, l}, *p);
    feasible += p.has_value();
  }
  CHECK(feasible > 20);
  CHECK(feasible < 280);
}

TEST_CASE("subset and lifted encodings agree") {
  SeededStream s(2);
  for (int i = 0; i < 200; ++i) {
    const std::size_t da = 2 + i % 2;
    const std::size_t db = 2 + (i / 2) % 2;
    const ConvQuery q{random_spectrum(da, s), random_spectrum(db, s), random_spectrum(da * db - i % 2, s)};
    const auto x = conv_membership(q, MajorizationEncoding::kSubsets);
    const auto y = conv_membership(q, MajorizationEncoding::kLifted);
    CHECK(x.has_value() == y.has_value());
    if (x) check_certificate(q, *x);
    if (y) check_certificate(q, *y);
  }
}

TEST_CASE("product tables of mixed spectra are always feasible against themselves") {
  SeededStream s(3);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_spectrum(3, s);
    const auto b = random_spectrum(4, s);
    std::vector<double> prod;
    for (double x : a.values())
      for (double y : b.values()) prod.push_back(x * y);
    const ConvQuery q{a, b, Spectrum::from_unsorted(prod)};
    const auto p = conv_membership(q);
    REQUIRE(p);
    check_certificate(q, *p);
  }
}

TEST_CASE("separable witness from a product table is the product state") {
  SeededStream s(4);
  const auto ra = random_fixed_spectrum(random_spectrum(2, s), s);
  const auto rb = random_fixed_spectrum(random_spectrum(3, s), s);
  const auto ea = spectrum(ra), eb = spectrum(rb);
  std::vector<double> t;
  for (double x : ea.values())
    for (double y : eb.values()) t.push_back(x * y);
  const auto rho = separable_witness(ra, rb, JointDistribution(2, 3, t));
  CHECK(max_abs_diff(rho.matrix(), kron(ra.matrix(), rb.matrix())) < 1e-12);
}

TEST_CASE("separable witness for the counterexample") {
  const auto ra = diag_density({0.6, 0.4});
  const auto rb = diag_density({0.5, 0.5});
  const Spectrum lambda({0.3, 0.3, 0.3, 0.1});
  const auto p = conv_membership(ConvQuery{spectrum(ra), spectrum(rb), lambda});
  REQUIRE(p);
  const auto rho = separable_witness(ra, rb, *p);
  CHECK(max_abs_diff(partial_trace(rho, {0}).matrix(), ra.matrix()) < 1e-9);
  CHECK(max_abs_diff(partial_trace(rho, {1}).matrix(), rb.matrix()) < 1e-9);
  CHECK(majorized_by(spectrum(rho).values(), lambda.values(), Tolerances{.maj = 1e-9}));
}

TEST_CASE("separable witnesses round-trip random consistent tables") {
  SeededStream s(5);
  for (int i = 0; i < 100; ++i) {
    const auto ra = random_fixed_spectrum(random_spectrum(2, s), s);
    const auto rb = random_fixed_spectrum(random_spectrum(2, s), s);
    const auto ea = spectrum(ra), eb = spectrum(rb);
    const double lo = std::max(0.0, ea[0] + eb[0] - 1.0);
    const double hi = std::min(ea[0], eb[0]);
    const double t = lo + s.uniform() * (hi - lo);
    const JointDistribution p(2, 2, {t, ea[0] - t, eb[0] - t, 1.0 - ea[0] - eb[0] + t});
    const auto rho = separable_witness(ra, rb, p);
    CHECK(max_abs_diff(partial_trace(rho, {0}).matrix(), ra.matrix()) <= 1e-9);
    CHECK(max_abs_diff(partial_trace(rho, {1}).matrix(), rb.matrix()) <= 1e-9);
  }
}

TEST_CASE("separable witness rejects inconsistent tables") {
  const auto ra = diag_density({0.6, 0.4});
  const auto rb = diag_density({0.5, 0.5});
  CHECK_THROWS_AS(separable_witness(ra, rb, JointDistribution(2, 2, {0.25, 0.25, 0.25, 0.25})), ContractViolation);
  CHECK_THROWS_AS(separable_witness(ra, rb, JointDistribution(1, 1, {1.0})), DimensionError);
}

TEST_CASE("diagonal distributions") {
  const auto rho = diag_density({0.1, 0.2, 0.3, 0.4}).with_dims({2, 2});
  const auto id = ComplexMatrix::identity(2);
  const auto p = diag_distribution(rho, id, id);
  CHECK(p.flat() == std::vector<double>{0.1, 0.2, 0.3, 0.4});

  const double r = 1.0 / std::sqrt(2.0);
  const auto bell = PureState({r, 0, 0, r}, {2, 2}).density();
  const auto q = diag_distribution(bell, id, id);
  CHECK(q(0, 0) == doctest::Approx(0.5));
  CHECK(q(1, 1) == doctest::Approx(0.5));
  CHECK(q(0, 1) == doctest::Approx(0.0));
  CHECK(majorized_by(q.flat(), std::vector<double>{1.0, 0.0, 0.0, 0.0}));

  const ComplexMatrix skew{{1, 1}, {0, 1}};
  CHECK_THROWS_AS(diag_distribution(bell, skew, id), ContractViolation);
}

TEST_CASE("mixtures of an orbit give diagonal tables majorized by the spectrum") {
  SeededStream s(6);
  for (int i = 0; i < 200; ++i) {
    const auto lambda = random_spectrum(4, s);
    const std::vector<double> w{0.5, 0.3, 0.2};
    const auto rho = random_mix_with_spectrum(lambda, w, s).with_dims({2, 2});
    const auto ea = eig_hermitian(partial_trace(rho, {0}).matrix());
    const auto eb = eig_hermitian(partial_trace(rho, {1}).matrix());
    const auto p = diag_distribution(rho, ea.vectors, eb.vectors);
    CHECK(majorized_by(p.flat(), lambda.values()));
    CHECK(conv_membership(ConvQuery{Spectrum::from_unsorted(ea.values), Spectrum::from_unsorted(eb.values), lambda}));
  }
}

TEST_CASE("tripartite conditions for the counterexample and for product states") {
  const auto t = tripartite_necessary(diag_density({0.6, 0.4}), diag_density({0.5, 0.5}),
                                      diag_density({0.3, 0.3, 0.3, 0.1}));
  CHECK(t.holds == std::array<bool, 3>{true, true, true});

  const auto pa = diag_density({1.0, 0.0});
  const auto pc = diag_density({0.0, 1.0, 0.0});
  const auto p = tripartite_necessary(pa, pa, pc);
  CHECK(p.holds == std::array<bool, 3>{true, true, true});
}

TEST_CASE("tripartite first condition fails once lambda is sharpened") {
  const auto a = diag_density({0.6, 0.4});
  const auto b = diag_density({0.5, 0.5});
  // eig(A x B) = (0.3, 0.3, 0.2, 0.2); pushing weight into the tail of C
  // breaks (0.3, 0.3, 0.2, 0.2) < eig(C) at k = 1.
  const auto c = diag_density({0.28, 0.28, 0.24, 0.2});
  const auto t = tripartite_necessary(a, b, c);
  CHECK_FALSE(t.holds[0]);
}

TEST_CASE("tripartite conditions agree with the qubit inequalities") {
  const int steps = 50;
  int disagreements = 0;
  int compatible = 0;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      for (int k = 0; k < steps; ++k) {
        const double la = 0.5 * i / (steps - 1), lb = 0.5 * j / (steps - 1), lc = 0.5 * k / (steps - 1);
        const auto t = tripartite_necessary(diag_density({1 - la, la}), diag_density({1 - lb, lb}),
                                            diag_density({1 - lc, lc}));
        const bool tri = t.holds[0] && t.holds[1] && t.holds[2];
        const bool qubits = check_pure_compat_qubits(QubitMarginVector({la, lb, lc}));
        disagreements += tri != qubits;
        compatible += qubits;
      }
    }
  }
  CHECK(disagreements == 0);
  CHECK(compatible > 0);
}
