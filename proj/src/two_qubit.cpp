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

#include "qmarg/two_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmarg {

namespace {

constexpr double kBoundarySlack = 1e-9;
constexpr double kInversionTolerance = 1e-6;

void require_four(const Spectrum& lambda) {
  if (lambda.size() != 4) throw DimensionError("two-qubit spectrum must have 4 entries");
}

double min_gap(const Spectrum& l) { return std::min(l[0] - l[2], l[1] - l[3]); }

}  // namespace

TwoQubitQuery::TwoQubitQuery(double lambda_a, double lambda_b, Spectrum lambda,
                             const Tolerances& tol)
    : la_(lambda_a), lb_(lambda_b), lambda_(std::move(lambda)) {
  require_four(lambda_);
  for (double* x : {&la_, &lb_}) {
    if (!std::isfinite(*x) || *x < -tol.psd || *x > 0.5 + tol.psd) {
      throw ContractViolation("lowest local eigenvalue must lie in [0, 1/2]");
    }
    *x = std::clamp(*x, 0.0, 0.5);
  }
}

std::string describe(TwoQubitInequality which) {
  switch (which) {
    case TwoQubitInequality::kLowerA: return "lambda_A >= lambda_3 + lambda_4";
    case TwoQubitInequality::kLowerB: return "lambda_B >= lambda_3 + lambda_4";
    case TwoQubitInequality::kSum: return "lambda_A + lambda_B >= 2 lambda_4 + lambda_3 + lambda_2";
    case TwoQubitInequality::kDifference:
      return "|lambda_A - lambda_B| <= min(lambda_1 - lambda_3, lambda_2 - lambda_4)";
  }
  return "unknown";
}

std::vector<TwoQubitInequality> two_qubit_violations(const TwoQubitQuery& q, const Tolerances& tol) {
  const auto& l = q.lambda();
  const double la = q.lambda_a();
  const double lb = q.lambda_b();
  std::vector<TwoQubitInequality> bad;
  if (la < l[3] + l[2] - tol.maj) bad.push_back(TwoQubitInequality::kLowerA);
  if (lb < l[3] + l[2] - tol.maj) bad.push_back(TwoQubitInequality::kLowerB);
  if (la + lb < 2.0 * l[3] + l[2] + l[1] - tol.maj) bad.push_back(TwoQubitInequality::kSum);
  if (std::abs(la - lb) > min_gap(l) + tol.maj) bad.push_back(TwoQubitInequality::kDifference);
  return bad;
}

bool check_two_qubit(const TwoQubitQuery& q, const Tolerances& tol) {
  return two_qubit_violations(q, tol).empty();
}

RegionVertices region_vertices(const Spectrum& l) {
  require_four(l);
  const double low = l[2] + l[3];
  const double diag = 0.5 * (2.0 * l[3] + l[2] + l[1]);
  return RegionVertices{
      {0.5, 0.5},
      {0.5, 0.5 - min_gap(l)},
      {std::min(l[0] + l[3], l[1] + l[2]), low},
      {l[1] + l[3], low},
      {diag, diag},
  };
}

std::vector<RegionPoint> region_polygon(const Spectrum& lambda) {
  const auto v = region_vertices(lambda);
  auto mirror = [](RegionPoint p) { return RegionPoint{p.lb, p.la}; };
  return {v.o, v.a, v.b, v.c, v.d, mirror(v.c), mirror(v.b), mirror(v.a)};
}

double min_trace_fixed_spectrum(std::span<const double> op_eigs, const Spectrum& lambda) {
  if (op_eigs.size() != lambda.size()) {
    throw DimensionError("min_trace_fixed_spectrum: operator and spectrum sizes differ");
  }
  if (!std::is_sorted(op_eigs.begin(), op_eigs.end(), std::greater<>())) {
    throw ContractViolation("min_trace_fixed_spectrum: operator eigenvalues must be decreasing");
  }
  const std::size_t d = op_eigs.size();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += lambda[i] * op_eigs[d - 1 - i];
  return s;
}

double sup_F_bound(const Spectrum& lambda) {
  require_four(lambda);
  return 2.0 * min_gap(lambda);
}

std::string to_string(WitnessFamily family) {
  switch (family) {
    case WitnessFamily::kOCD: return "OCD";
    case WitnessFamily::kOAB: return "OAB";
    case WitnessFamily::kOBC: return "OBC";
  }
  return "unknown";
}

namespace {

using Ket = std::array<Complex, 4>;  // |00>, |01>, |10>, |11>

Ket ket(double c00, double c01, double c10, double c11) {
  const double s = (1.0 / std::numbers::sqrt2);
  return {s * c00, s * c01, s * c10, s * c11};
}

// Eigenvalues placed on the family's basis, in basis order.
std::array<double, 4> family_weights(WitnessFamily family, const Spectrum& l) {
  switch (family) {
    case WitnessFamily::kOCD: return {l[0], l[3], l[2], l[1]};
    case WitnessFamily::kOAB: return {l[0], l[2], l[3], l[1]};
    case WitnessFamily::kOBC: return {l[0], l[3], l[2], l[1]};
  }
  return {};
}

std::array<Ket, 4> family_basis(WitnessFamily family, double alpha, double second) {
  const double ap = std::sqrt(std::max(0.0, 1.0 + alpha));
  const double am = std::sqrt(std::max(0.0, 1.0 - alpha));
  if (family != WitnessFamily::kOBC) {
    const double bp = std::sqrt(std::max(0.0, 1.0 + second));
    const double bm = std::sqrt(std::max(0.0, 1.0 - second));
    return {ket(am, 0, 0, ap), ket(ap, 0, 0, -am), ket(0, bm, bp, 0), ket(0, bp, -bm, 0)};
  }
  // |phi0> = cos(phi/2)|0> + sin(phi/2)|1>, |phi1> = -sin(phi/2)|0> + cos(phi/2)|1>.
  const double c = std::cos(0.5 * second);
  const double s = std::sin(0.5 * second);
  return {
      ket(am, 0, 0, ap),
      // sqrt(1+a)|phi0,0> - sqrt(1-a)|phi1,1>
      ket(ap * c, am * s, ap * s, -am * c),
      // sqrt(1-a)|phi0,1> + sqrt(1+a)|phi1,0>
      ket(-ap * s, am * c, ap * c, am * s),
      ket(0, ap, -am, 0),
  };
}

const ComplexMatrix& swap_gate() {
  static const ComplexMatrix swap{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  return swap;
}

bool in_triangle(RegionPoint p, RegionPoint a, RegionPoint b, RegionPoint c, double eps) {
  auto cross = [](RegionPoint o, RegionPoint u, RegionPoint v) {
    return (u.la - o.la) * (v.lb - o.lb) - (u.lb - o.lb) * (v.la - o.la);
  };
  const double area = cross(a, b, c);
  if (std::abs(area) < 1e-18) {
    // Degenerate triangle: test distance to its edges.
    auto on_segment = [&](RegionPoint u, RegionPoint v) {
      const double dx = v.la - u.la;
      const double dy = v.lb - u.lb;
      const double len2 = dx * dx + dy * dy;
      double t = len2 > 0.0 ? ((p.la - u.la) * dx + (p.lb - u.lb) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      return std::hypot(p.la - u.la - t * dx, p.lb - u.lb - t * dy) <= eps;
    };
    return on_segment(a, b) || on_segment(b, c) || on_segment(a, c);
  }
  const double s = area > 0.0 ? 1.0 : -1.0;
  const double scale = std::sqrt(std::abs(area));
  return s * cross(a, b, p) >= -eps * scale && s * cross(b, c, p) >= -eps * scale &&
         s * cross(c, a, p) >= -eps * scale;
}

struct Candidate {
  double alpha;
  double second;
};

// For a Psi-type family the marginals are lambda_a = (1 - |x - y|)/2 and
// lambda_b = (1 - (x + y))/2 with x = alpha * (e1 - e2) and
// y = beta * (e4 - e3), where e are the family weights in basis order.
Candidate invert_pairing(WitnessFamily family, const Spectrum& l, double la, double lb) {
  const auto e = family_weights(family, l);
  const double p = e[0] - e[1];
  const double q = e[3] - e[2];
  const double diff = std::max(0.0, 1.0 - 2.0 * la);
  const double sum = std::max(0.0, 1.0 - 2.0 * lb);
  const double big = 0.5 * (sum + diff);
  const double small = 0.5 * (sum - diff);
  // Either x carries the larger half or y does; take the assignment that fits.
  const double excess1 = std::max(big - p, 0.0) + std::max(small - q, 0.0);
  const double excess2 = std::max(small - p, 0.0) + std::max(big - q, 0.0);
  const double x = excess1 <= excess2 ? big : small;
  const double y = excess1 <= excess2 ? small : big;
  const double alpha = p > 0.0 ? std::clamp(x / p, 0.0, 1.0) : 0.0;
  const double beta = q > 0.0 ? std::clamp(y / q, 0.0, 1.0) : 0.0;
  return {alpha, beta};
}

// lambda_b = (1 - alpha (l1 + l2 - l3 - l4))/2,
// lambda_a = (1 - alpha sqrt(l12^2 + l34^2 + 2 l12 l34 cos phi))/2.
Candidate invert_obc(const Spectrum& l, double la, double lb) {
  const double spread = l[0] + l[1] - l[2] - l[3];
  const double alpha = spread > 0.0 ? std::clamp((1.0 - 2.0 * lb) / spread, 0.0, 1.0) : 0.0;
  const double l12 = l[0] - l[1];
  const double l34 = l[2] - l[3];
  double phi = 0.0;
  if (alpha > 0.0 && l12 * l34 > 0.0) {
    const double r = (1.0 - 2.0 * la) / alpha;
    const double cosphi = (r * r - l12 * l12 - l34 * l34) / (2.0 * l12 * l34);
    phi = std::acos(std::clamp(cosphi, -1.0, 1.0));
  }
  return {alpha, phi};
}

}  // namespace

DensityMatrix assemble_family(WitnessFamily family, double alpha, double second,
                              const Spectrum& lambda) {
  require_four(lambda);
  const auto basis = family_basis(family, alpha, second);
  const auto weights = family_weights(family, lambda);
  ComplexMatrix rho(4);
  for (std::size_t k = 0; k < 4; ++k) rho += ComplexMatrix::projector(basis[k]) * Complex(weights[k]);
  return DensityMatrix::by_construction(std::move(rho), {2, 2});
}

double lowest_eigenvalue(const DensityMatrix& qubit) {
  if (qubit.dim() != 2) throw DimensionError("lowest_eigenvalue: expected a qubit");
  return eig_hermitian(qubit.matrix()).values[1];
}

TwoQubitWitness witness_two_qubit(const TwoQubitQuery& q) {
  Tolerances slack;
  slack.maj = kBoundarySlack;
  if (const auto bad = two_qubit_violations(q, slack); !bad.empty()) {
    throw MembershipError("two-qubit query is outside the region: violates " + describe(bad.front()));
  }
  const auto& l = q.lambda();
  const bool swapped = q.lambda_a() < q.lambda_b();
  const double la = swapped ? q.lambda_b() : q.lambda_a();
  const double lb = swapped ? q.lambda_a() : q.lambda_b();
  const bool case_swap = l[0] - l[2] < l[1] - l[3];

  const auto v = region_vertices(l);
  const RegionPoint target{la, lb};
  std::vector<WitnessFamily> order;
  if (in_triangle(target, v.o, v.c, v.d, 1e-12)) {
    order.push_back(WitnessFamily::kOCD);
  } else if (in_triangle(target, v.o, v.a, v.b, 1e-12)) {
    order.push_back(WitnessFamily::kOAB);
  } else if (in_triangle(target, v.o, v.b, v.c, 1e-12)) {
    order.push_back(WitnessFamily::kOBC);
  }
  for (auto f : {WitnessFamily::kOCD, WitnessFamily::kOAB, WitnessFamily::kOBC}) {
    if (std::find(order.begin(), order.end(), f) == order.end()) order.push_back(f);
  }

  const std::vector<double> target_spec = l.values();
  double best_residual = 0.0;
  WitnessParams best_params{};
  for (auto family : order) {
    const auto cand = family == WitnessFamily::kOBC ? invert_obc(l, la, lb)
                                                    : invert_pairing(family, l, la, lb);
    auto rho = assemble_family(family, cand.alpha, cand.second, l);
    if (swapped) rho = conjugate(rho, swap_gate());
    const auto eig = eig_hermitian(rho.matrix()).values;
    double spec_res = 0.0;
    for (std::size_t i = 0; i < 4; ++i) spec_res = std::max(spec_res, std::abs(eig[i] - target_spec[i]));
    const double marg_res =
        std::max(std::abs(lowest_eigenvalue(partial_trace(rho, {0})) - q.lambda_a()),
                 std::abs(lowest_eigenvalue(partial_trace(rho, {1})) - q.lambda_b()));
    const WitnessParams params{family, cand.alpha, cand.second, swapped, case_swap};
    if (std::max(spec_res, marg_res) <= kInversionTolerance) {
      return TwoQubitWitness{std::move(rho), params, spec_res, marg_res};
    }
    if (family == order.front()) {
      best_residual = std::max(spec_res, marg_res);
      best_params = params;
    }
  }
  throw ConstructionError("witness_two_qubit: family " + to_string(best_params.family) +
                          " (alpha " + std::to_string(best_params.alpha) + ", second " +
                          std::to_string(best_params.second) + ") misses the target by " +
                          std::to_string(best_residual));
}

namespace {

TwoQubitQuery query_224(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                        const DensityMatrix& rho_c, const Tolerances& tol) {
  if (rho_a.dim() != 2 || rho_b.dim() != 2 || rho_c.dim() != 4) {
    throw DimensionError("pure-224 check expects local dimensions (2, 2, 4)");
  }
  return TwoQubitQuery(lowest_eigenvalue(rho_a), lowest_eigenvalue(rho_b), spectrum(rho_c), tol);
}

// Unitary taking the eigenbasis of `from` onto the eigenbasis of `to`
// (decreasing order on both sides).
ComplexMatrix align_eigenbases(const DensityMatrix& from, const DensityMatrix& to) {
  const auto ef = eig_hermitian(from.matrix());
  const auto et = eig_hermitian(to.matrix());
  return et.vectors * ef.vectors.adjoint();
}

}  // namespace

std::vector<TwoQubitInequality> pure_224_violations(const DensityMatrix& rho_a,
                                                    const DensityMatrix& rho_b,
                                                    const DensityMatrix& rho_c,
                                                    const Tolerances& tol) {
  return two_qubit_violations(query_224(rho_a, rho_b, rho_c, tol), tol);
}

bool check_pure_224(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                    const DensityMatrix& rho_c, const Tolerances& tol) {
  return pure_224_violations(rho_a, rho_b, rho_c, tol).empty();
}

PureState witness_pure_224(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                           const DensityMatrix& rho_c) {
  const auto query = query_224(rho_a, rho_b, rho_c, Tolerances{});
  const auto two = witness_two_qubit(query);
  const auto ua = align_eigenbases(partial_trace(two.rho, {0}), rho_a);
  const auto ub = align_eigenbases(partial_trace(two.rho, {1}), rho_b);
  const auto aligned = conjugate(two.rho, kron(ua, ub));
  auto psi = purify(aligned);
  // The ancilla marginal of the purification is diag(eig) in its canonical basis.
  psi = apply_local(psi, 2, eig_hermitian(rho_c.matrix()).vectors);

  const std::array<const DensityMatrix*, 3> targets{&rho_a, &rho_b, &rho_c};
  for (std::size_t f = 0; f < 3; ++f) {
    const double res = max_abs_diff(partial_trace(psi, {f}).matrix(), targets[f]->matrix());
    if (res > 1e-7) {
      throw ConstructionError("witness_pure_224: marginal " + std::to_string(f) + " residual " +
                              std::to_string(res));
    }
  }
  return psi;
}

}  // namespace qmarg
