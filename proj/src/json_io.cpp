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

#include "qmarg/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qmarg {

namespace {

std::vector<double> doubles(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(std::string(what) + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json to_json(const ComplexMatrix& m, const std::vector<std::size_t>& dims) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"dims", dims}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.matrix(), rho.dims()); }

ComplexMatrix matrix_from_json(const Json& j, std::vector<std::size_t>* dims) {
  const auto& re = field(j, "re");
  if (!re.is_array() || re.empty()) throw Error("matrix: \"re\" must be a non-empty array of rows");
  const std::size_t d = re.size();
  const Json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || im->size() != d)) throw DimensionError("matrix: \"im\" shape");
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    const auto row = doubles(re[r], "matrix row");
    if (row.size() != d) throw DimensionError("matrix: rows must have length " + std::to_string(d));
    std::vector<double> irow(d, 0.0);
    if (im) {
      irow = doubles((*im)[r], "matrix row");
      if (irow.size() != d) throw DimensionError("matrix: \"im\" shape");
    }
    for (std::size_t c = 0; c < d; ++c) m(r, c) = Complex(row[c], irow[c]);
  }
  if (dims) {
    dims->clear();
    if (j.contains("dims")) {
      for (const auto& v : j.at("dims")) dims->push_back(v.get<std::size_t>());
    } else {
      dims->push_back(d);
    }
  }
  return m;
}

DensityMatrix density_from_json(const Json& j, const Tolerances& tol) {
  std::vector<std::size_t> dims;
  auto m = matrix_from_json(j, &dims);
  return validate_density(m, std::move(dims), tol);
}

Json to_json(const PureState& psi) {
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& z : psi.amplitudes()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return Json{{"dims", psi.dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const Spectrum& s) { return Json{{"values", s.values()}}; }

Spectrum spectrum_from_json(const Json& j, const Tolerances& tol) {
  const Json& arr = j.is_object() ? field(j, "values") : j;
  return Spectrum::from_unsorted(doubles(arr, "spectrum"), tol);
}

Json to_json(const PermutationCombination& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) terms.push_back(Json{{"w", t.weight}, {"perm", t.perm}});
  return Json{{"terms", std::move(terms)}};
}

PermutationCombination permutation_combination_from_json(const Json& j) {
  PermutationCombination c;
  for (const auto& t : field(j, "terms")) {
    c.terms.push_back({field(t, "w").get<double>(), field(t, "perm").get<std::vector<std::size_t>>()});
  }
  return c;
}

Json to_json(const EpsAmplitudes& eps) {
  Json amps = Json::array();
  for (const auto& [x, z] : eps.amps()) {
    amps.push_back(Json{{"x", basis_string(x, eps.n())}, {"re", z.real()}, {"im", z.imag()}});
  }
  return Json{{"n", eps.n()}, {"amps", std::move(amps)}};
}

EpsAmplitudes eps_from_json(const Json& j, const Tolerances& tol) {
  const auto n = field(j, "n").get<std::size_t>();
  std::map<BasisIndex, Complex> amps;
  for (const auto& a : field(j, "amps")) {
    const auto bits = field(a, "x").get<std::string>();
    if (bits.size() != n) throw DimensionError("eps: basis string length differs from n");
    const double im = a.contains("im") ? a.at("im").get<double>() : 0.0;
    amps[parse_basis_string(bits)] += Complex(field(a, "re").get<double>(), im);
  }
  return EpsAmplitudes(n, std::move(amps), tol);
}

Json to_json(const JointDistribution& p) {
  Json table = Json::array();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < p.cols(); ++k) row.push_back(p(i, k));
    table.push_back(std::move(row));
  }
  return Json{{"table", std::move(table)}};
}

JointDistribution joint_from_json(const Json& j, const Tolerances& tol) {
  const auto& table = field(j, "table");
  if (!table.is_array() || table.empty()) throw Error("table: expected a non-empty array of rows");
  const std::size_t rows = table.size();
  std::size_t cols = 0;
  std::vector<double> flat;
  for (const auto& r : table) {
    const auto row = doubles(r, "table row");
    if (cols == 0) cols = row.size();
    if (row.size() != cols || cols == 0) throw DimensionError("table: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return JointDistribution(rows, cols, std::move(flat), tol);
}

Json region_json(const Spectrum& lambda) {
  const auto v = region_vertices(lambda);
  auto pt = [](const RegionPoint& p) { return Json::array({p.la, p.lb}); };
  Json poly = Json::array();
  for (const auto& p : region_polygon(lambda)) poly.push_back(pt(p));
  return Json{{"lambda", lambda.values()},
              {"vertices",
               Json{{"O", pt(v.o)}, {"A", pt(v.a)}, {"B", pt(v.b)}, {"C", pt(v.c)}, {"D", pt(v.d)}}},
              {"polygon", std::move(poly)}};
}

Json round_floats(const Json& j, int digits) {
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) return j;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    double r = std::strtod(buf, nullptr);
    if (r == 0.0) r = 0.0;  // drop negative zero
    return r;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(round_floats(v, digits));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_floats(it.value(), digits);
    return out;
  }
  return j;
}

}  // namespace qmarg
