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

// JSON encodings of the library's value types.

#include <json.hpp>

#include "qmarg/classical_bridge.hpp"
#include "qmarg/linalg.hpp"
#include "qmarg/qubit_array.hpp"
#include "qmarg/spectra.hpp"
#include "qmarg/two_qubit.hpp"

namespace qmarg {

using Json = nlohmann::ordered_json;

// {"dims": [...], "re": [[...]], "im": [[...]]}, row-major. "im" may be omitted
// on input.
Json to_json(const ComplexMatrix& m, const std::vector<std::size_t>& dims);
Json to_json(const DensityMatrix& rho);
ComplexMatrix matrix_from_json(const Json& j, std::vector<std::size_t>* dims = nullptr);
DensityMatrix density_from_json(const Json& j, const Tolerances& tol = {});

// {"dims": [...], "re": [...], "im": [...]}
Json to_json(const PureState& psi);

// {"values": [...]}
Json to_json(const Spectrum& s);
// Accepts {"values": [...]} or a bare array; sorts before validating.
Spectrum spectrum_from_json(const Json& j, const Tolerances& tol = {});

// {"terms": [{"w": t, "perm": [...]}, ...]}
Json to_json(const PermutationCombination& c);
PermutationCombination permutation_combination_from_json(const Json& j);

// {"n": n, "amps": [{"x": "0110", "re": r, "im": i}, ...]}
Json to_json(const EpsAmplitudes& eps);
EpsAmplitudes eps_from_json(const Json& j, const Tolerances& tol = {});

// {"table": [[...]]}
Json to_json(const JointDistribution& p);
JointDistribution joint_from_json(const Json& j, const Tolerances& tol = {});

// {"lambda": [...], "vertices": {"O": [x, y], ...}, "polygon": [[x, y], ...]}
Json region_json(const Spectrum& lambda);

// Every floating value rounded to `digits` significant digits.
Json round_floats(const Json& j, int digits = 12);

}  // namespace qmarg
