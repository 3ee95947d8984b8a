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

#include "qmarg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "qmarg/classical_bridge.hpp"
#include "qmarg/json_io.hpp"
#include "qmarg/numerics.hpp"
#include "qmarg/qubit_array.hpp"
#include "qmarg/spectra.hpp"
#include "qmarg/two_qubit.hpp"

namespace qmarg::cli {

namespace {

constexpr double kWitnessTolerance = 1e-8;
constexpr double kPure224Tolerance = 1e-7;

// A result that is not a verdict failure but a broken witness.
class SelfCheckFailure : public Error {
 public:
  using Error::Error;
};

struct Outcome {
  Json body;
  int code = kExitCompatible;
};

struct Config {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string output;

  Tolerances tolerances() const {
    Tolerances t;
    if (tol) t.maj = *tol;
    return t;
  }
};

bool looks_like_json(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\n");
  return pos != std::string::npos && (s[pos] == '[' || s[pos] == '{');
}

Json load_json(const std::string& arg) {
  if (looks_like_json(arg)) return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw Error("cannot open file '" + arg + "'");
  return Json::parse(in);
}

double parse_number(const std::string& token) {
  const auto first = token.find_first_not_of(" \t");
  const auto last = token.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error("empty number in list");
  const char* b = token.data() + first;
  const char* e = token.data() + last + 1;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || ptr != e || !std::isfinite(x)) {
    throw Error("not a number: '" + token + "'");
  }
  return x;
}

// Comma list, inline JSON, or a JSON file.
std::vector<double> number_list(const std::string& arg) {
  if (looks_like_json(arg) || std::filesystem::is_regular_file(arg)) {
    const auto j = load_json(arg);
    const Json& arr = j.is_object() && j.contains("values") ? j.at("values") : j;
    if (!arr.is_array()) throw Error("expected a JSON array of numbers");
    std::vector<double> out;
    for (const auto& v : arr) {
      if (!v.is_number()) throw Error("expected a JSON array of numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(arg);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_number(token));
  if (out.empty()) throw Error("empty number list");
  return out;
}

Spectrum spectrum_arg(const std::string& arg, const Tolerances& tol) {
  return Spectrum::from_unsorted(number_list(arg), tol);
}

DensityMatrix density_arg(const std::string& arg, const Tolerances& tol) {
  return density_from_json(load_json(arg), tol);
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

Json verdict(bool compatible, Json violations) {
  return Json{{"compatible", compatible}, {"violations", std::move(violations)}};
}

Json inequality_json(TwoQubitInequality which) {
  static const char* names[] = {"lower-a", "lower-b", "sum", "difference"};
  const auto index = static_cast<int>(which);
  return Json{{"index", index + 1}, {"name", names[index]}, {"statement", describe(which)}};
}

Json inequality_list(const std::vector<TwoQubitInequality>& v) {
  Json out = Json::array();
  for (auto w : v) out.push_back(inequality_json(w));
  return out;
}

Json qubit_violation_list(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto i : v) {
    out.push_back(Json{{"qubit", i}, {"statement", "lambda_" + std::to_string(i) +
                                                       " <= sum of the other lowest eigenvalues"}});
  }
  return out;
}

double spectrum_distance(const Spectrum& a, const Spectrum& b) {
  const std::size_t n = std::max(a.size(), b.size());
  const auto x = zero_padded(a.values(), n);
  const auto y = zero_padded(b.values(), n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

void require_residual(double value, double bound, const std::string& what) {
  if (!(value <= bound)) {
    std::ostringstream os;
    os << "self-verification failed: " << what << " residual " << value << " exceeds " << bound;
    throw SelfCheckFailure(os.str());
  }
}

Json two_qubit_check(double la, double lb, const std::string& spec, const Config& cfg) {
  const auto tol = cfg.tolerances();
  const TwoQubitQuery q(la, lb, spectrum_arg(spec, tol), tol);
  return inequality_list(two_qubit_violations(q, tol));
}

Outcome cmd_check_qubits(const std::string& margins, const Config& cfg) {
  const auto tol = cfg.tolerances();
  const QubitMarginVector m(number_list(margins), tol);
  const auto v = qubit_violations(m, tol);
  return {verdict(v.empty(), qubit_violation_list(v)), v.empty() ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_check_two_qubit(double la, double lb, const std::string& spec, const Config& cfg) {
  auto v = two_qubit_check(la, lb, spec, cfg);
  const bool ok = v.empty();
  return {verdict(ok, std::move(v)), ok ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_check_conv(const std::string& sa, const std::string& sb, const std::string& lam,
                       const Config& cfg) {
  const auto tol = cfg.tolerances();
  const ConvQuery q{spectrum_arg(sa, tol), spectrum_arg(sb, tol), spectrum_arg(lam, tol)};
  const auto p = conv_membership(q);
  Json body = verdict(p.has_value(), p ? Json::array() : Json::array({"no joint distribution with "
                                                                      "these marginals is majorized "
                                                                      "by lambda"}));
  if (p) {
    body["table"] = to_json(*p)["table"];
    body["decomposition"] = to_json(majorization_decompose(p->flat(), q.lambda.values()));
  }
  return {std::move(body), p ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_check_tripartite(const std::string& a, const std::string& b, const std::string& c,
                             const Config& cfg) {
  const auto tol = cfg.tolerances();
  const auto ra = density_arg(a, tol);
  const auto rb = density_arg(b, tol);
  const auto rc = density_arg(c, tol);
  const auto t = tripartite_necessary(ra, rb, rc);
  static const char* labels[] = {"A,B|C", "B,C|A", "C,A|B"};
  Json conditions = Json::array();
  Json violations = Json::array();
  for (std::size_t k = 0; k < 3; ++k) {
    Json entry{{"pair", labels[k]}, {"holds", t.holds[k]}};
    if (t.tables[k]) entry["table"] = to_json(*t.tables[k])["table"];
    if (!t.holds[k]) violations.push_back(labels[k]);
    conditions.push_back(std::move(entry));
  }
  const bool ok = violations.empty();
  Json body = verdict(ok, std::move(violations));
  body["conditions"] = std::move(conditions);
  return {std::move(body), ok ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_check_pure_224(const std::string& a, const std::string& b, const std::string& c,
                           const Config& cfg) {
  const auto tol = cfg.tolerances();
  const auto v = pure_224_violations(density_arg(a, tol), density_arg(b, tol), density_arg(c, tol), tol);
  return {verdict(v.empty(), inequality_list(v)), v.empty() ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_witness_qubits(const std::string& margins, const std::vector<std::string>& locals,
                           const Config& cfg) {
  const auto tol = cfg.tolerances();
  if (margins.empty() == locals.empty()) {
    throw Error("witness qubits: give exactly one of --margins or --locals");
  }
  std::vector<DensityMatrix> rhos;
  for (const auto& f : locals) rhos.push_back(density_arg(f, tol));
  std::optional<MeanFieldState> state;
  std::vector<double> target;
  if (!locals.empty()) {
    state.emplace(rhos);
    target = margin_vector(*state).values();
  } else {
    target = number_list(margins);
  }
  const QubitMarginVector m(target, tol);
  const auto v = qubit_violations(m, tol);
  if (!v.empty()) return {verdict(false, qubit_violation_list(v)), kExitIncompatible};

  const PureState psi = state ? witness_pure_qubits(*state, tol) : witness_pure_qubits(m, std::nullopt, tol);
  double residual = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto rho_i = partial_trace(psi, std::span<const std::size_t>(&i, 1));
    residual = std::max(residual, state ? max_abs_diff(rho_i.matrix(), (*state)[i].matrix())
                                        : std::abs(lowest_eigenvalue(rho_i) - m[i]));
  }
  require_residual(residual, kWitnessTolerance, "marginal");
  Json body = verdict(true, Json::array());
  body["state"] = to_json(psi);
  body["report"] = Json{{"marginal_residual", residual}};
  return {std::move(body), kExitCompatible};
}

Outcome cmd_witness_two_qubit(double la, double lb, const std::string& spec, const Config& cfg) {
  auto v = two_qubit_check(la, lb, spec, cfg);
  if (!v.empty()) return {verdict(false, std::move(v)), kExitIncompatible};
  const auto tol = cfg.tolerances();
  const TwoQubitQuery q(la, lb, spectrum_arg(spec, tol), tol);
  const auto w = witness_two_qubit(q);
  const double spec_res = spectrum_distance(spectrum(w.rho), q.lambda());
  const double marg_res = std::max(std::abs(lowest_eigenvalue(partial_trace(w.rho, {0})) - la),
                                   std::abs(lowest_eigenvalue(partial_trace(w.rho, {1})) - lb));
  require_residual(spec_res, kWitnessTolerance, "spectrum");
  require_residual(marg_res, kWitnessTolerance, "marginal");
  Json body = verdict(true, Json::array());
  body["state"] = to_json(w.rho);
  body["construction"] = Json{{"family", to_string(w.params.family)},
                              {"alpha", w.params.alpha},
                              {w.params.family == WitnessFamily::kOBC ? "phi" : "beta", w.params.second},
                              {"swapped", w.params.swapped},
                              {"case_swap", w.params.case_swap}};
  body["report"] = Json{{"spectrum_residual", spec_res}, {"marginal_residual", marg_res}};
  return {std::move(body), kExitCompatible};
}

Outcome cmd_witness_pure_224(const std::string& a, const std::string& b, const std::string& c,
                             const Config& cfg) {
  const auto tol = cfg.tolerances();
  const auto ra = density_arg(a, tol);
  const auto rb = density_arg(b, tol);
  const auto rc = density_arg(c, tol);
  const auto v = pure_224_violations(ra, rb, rc, tol);
  if (!v.empty()) return {verdict(false, inequality_list(v)), kExitIncompatible};
  const auto psi = witness_pure_224(ra, rb, rc);
  const double res = std::max({max_abs_diff(partial_trace(psi, {0}).matrix(), ra.matrix()),
                               max_abs_diff(partial_trace(psi, {1}).matrix(), rb.matrix()),
                               max_abs_diff(partial_trace(psi, {2}).matrix(), rc.matrix())});
  require_residual(res, kPure224Tolerance, "marginal");
  Json body = verdict(true, Json::array());
  body["state"] = to_json(psi);
  body["report"] = Json{{"marginal_residual", res}};
  return {std::move(body), kExitCompatible};
}

Outcome cmd_witness_separable(const std::string& a, const std::string& b, const std::string& lam,
                              const Config& cfg) {
  const auto tol = cfg.tolerances();
  const auto ra = density_arg(a, tol);
  const auto rb = density_arg(b, tol);
  const auto lambda = spectrum_arg(lam, tol);
  const auto p = conv_membership(ConvQuery{spectrum(ra), spectrum(rb), lambda});
  if (!p) {
    return {verdict(false, Json::array({"no joint distribution with these marginals is majorized by lambda"})),
            kExitIncompatible};
  }
  const auto rho = separable_witness(ra, rb, *p);
  const auto decomposition = majorization_decompose(p->flat(), lambda.values());
  const double marg_res = std::max(max_abs_diff(partial_trace(rho, {0}).matrix(), ra.matrix()),
                                   max_abs_diff(partial_trace(rho, {1}).matrix(), rb.matrix()));
  const auto eigs = spectrum(rho);
  const auto rebuilt = decomposition.apply(zero_padded(lambda.values(), std::max(lambda.size(), eigs.size())));
  double decomp_res = 0.0;
  const auto flat = zero_padded(p->flat(), rebuilt.size());
  for (std::size_t i = 0; i < rebuilt.size(); ++i) decomp_res = std::max(decomp_res, std::abs(rebuilt[i] - flat[i]));
  require_residual(marg_res, kWitnessTolerance, "marginal");
  require_residual(decomp_res, kWitnessTolerance, "decomposition");
  Tolerances loose = tol;
  loose.maj = std::max(tol.maj, 1e-9);
  if (!majorized_by(eigs.values(), lambda.values(), loose)) {
    throw SelfCheckFailure("self-verification failed: witness spectrum is not majorized by lambda");
  }
  Json body = verdict(true, Json::array());
  body["state"] = to_json(rho);
  body["table"] = to_json(*p)["table"];
  body["decomposition"] = to_json(decomposition);
  body["report"] = Json{{"marginal_residual", marg_res}, {"decomposition_residual", decomp_res}};
  return {std::move(body), kExitCompatible};
}

Outcome cmd_region(const std::string& spec, const Config& cfg) {
  const auto lambda = spectrum_arg(spec, cfg.tolerances());
  if (lambda.size() != 4) throw DimensionError("region: the spectrum must have four entries");
  return {region_json(lambda), kExitCompatible};
}

SeededStream optimizer_stream(SeededStream& instance) { return SeededStream(mix64(instance.next_u64())); }

Outcome cmd_oracle_info(int n, int restarts, const Config& cfg) {
  const SeededStream root(cfg.seed);
  Json cases = Json::array();
  double worst = 0.0;
  double worst_undercut = 0.0;
  for (int i = 0; i < n; ++i) {
    auto s = root.substream(static_cast<std::uint64_t>(i));
    const auto op = random_hermitian(4, s);
    const auto lambda = random_spectrum(4, s);
    const auto closed = min_trace_fixed_spectrum(eig_hermitian(op).values, lambda);
    const auto opt = orbit_optimize(OrbitProblem{TraceObjective{op}, lambda, OrbitDirection::kMinimize},
                                    restarts, optimizer_stream(s));
    const double delta = opt.value - closed;
    worst = std::max(worst, std::abs(delta));
    worst_undercut = std::max(worst_undercut, -delta);
    cases.push_back(Json{{"closed_form", closed}, {"optimizer", opt.value}, {"delta", delta}});
  }
  const bool ok = worst <= 1e-4 && worst_undercut <= 1e-6;
  return {Json{{"suite", "info"},
               {"seed", cfg.seed},
               {"agree", ok},
               {"max_abs_delta", worst},
               {"max_undercut", worst_undercut},
               {"cases", std::move(cases)}},
          ok ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_oracle_supf(int n, int restarts, const Config& cfg) {
  const SeededStream root(cfg.seed);
  Json cases = Json::array();
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    auto s = root.substream(static_cast<std::uint64_t>(i));
    const auto lambda = random_spectrum(4, s);
    const double bound = sup_F_bound(lambda);
    const auto opt = orbit_optimize(OrbitProblem{PolarizationGapObjective{}, lambda, OrbitDirection::kMaximize},
                                    restarts, optimizer_stream(s));
    const auto a = region_vertices(lambda).a;
    const auto w = witness_two_qubit(TwoQubitQuery(a.la, a.lb, lambda));
    const double at_vertex = polarization_gap(w.rho);
    ok = ok && opt.value <= bound + 1e-6 && std::abs(at_vertex - bound) <= 1e-6;
    cases.push_back(Json{{"bound", bound}, {"optimizer", opt.value}, {"vertex_a", at_vertex}});
  }
  return {Json{{"suite", "supf"}, {"seed", cfg.seed}, {"agree", ok}, {"cases", std::move(cases)}},
          ok ? kExitCompatible : kExitIncompatible};
}

Outcome cmd_oracle_sample(int n, std::size_t qubits, const Config& cfg) {
  const auto tol = cfg.tolerances();
  const SeededStream root(cfg.seed);
  long qubit_violations_seen = 0;
  long two_qubit_violations_seen = 0;
  double schmidt_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    auto s = root.substream(static_cast<std::uint64_t>(i));
    std::vector<std::size_t> dims(qubits, 2);
    const auto psi = random_haar_pure(dims, s);
    std::vector<double> lows;
    for (std::size_t k = 0; k < qubits; ++k) {
      lows.push_back(lowest_eigenvalue(partial_trace(psi, std::span<const std::size_t>(&k, 1))));
    }
    if (!check_pure_compat_qubits(QubitMarginVector(lows, tol), tol)) ++qubit_violations_seen;

    const auto lambda = random_spectrum(4, s);
    const auto eta = random_fixed_spectrum(lambda, s, {2, 2});
    const TwoQubitQuery q(lowest_eigenvalue(partial_trace(eta, {0})),
                          lowest_eigenvalue(partial_trace(eta, {1})), lambda, tol);
    if (!check_two_qubit(q, tol)) ++two_qubit_violations_seen;

    const auto bip = random_haar_pure({3, 4}, s);
    schmidt_gap = std::max(schmidt_gap, spectrum_distance(spectrum(partial_trace(bip, {0})),
                                                          spectrum(partial_trace(bip, {1}))));
  }
  const bool ok = qubit_violations_seen == 0 && two_qubit_violations_seen == 0 && schmidt_gap <= 1e-9;
  return {Json{{"suite", "sample"},
               {"seed", cfg.seed},
               {"samples", n},
               {"qubits", qubits},
               {"agree", ok},
               {"qubit_violations", qubit_violations_seen},
               {"two_qubit_violations", two_qubit_violations_seen},
               {"max_schmidt_gap", schmidt_gap}},
          ok ? kExitCompatible : kExitIncompatible};
}

void emit(const Json& body, const Config& cfg, std::ostream& out) {
  const std::string text = round_floats(body).dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw Error("cannot write '" + cfg.output + "'");
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compatibility checks and witness construction for quantum marginals", "qmarg"};
  app.require_subcommand(1);
  Config cfg;
  double tol_value = 0.0;
  app.add_option("--seed", cfg.seed, "Seed for the oracle suites")->default_val(0);
  auto* tol_opt = app.add_option("--tol", tol_value, "Slack for inequality and majorization tests");
  app.add_option("--output", cfg.output, "Write the result to this file");

  std::function<Outcome()> action;

  std::string margins, spec, spec_a, spec_b, lambda, rho_a, rho_b, rho_c;
  std::vector<std::string> locals;
  double la = 0.0, lb = 0.0;
  int n = 0, restarts = 0;
  std::size_t qubits = 3;

  auto two_qubit_opts = [&](CLI::App* c) {
    c->add_option("--la", la, "Lowest eigenvalue of the first qubit")->required();
    c->add_option("--lb", lb, "Lowest eigenvalue of the second qubit")->required();
    c->add_option("--spectrum", spec, "Global spectrum (comma list or JSON)")->required();
  };
  auto triple_opts = [&](CLI::App* c) {
    c->add_option("--rho-a", rho_a, "Matrix JSON file")->required();
    c->add_option("--rho-b", rho_b, "Matrix JSON file")->required();
    c->add_option("--rho-c", rho_c, "Matrix JSON file")->required();
  };

  auto* check = app.add_subcommand("check", "Decide compatibility")->require_subcommand(1);
  auto* cq = check->add_subcommand("qubits", "Pure n-qubit compatibility of lowest eigenvalues");
  cq->add_option("--margins", margins, "Lowest local eigenvalues")->required();
  cq->callback([&] { action = [&] { return cmd_check_qubits(margins, cfg); }; });
  auto* c2 = check->add_subcommand("two-qubit", "Two-qubit state with a fixed spectrum");
  two_qubit_opts(c2);
  c2->callback([&] { action = [&] { return cmd_check_two_qubit(la, lb, spec, cfg); }; });
  auto* cc = check->add_subcommand("conv", "Mixtures of a fixed spectrum's unitary orbit");
  cc->add_option("--spec-a", spec_a, "Spectrum of rho_A")->required();
  cc->add_option("--spec-b", spec_b, "Spectrum of rho_B")->required();
  cc->add_option("--lambda", lambda, "Global spectrum")->required();
  cc->callback([&] { action = [&] { return cmd_check_conv(spec_a, spec_b, lambda, cfg); }; });
  auto* ct = check->add_subcommand("tripartite", "Pairwise necessary conditions for a pure ABC state");
  triple_opts(ct);
  ct->callback([&] { action = [&] { return cmd_check_tripartite(rho_a, rho_b, rho_c, cfg); }; });
  auto* cp = check->add_subcommand("pure-224", "Pure state on C^2 x C^2 x C^4");
  triple_opts(cp);
  cp->callback([&] { action = [&] { return cmd_check_pure_224(rho_a, rho_b, rho_c, cfg); }; });

  auto* witness = app.add_subcommand("witness", "Construct and verify a global state")->require_subcommand(1);
  auto* wq = witness->add_subcommand("qubits", "n-qubit pure state");
  auto* wq_m = wq->add_option("--margins", margins, "Lowest local eigenvalues");
  wq->add_option("--locals", locals, "Qubit density matrix JSON files")->excludes(wq_m);
  wq->callback([&] { action = [&] { return cmd_witness_qubits(margins, locals, cfg); }; });
  auto* w2 = witness->add_subcommand("two-qubit", "Two-qubit state with a fixed spectrum");
  two_qubit_opts(w2);
  w2->callback([&] { action = [&] { return cmd_witness_two_qubit(la, lb, spec, cfg); }; });
  auto* wp = witness->add_subcommand("pure-224", "Pure state on C^2 x C^2 x C^4");
  triple_opts(wp);
  wp->callback([&] { action = [&] { return cmd_witness_pure_224(rho_a, rho_b, rho_c, cfg); }; });
  auto* ws = witness->add_subcommand("separable", "Diagonal state in the local eigenbases");
  ws->add_option("--rho-a", rho_a, "Matrix JSON file")->required();
  ws->add_option("--rho-b", rho_b, "Matrix JSON file")->required();
  ws->add_option("--lambda", lambda, "Global spectrum")->required();
  ws->callback([&] { action = [&] { return cmd_witness_separable(rho_a, rho_b, lambda, cfg); }; });

  auto* region = app.add_subcommand("region", "Corners of the two-qubit region for a spectrum");
  region->add_option("--spectrum", spec, "Four eigenvalues")->required();
  region->callback([&] { action = [&] { return cmd_region(spec, cfg); }; });

  auto* oracle = app.add_subcommand("oracle", "Compare closed forms with numerical search")->require_subcommand(1);
  auto* oi = oracle->add_subcommand("info", "Minimum of tr(O eta) over a unitary orbit");
  oi->add_option("--n", n, "Number of instances")->default_val(5);
  oi->add_option("--restarts", restarts, "Optimizer restarts")->default_val(10);
  oi->callback([&] { action = [&] { return cmd_oracle_info(n, restarts, cfg); }; });
  auto* os = oracle->add_subcommand("supf", "Maximum polarization gap over a unitary orbit");
  os->add_option("--n", n, "Number of spectra")->default_val(5);
  os->add_option("--restarts", restarts, "Optimizer restarts")->default_val(10);
  os->callback([&] { action = [&] { return cmd_oracle_supf(n, restarts, cfg); }; });
  auto* osm = oracle->add_subcommand("sample", "Random states against the necessary conditions");
  osm->add_option("--n", n, "Number of samples")->default_val(1000);
  osm->add_option("--qubits", qubits, "Qubits in the pure-state samples")->default_val(3)->check(
      CLI::Range(std::size_t{2}, std::size_t{10}));
  osm->callback([&] { action = [&] { return cmd_oracle_sample(n, qubits, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitCompatible;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitCompatible;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << "\n";
    return kExitError;
  }
  if (tol_opt->count() > 0) {
    if (!(tol_value >= 0.0)) {
      err << error_json("usage", "--tol must be nonnegative").dump() << "\n";
      return kExitError;
    }
    cfg.tol = tol_value;
  }

  try {
    Outcome result = action();
    emit(result.body, cfg, out);
    return result.code;
  } catch (const SelfCheckFailure& e) {
    err << error_json("self-verification", e.what()).dump() << "\n";
  } catch (const InvalidDensity& e) {
    err << error_json("invalid-density", e.what()).dump() << "\n";
  } catch (const DimensionError& e) {
    err << error_json("dimension", e.what()).dump() << "\n";
  } catch (const ConstructionError& e) {
    err << error_json("construction", e.what()).dump() << "\n";
  } catch (const Json::exception& e) {
    err << error_json("json", e.what()).dump() << "\n";
  } catch (const std::exception& e) {
    err << error_json("input", e.what()).dump() << "\n";
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qmarg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qmarg::cli
