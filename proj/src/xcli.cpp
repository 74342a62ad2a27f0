#include "qrand/xcli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "qrand/bounds.hpp"
#include "qrand/ensemble_io.hpp"
#include "qrand/errors.hpp"
#include "qrand/hiding.hpp"
#include "qrand/locking.hpp"
#include "qrand/pqc.hpp"
#include "qrand/randomizer.hpp"
#include "qrand/version.hpp"

namespace qrand {

namespace {

const std::map<std::string, std::vector<std::string>>& parameter_table()
{
  static const std::map<std::string, std::vector<std::string>> table{
      {"randomize",
       {"d", "n", "kind", "states", "source", "restarts", "choi", "seed", "save-ensemble", "load-ensemble",
        "materialize"}},
      {"pqc", {"d", "n", "kind", "inputs", "pairs", "seed"}},
      {"hide", {"d", "p", "n", "trials", "kind", "povms", "seed"}},
      {"lock", {"d", "n", "kind", "restarts", "iterations", "trials", "seed"}},
      {"uncertainty", {"d", "samples", "lipschitz", "tol", "seed"}},
      {"bounds", {"d", "n", "draws", "states", "seed"}},
      {"net", {"d", "eps", "audit", "streak", "seed"}},
  };
  return table;
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& raw(const std::string& key) const
  {
    auto it = values_.find(key);
    if (it == values_.end()) throw UsageError(key, "missing required parameter --" + key);
    return it->second;
  }

  long long integer(const std::string& key, std::optional<long long> fallback = std::nullopt,
                    long long lo = 1, long long hi = std::numeric_limits<long long>::max()) const
  {
    if (!has(key)) {
      if (fallback) return *fallback;
      raw(key);
    }
    const std::string& text = raw(key);
    long long value = 0;
    std::size_t used = 0;
    try {
      value = std::stoll(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw UsageError(key, "--" + key + " must be an integer, got '" + text + "'");
    if (value < lo || value > hi) {
      throw UsageError(key, "--" + key + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return value;
  }

  double real(const std::string& key, std::optional<double> fallback, double lo, double hi) const
  {
    if (!has(key)) {
      if (fallback) return *fallback;
      raw(key);
    }
    const std::string& text = raw(key);
    double value = 0.0;
    std::size_t used = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
      throw UsageError(key, "--" + key + " must be a number, got '" + text + "'");
    }
    if (value < lo || value > hi) throw UsageError(key, "--" + key + " out of range");
    return value;
  }

  bool boolean(const std::string& key, bool fallback) const
  {
    if (!has(key)) return fallback;
    const std::string& text = raw(key);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw UsageError(key, "--" + key + " must be true or false");
  }

  std::string text(const std::string& key, const std::string& fallback) const
  {
    return has(key) ? raw(key) : fallback;
  }

  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed", 1, 0)); }

 private:
  const std::map<std::string, std::string>& values_;
};

EnsembleKind kind_param(const Params& params, const std::string& fallback,
                        std::initializer_list<EnsembleKind> allowed)
{
  const std::string name = params.text("kind", fallback);
  EnsembleKind kind;
  try {
    kind = parse_ensemble_kind(name);
  } catch (const DomainError&) {
    throw UsageError("kind", "unknown ensemble kind '" + name + "'");
  }
  if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end()) {
    throw UsageError("kind", "ensemble kind '" + name + "' is not supported by this command");
  }
  return kind;
}

void add_summary(ExperimentReport& report, const std::string& prefix, const Summary& s)
{
  report.statistics.emplace_back(prefix + ".count", static_cast<double>(s.count));
  report.statistics.emplace_back(prefix + ".mean", s.mean);
  report.statistics.emplace_back(prefix + ".median", s.median);
  report.statistics.emplace_back(prefix + ".std_error", s.std_error);
  report.statistics.emplace_back(prefix + ".min", s.min);
  report.statistics.emplace_back(prefix + ".max", s.max);
}

void stat(ExperimentReport& report, const std::string& name, double value)
{
  report.statistics.emplace_back(name, value);
}

void flag(ExperimentReport& report, const std::string& name, bool value)
{
  report.flags.emplace_back(name, value);
}

std::vector<PureState> haar_states(Index d, std::size_t count, const SeededStream& stream)
{
  std::vector<PureState> states;
  states.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    SeededStream child = stream.derive(k);
    states.push_back(haar_pure_state(d, child));
  }
  return states;
}

void run_randomize(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  std::optional<UnitaryEnsemble> ensemble;
  if (params.has("load-ensemble")) {
    ensemble = load_ensemble(params.raw("load-ensemble"));
  } else {
    const Index d = params.integer("d", std::nullopt, 1, 4096);
    const Index n = params.integer("n", std::nullopt, 1);
    const EnsembleKind kind = kind_param(params, "haar", {EnsembleKind::haar, EnsembleKind::weyl, EnsembleKind::pauli});
    ensemble = build_ensemble(d, n, kind, root.derive(0));
  }
  if (params.has("save-ensemble")) {
    std::optional<bool> materialize;
    if (params.has("materialize")) materialize = params.boolean("materialize", false);
    save_ensemble(*ensemble, params.raw("save-ensemble"), materialize);
  }
  const RandomizingMap map(std::move(*ensemble));
  const Index d = map.dim();
  const auto states = static_cast<std::size_t>(params.integer("states", 100));
  const std::string source = params.text("source", "haar-samples");

  DeviationReport deviations;
  if (source == "haar-samples") {
    deviations = measure_epsilon_haar(map, states, root.derive(1));
  } else if (source == "adversarial-restarts") {
    deviations = measure_epsilon_adversarial(map, static_cast<std::size_t>(params.integer("restarts", 20)),
                                             root.derive(2));
  } else {
    throw UsageError("source", "--source must be haar-samples or adversarial-restarts");
  }

  stat(report, "dim", static_cast<double>(d));
  stat(report, "n", static_cast<double>(map.size()));
  stat(report, "epsilon_emp", deviations.epsilon_emp);
  add_summary(report, "deviation", summarize(deviations.deviations));
  if (d >= 2) stat(report, "key_length_at_epsilon_emp",
                   deviations.epsilon_emp > 0.0 && deviations.epsilon_emp <= 1.0
                       ? key_length(d, deviations.epsilon_emp)
                       : std::numeric_limits<double>::quiet_NaN());
  if (map.ensemble().full_weyl()) flag(report, "weyl_exact", deviations.epsilon_emp <= 1e-10);

  if (params.boolean("choi", false)) {
    const EntanglementProbe probe = entangled_probe(map);
    stat(report, "choi_rank", static_cast<double>(probe.choi_rank));
    stat(report, "choi_trace_distance", probe.trace_distance);
    stat(report, "choi_distance_floor", probe.distance_floor);
    flag(report, "choi_rank_within_n", probe.rank_within_n);
    flag(report, "choi_distance_above_floor", probe.distance_above_floor);
  }

  report.columns = {"state", "deviation"};
  for (std::size_t k = 0; k < deviations.deviations.size(); ++k) {
    report.rows.push_back({static_cast<double>(k), deviations.deviations[k]});
  }
}

void run_pqc(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  const Index d = params.integer("d", std::nullopt, 1, 1024);
  const EnsembleKind kind = kind_param(params, "weyl", {EnsembleKind::haar, EnsembleKind::weyl, EnsembleKind::pauli});
  const Index n = params.integer("n", d * d);
  const auto inputs = static_cast<std::size_t>(params.integer("inputs", 16, 1, kMaxHolevoInputs));
  const auto pairs = static_cast<std::size_t>(params.integer("pairs", 8));

  const RandomizingMap map(build_ensemble(d, n, kind, root.derive(0)));
  const std::vector<PureState> states = haar_states(d, inputs, root.derive(1));

  // Keyed round trip on a handful of (state, key) pairs.
  double round_trip = 0.0;
  SeededStream keys = root.derive(2);
  for (std::size_t k = 0; k < pairs; ++k) {
    const DensityOperator rho = DensityOperator::from_pure(states[k % states.size()]);
    const ChannelKey key{static_cast<Index>(keys.index(static_cast<std::uint64_t>(n)))};
    const DensityOperator back = decrypt(map, key, encrypt(map, key, rho));
    round_trip = std::max(round_trip, (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
  }

  std::vector<std::pair<double, DensityOperator>> members;
  for (const auto& s : states) members.emplace_back(1.0 / static_cast<double>(inputs), DensityOperator::from_pure(s));
  const double chi = holevo_quantity(map, StateEnsembleInput(std::move(members)));
  const DeviationReport deviations = measure_epsilon(map, states, StateSource::haar_samples);
  const HolevoBound bound = holevo_bound(deviations.epsilon_emp);

  stat(report, "round_trip_max_error", round_trip);
  stat(report, "chi", chi);
  stat(report, "epsilon_emp", deviations.epsilon_emp);
  stat(report, "chi_bound_log", bound.log_form);
  stat(report, "chi_bound_linear", bound.linear_form);
  flag(report, "round_trip", round_trip <= 1e-10);
  flag(report, "chi_within_bound", chi <= bound.log_form + 1e-6);
  if (map.ensemble().full_weyl()) flag(report, "weyl_chi_zero", chi <= 1e-9);

  report.columns = {"input", "deviation"};
  for (std::size_t k = 0; k < deviations.deviations.size(); ++k) {
    report.rows.push_back({static_cast<double>(k), deviations.deviations[k]});
  }
}

void run_hide(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  const Index d = params.integer("d", std::nullopt, 1, 32);
  const Index p = params.integer("p", std::nullopt, 1, d);
  const Index n = params.integer("n", std::nullopt, 1);
  const auto trials = static_cast<std::size_t>(params.integer("trials", 100));
  const auto povms = static_cast<std::size_t>(params.integer("povms", 0, 0));
  const EnsembleKind kind = kind_param(params, "haar", {EnsembleKind::haar, EnsembleKind::weyl});
  const double big = static_cast<double>(d * d);

  std::vector<double> fidelities(trials);
  std::vector<double> deltas(trials);
  std::vector<double> success(trials);
  double completeness = 0.0;
  double same_block = 0.0;
  std::size_t violations = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SeededStream trial = root.derive(t);
    const HidingScheme scheme = build_scheme(d, p, n, trial.derive(0), kind);
    SeededStream state_stream = trial.derive(1);
    const PureState phi = haar_pure_state(p, state_stream);
    const DecoderOutcome outcome = decode(scheme, encode(scheme, phi));
    fidelities[t] = decoded_fidelity(outcome, phi);
    success[t] = outcome.success_probability();
    const DeltaSummary summary = delta_summary(scheme);
    deltas[t] = summary.mean_delta;
    same_block = std::max(same_block, summary.max_same_block);
    violations += summary.criterion_violations;
    completeness = std::max(completeness, scheme.completeness_residual());
  }

  const Summary fidelity = summarize(fidelities);
  const Summary delta = summarize(deltas);
  const double expected_delta = static_cast<double>((n - 1) * p) / big;
  const double fidelity_threshold = 1.0 - 3.0 * static_cast<double>((n - 1) * p) / (2.0 * big) - 0.05;
  add_summary(report, "fidelity", fidelity);
  add_summary(report, "delta", delta);
  add_summary(report, "success_probability", summarize(success));
  stat(report, "delta_expected", expected_delta);
  stat(report, "fidelity_threshold", fidelity_threshold);
  stat(report, "completeness_residual_max", completeness);
  stat(report, "same_block_overlap_max", same_block);
  stat(report, "hausladen_violations", static_cast<double>(violations));
  flag(report, "kraus_completeness", completeness <= 1e-8);
  flag(report, "hausladen", violations == 0);
  if (kind == EnsembleKind::haar && trials >= 2) {
    flag(report, "delta_within_3se", std::abs(delta.mean - expected_delta) <= 3.0 * delta.std_error);
  }
  flag(report, "fidelity_threshold", fidelity.mean >= fidelity_threshold);

  if (povms > 0) {
    if (p < 2) throw UsageError("povms", "--povms needs p >= 2 for an orthogonal hidden pair");
    const HidingScheme scheme = build_scheme(d, p, n, root.derive(trials).derive(0), kind);
    const PureState phi0 = PureState::basis(p, 0);
    const PureState phi1 = PureState::basis(p, 1);
    std::vector<double> probes(povms);
    for (std::size_t k = 0; k < povms; ++k) {
      probes[k] = security_probe(scheme, phi0, phi1, random_product_povm(d, root.derive(trials + 1).derive(k)))
                      .l1_distance;
    }
    add_summary(report, "probe", summarize(probes));
    if (scheme.ensemble().full_weyl()) {
      flag(report, "probe_exact", *std::max_element(probes.begin(), probes.end()) <= 1e-9);
    }
  }

  report.columns = {"trial", "fidelity", "mean_delta", "success_probability"};
  for (std::size_t t = 0; t < trials; ++t) {
    report.rows.push_back({static_cast<double>(t), fidelities[t], deltas[t], success[t]});
  }
}

void run_lock(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  const Index d = params.integer("d", std::nullopt, 2, 4096);
  const std::string kind = params.text("kind", "mub");
  OptimizerConfig config;
  config.restarts = static_cast<std::size_t>(params.integer("restarts", 50));
  config.iterations = static_cast<std::size_t>(params.integer("iterations", 500));
  const auto trials = static_cast<std::size_t>(params.integer("trials", 1));

  std::vector<double> best(trials);
  std::vector<double> ic(trials);
  Index n = 2;
  double r1 = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t t = 0; t < trials; ++t) {
    const SeededStream trial = root.derive(t);
    std::optional<BasisEnsembleState> state;
    if (kind == "mub") {
      if (params.has("n") && params.integer("n") != 2) throw UsageError("n", "--n must be 2 for the mub pair");
      state = fourier_pair_state(d);
    } else if (kind == "haar" || kind == "weyl") {
      n = params.integer("n", std::nullopt, 1);
      state = BasisEnsembleState(build_ensemble(d, n, parse_ensemble_kind(kind), trial.derive(0)));
    } else {
      throw UsageError("kind", "--kind must be mub, haar or weyl");
    }
    const LockingReport locking = ic_upper_bound(*state, config, trial.derive(1));
    best[t] = locking.best_average_entropy;
    ic[t] = locking.ic_upper;
    if (t == 0) {
      r1 = locking.r1_upper;
      r2 = locking.r2_upper;
    }
  }
  const double log_d = std::log2(static_cast<double>(d));
  const Summary summary = summarize(best);
  add_summary(report, "best_average_entropy", summary);
  add_summary(report, "ic_upper", summarize(ic));
  stat(report, "ic_unlocked", log_d + std::log2(static_cast<double>(n)));
  stat(report, "r1_upper", r1);
  stat(report, "r2_upper", r2);
  if (kind == "mub") flag(report, "mub_uncertainty", summary.min >= log_d / 2.0 - 1e-3);

  report.columns = {"trial", "best_average_entropy", "ic_upper"};
  for (std::size_t t = 0; t < trials; ++t) report.rows.push_back({static_cast<double>(t), best[t], ic[t]});
}

void run_uncertainty(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  const Index d = params.integer("d", std::nullopt, 2, 1 << 16);
  const auto samples = static_cast<std::size_t>(params.integer("samples", 20000));
  const auto lipschitz = static_cast<std::size_t>(params.integer("lipschitz", 1000, 0));
  const double tolerance = params.real("tol", 0.01, 0.0, 1.0);

  const std::vector<double> entropies = haar_measurement_entropies(d, samples, root.derive(0));
  const Summary summary = summarize(entropies);
  const double expected = expected_entropy_haar(d);
  add_summary(report, "entropy", summary);
  stat(report, "entropy_expected", expected);
  stat(report, "delta_d", delta_d(d));
  stat(report, "harmonic_gap", harmonic_gap(d));
  flag(report, "entropy_mean", std::abs(summary.mean - expected) <= tolerance);
  if (d >= 7) flag(report, "delta_window", delta_d(d) > 0.5 && delta_d(d) < 1.0);
  const double gap = harmonic_gap(d);
  const double dd = static_cast<double>(d);
  flag(report, "harmonic_sandwich", gap > 1.0 / (2.0 * (dd + 1.0)) && gap < 1.0 / (2.0 * dd));
  if (d >= 3 && lipschitz > 0) {
    const LipschitzAudit audit = lipschitz_audit(d, lipschitz, root.derive(1));
    stat(report, "lipschitz_max_observed", audit.max_observed);
    stat(report, "lipschitz_bound", audit.bound);
    flag(report, "lipschitz_within_bound", audit.within_bound);
  }

  report.columns = {"sample", "entropy"};
  for (std::size_t s = 0; s < entropies.size(); ++s) report.rows.push_back({static_cast<double>(s), entropies[s]});
}

void run_bounds(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  const Index d = params.integer("d", 16, 1, 1 << 12);
  const Index n = params.integer("n", 64);
  const auto draws = static_cast<std::size_t>(params.integer("draws", 50));
  const auto states = static_cast<std::size_t>(params.integer("states", 20));

  const PauliTraceNormReport pauli = pauli_trace_norm_experiment(d, n, draws, states, root.derive(0));
  stat(report, "grand_mean", pauli.grand_mean);
  stat(report, "std_error", pauli.std_error);
  stat(report, "bound", pauli.bound);
  flag(report, "pauli_trace_norm", pauli.within_bound);

  bool floor_holds = true;
  for (int k = 1; k <= 99; ++k) {
    const double eps = k / 100.0;
    const double floor = eps * eps / 6.0;
    floor_holds = floor_holds && rate_function_exp(1.0 + eps) >= floor && rate_function_exp(1.0 - eps) >= floor;
  }
  flag(report, "rate_function_floor", floor_holds);

  report.columns = {"draw", "mean_deviation"};
  for (std::size_t k = 0; k < pauli.draw_means.size(); ++k) {
    report.rows.push_back({static_cast<double>(k), pauli.draw_means[k]});
  }
}

void run_net(const Params& params, ExperimentReport& report)
{
  const SeededStream root(params.seed());
  const Index d = params.integer("d", 2, 1, 4);
  const double eps = params.real("eps", 0.5, 0.3, 0.999999);
  const auto audit_samples = static_cast<std::size_t>(params.integer("audit", 10000, 0));
  const auto streak = static_cast<std::size_t>(params.integer("streak", static_cast<long long>(kNetRejectionStreak)));

  const StateNet net = build_state_net(d, eps, root.derive(0), streak);
  const double size_bound = std::pow(5.0 / eps, 2.0 * static_cast<double>(d));
  const double packing = min_pairwise_distance(net);
  stat(report, "net_size", static_cast<double>(net.points.size()));
  stat(report, "size_bound", size_bound);
  stat(report, "candidates_drawn", static_cast<double>(net.candidates_drawn));
  stat(report, "min_pairwise_distance", net.points.size() < 2 ? 0.0 : packing);
  flag(report, "packing", packing >= eps);
  flag(report, "size_within_bound", static_cast<double>(net.points.size()) <= size_bound);
  if (audit_samples > 0) {
    const CoveringAudit audit = audit_covering(net, audit_samples, root.derive(1));
    stat(report, "audit_samples", static_cast<double>(audit.samples));
    stat(report, "uncovered", static_cast<double>(audit.uncovered));
    stat(report, "worst_distance", audit.worst_distance);
    flag(report, "covering", audit.uncovered == 0);
  }
  report.columns = {"point"};
  for (std::size_t k = 0; k < net.points.size(); ++k) report.rows.push_back({static_cast<double>(k)});
}

std::string format_number(double value)
{
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

nlohmann::ordered_json number_json(double value)
{
  if (std::isfinite(value)) return value;
  return format_number(value);
}

}  // namespace

const std::vector<std::string>& experiment_commands()
{
  static const std::vector<std::string> commands = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : parameter_table()) out.push_back(name);
    return out;
  }();
  return commands;
}

const std::vector<std::string>& command_parameters(const std::string& command)
{
  auto it = parameter_table().find(command);
  if (it == parameter_table().end()) throw UsageError("command", "unknown command '" + command + "'");
  return it->second;
}

bool ExperimentReport::all_passed() const
{
  if (error) return false;
  return std::all_of(flags.begin(), flags.end(), [](const auto& f) { return f.second; });
}

double ExperimentReport::statistic(const std::string& name) const
{
  for (const auto& [key, value] : statistics) {
    if (key == name) return value;
  }
  throw std::out_of_range("no statistic named " + name);
}

bool ExperimentReport::flag(const std::string& name) const
{
  for (const auto& [key, value] : flags) {
    if (key == name) return value;
  }
  throw std::out_of_range("no flag named " + name);
}

std::string ExperimentReport::statistics_json() const
{
  nlohmann::ordered_json doc;
  doc["statistics"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : statistics) doc["statistics"][key] = number_json(value);
  doc["flags"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : flags) doc["flags"][key] = value;
  return doc.dump();
}

std::string ExperimentReport::to_json() const
{
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["config"] = config;
  doc["version"] = version;
  doc["wall_seconds"] = wall_seconds;
  doc["statistics"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : statistics) doc["statistics"][key] = number_json(value);
  doc["flags"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : flags) doc["flags"][key] = value;
  doc["all_passed"] = all_passed();
  doc["error"] = error ? nlohmann::ordered_json(*error) : nlohmann::ordered_json(nullptr);
  return doc.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const
{
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

ExperimentReport run(const ExperimentConfig& config)
{
  const auto& allowed = command_parameters(config.command);
  for (const auto& [key, _] : config.params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError(key, "parameter --" + key + " is not accepted by '" + config.command + "'");
    }
  }

  ExperimentReport report;
  report.command = config.command;
  report.config = config.params;
  report.version = std::string(kVersion) + " (" + std::string(kGitDescribe) + ")";
  const Params params(config.params);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (config.command == "randomize") run_randomize(params, report);
    else if (config.command == "pqc") run_pqc(params, report);
    else if (config.command == "hide") run_hide(params, report);
    else if (config.command == "lock") run_lock(params, report);
    else if (config.command == "uncertainty") run_uncertainty(params, report);
    else if (config.command == "bounds") run_bounds(params, report);
    else run_net(params, report);
  } catch (const UsageError&) {
    throw;
  } catch (const FormatError&) {
    throw;
  } catch (const DomainError& e) {
    report.error = std::string("guard: ") + e.what();
  } catch (const ContractError& e) {
    report.error = std::string("contract: ") + e.what();
  } catch (const DimensionError& e) {
    report.error = std::string("dimension: ") + e.what();
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!config.output_path.empty()) {
    write_file_atomically(config.output_path + ".json", report.to_json());
    write_file_atomically(config.output_path + ".csv", report.to_csv());
  }
  return report;
}

}  // namespace qrand
