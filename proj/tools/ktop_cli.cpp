// Command-line front end: each subcommand reproduces one of the shipped
// experiments and writes CSV or JSON data files (no plotting).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ktop/experiments.hpp"
#include "ktop/io.hpp"
#include "ktop/version.hpp"

namespace {

using namespace ktop;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key=value file; later entries win, '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Config values override already-parsed flags.
struct Overrides {
  std::map<std::string, std::string> kv;

  void apply(const std::string& key, std::string& v) const {
    if (auto it = kv.find(key); it != kv.end()) v = it->second;
  }
  void apply(const std::string& key, double& v) const {
    if (auto it = kv.find(key); it != kv.end()) v = std::stod(it->second);
  }
  void apply(const std::string& key, int& v) const {
    if (auto it = kv.find(key); it != kv.end()) v = std::stoi(it->second);
  }
  void apply(const std::string& key, std::uint64_t& v) const {
    if (auto it = kv.find(key); it != kv.end()) v = std::stoull(it->second);
  }
  void apply(const std::string& key, bool& v) const {
    if (auto it = kv.find(key); it != kv.end())
      v = (it->second == "1" || it->second == "true" || it->second == "yes");
  }
  void apply(const std::string& key, std::vector<std::string>& v) const {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    v.clear();
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ';')) v.push_back(trim(item));
  }
};

SphericalDirection parse_direction(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected THETA,PHI: " + text);
  return SphericalDirection(std::stod(text.substr(0, comma)),
                            std::stod(text.substr(comma + 1)));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(trim(item)));
  return out;
}

std::pair<int, int> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("expected MIN:MAX window: " + text);
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

struct CommonOptions {
  double kappa = 0.5;
  int qubits = 3;
  int steps = 20;
  std::string grid = "31x61";
  std::string mode = "full";
  std::string backend = "dicke";
  std::uint64_t seed = 1;
  std::string out = "out.csv";
  std::string format = "csv";
  std::string config;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--kappa", kappa, "kick strength");
    cmd->add_option("--qubits", qubits, "number of qubits n");
    cmd->add_option("--steps", steps, "Floquet steps N");
    cmd->add_option("--grid", grid, "initial-state grid, THETAxPHI");
    cmd->add_option("--mode", mode,
                    "full|rotations_only|interactions_only|idle");
    cmd->add_option("--backend", backend, "register|dicke");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--out", out, "output path");
    cmd->add_option("--format", format, "csv|json");
    cmd->add_option("--config", config, "key=value file overriding flags");
  }

  void merge_config(const Overrides& o) {
    o.apply("kappa", kappa);
    o.apply("qubits", qubits);
    o.apply("steps", steps);
    o.apply("grid", grid);
    o.apply("mode", mode);
    o.apply("backend", backend);
    o.apply("seed", seed);
    o.apply("out", out);
    o.apply("format", format);
  }

  bool json() const {
    if (format == "json") return true;
    if (format == "csv") return false;
    throw std::invalid_argument("unknown format: " + format);
  }
  FloquetParameters parameters() const { return {kappa, kPi / 2}; }
};

struct NoiseOptions {
  double t1_ns = std::numeric_limits<double>::infinity();
  double tphi_ns = std::numeric_limits<double>::infinity();
  double rotation_ns = 20.0;
  double interaction_ns = 25.0;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--t1-ns", t1_ns, "energy decay time (ns, inf disables)");
    cmd->add_option("--tphi-ns", tphi_ns, "pure dephasing time (ns, inf disables)");
    cmd->add_option("--rotation-ns", rotation_ns, "rotation pulse duration (ns)");
    cmd->add_option("--interaction-ns", interaction_ns,
                    "interaction pulse duration (ns)");
  }
  void merge_config(const Overrides& o) {
    o.apply("t1-ns", t1_ns);
    o.apply("tphi-ns", tphi_ns);
    o.apply("rotation-ns", rotation_ns);
    o.apply("interaction-ns", interaction_ns);
  }
  NoiseParameters parameters() const {
    return NoiseParameters::uniform(t1_ns, tphi_ns, rotation_ns, interaction_ns);
  }
  bool enabled() const { return parameters().enabled(); }
};

std::vector<std::pair<int, double>> series_rows(const std::vector<double>& values,
                                                int first_step) {
  std::vector<std::pair<int, double>> rows;
  rows.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    rows.emplace_back(first_step + int(i), values[i]);
  return rows;
}

void run_entropy_map(CommonOptions& common, NoiseOptions& noise,
                     std::string& average) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  noise.merge_config(o);
  o.apply("average", average);
  const GridSpec grid = GridSpec::parse(common.grid);
  const std::optional<NoiseParameters> np =
      noise.enabled() ? std::optional<NoiseParameters>(noise.parameters())
                      : std::nullopt;
  const ScanMode mode = scan_mode_from_string(common.mode);
  const Backend backend = backend_from_string(common.backend);
  if (average == "time_average") {
    EntropyMap map = entropy_map_scan(common.parameters(), common.qubits,
                                      common.steps, grid, mode, np, backend);
    map.meta.seed = common.seed;
    write_file(common.out,
               common.json() ? dump_json(entropy_map_json(map)) : entropy_map_csv(map));
  } else if (average == "per_step_snapshots") {
    auto maps = entropy_map_snapshots(common.parameters(), common.qubits,
                                      common.steps, grid, mode, np, backend);
    for (auto& m : maps) m.meta.seed = common.seed;
    if (common.json()) {
      nlohmann::json j = {{"meta", meta_json(maps.back().meta)},
                          {"maps", nlohmann::json::array()}};
      for (const auto& m : maps) j["maps"].push_back(entropy_map_json(m));
      write_file(common.out, dump_json(j));
    } else {
      for (std::size_t k = 0; k < maps.size(); ++k) {
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "_N%03zu", k);
        write_file(with_suffix(common.out, suffix), entropy_map_csv(maps[k]));
      }
    }
  } else {
    throw std::invalid_argument("unknown average: " + average);
  }
}

void run_snapshots(CommonOptions& common) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  auto maps = snapshots_experiment(common.parameters(), common.qubits,
                                   common.steps, GridSpec::parse(common.grid));
  for (auto& m : maps) m.meta.seed = common.seed;
  if (common.json()) {
    nlohmann::json j = {{"meta", meta_json(maps.back().meta)},
                        {"maps", nlohmann::json::array()}};
    for (const auto& m : maps) j["maps"].push_back(entropy_map_json(m));
    write_file(common.out, dump_json(j));
  } else {
    for (std::size_t k = 0; k < maps.size(); ++k) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_N%03zu", k);
      write_file(with_suffix(common.out, suffix), entropy_map_csv(maps[k]));
    }
  }
}

void run_trajectory(CommonOptions& common, std::string& initial) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("initial", initial);
  const TrajectoryRecord record = trajectory_experiment(
      parse_direction(initial), common.parameters(), common.qubits, common.steps);
  MapMeta meta{"trajectory", common.kappa, common.qubits, common.steps,
               Backend::Dicke, ScanMode::Full, common.seed, GridSpec{}, kVersion};
  write_file(common.out, common.json() ? dump_json(trajectory_json(record, meta))
                                       : trajectory_csv(record));
}

void run_classical_map(CommonOptions& common, int& trajectories) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("trajectories", trajectories);
  const StroboscopicCloud cloud =
      stroboscopic_map(common.kappa, trajectories, common.steps, common.seed);
  MapMeta meta{"classical-map", common.kappa, 0, common.steps, Backend::Dicke,
               ScanMode::Full, common.seed, GridSpec{}, kVersion};
  write_file(common.out,
             common.json() ? dump_json(cloud_json(cloud, meta)) : cloud_csv(cloud));
}

void run_ergodicity(CommonOptions& common, std::vector<std::string>& initials,
                    bool& include_initial) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("initial", initials);
  o.apply("include-initial", include_initial);
  std::vector<SphericalDirection> dirs;
  for (const std::string& text : initials) dirs.push_back(parse_direction(text));
  const auto series = ergodicity_experiment(common.parameters(), common.qubits,
                                            dirs, common.steps, include_initial);
  MapMeta meta{"ergodicity", common.kappa, common.qubits, common.steps,
               Backend::Dicke, ScanMode::Full, common.seed, GridSpec{}, kVersion};
  if (common.json()) {
    nlohmann::json j = {{"meta", meta_json(meta)},
                        {"series", nlohmann::json::array()}};
    j["meta"]["include_initial"] = include_initial;
    for (const OverlapSeries& s : series) {
      nlohmann::json data = nlohmann::json::array();
      for (std::size_t i = 0; i < s.overlaps.size(); ++i)
        data.push_back({{"step", i + 1}, {"value", s.overlaps[i]}});
      j["series"].push_back({{"initial", {{"theta", s.initial.theta},
                                          {"phi", s.initial.phi}}},
                             {"data", std::move(data)}});
    }
    write_file(common.out, dump_json(j));
  } else {
    for (std::size_t i = 0; i < series.size(); ++i) {
      char suffix[24];
      std::snprintf(suffix, sizeof suffix, "_init%zu", i);
      write_file(with_suffix(common.out, suffix),
                 series_csv(series_rows(series[i].overlaps, 1)));
    }
  }
}

void run_finite_size(CommonOptions& common, std::string& qubit_list,
                     std::string& window, std::string& initial) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("qubit-list", qubit_list);
  o.apply("window", window);
  o.apply("initial", initial);
  const ScalingTable table = finite_size_experiment(
      common.parameters(), parse_int_list(qubit_list), parse_window(window),
      parse_direction(initial));
  MapMeta meta{"finite-size", common.kappa, 0, table.window.second,
               Backend::Dicke, ScanMode::Full, common.seed, GridSpec{}, kVersion};
  write_file(common.out, common.json() ? dump_json(scaling_json(table, meta))
                                       : scaling_csv(table));
}

void run_full_chaos(CommonOptions& common, std::string& qubit_list) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("qubit-list", qubit_list);
  const GridSpec grid = GridSpec::parse(common.grid);
  const FullChaosResult result = full_chaos_experiment(
      common.kappa, parse_int_list(qubit_list), grid, common.steps, common.seed);
  if (common.json()) {
    MapMeta meta{"full-chaos", common.kappa, 0, common.steps, Backend::Dicke,
                 ScanMode::Full, common.seed, grid, kVersion};
    nlohmann::json j = {{"meta", meta_json(meta)},
                        {"maps", nlohmann::json::array()}};
    for (const EntropyMap& m : result.maps) j["maps"].push_back(entropy_map_json(m));
    j["cloud"] = cloud_json(result.cloud, meta);
    write_file(common.out, dump_json(j));
  } else {
    for (const EntropyMap& m : result.maps) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "_n%02d", m.meta.qubits);
      write_file(with_suffix(common.out, suffix), entropy_map_csv(m));
    }
    write_file(with_suffix(common.out, "_cloud"), cloud_csv(result.cloud));
  }
}

void run_pauli_bars(CommonOptions& common, std::string& initial_low,
                    std::string& initial_high) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("initial-low", initial_low);
  o.apply("initial-high", initial_high);
  const auto [low, high] = pauli_bars_experiment(
      parse_direction(initial_low), parse_direction(initial_high),
      common.parameters(), common.qubits, common.steps);
  MapMeta meta{"pauli-bars", common.kappa, common.qubits, common.steps,
               Backend::Register, ScanMode::Full, common.seed, GridSpec{}, kVersion};
  if (common.json()) {
    nlohmann::json j = {{"meta", meta_json(meta)},
                        {"low", pauli_json(low, meta)["data"]},
                        {"high", pauli_json(high, meta)["data"]}};
    write_file(common.out, dump_json(j));
  } else {
    write_file(with_suffix(common.out, "_low"), pauli_csv(low));
    write_file(with_suffix(common.out, "_high"), pauli_csv(high));
  }
}

void run_purity(CommonOptions& common, NoiseOptions& noise, std::string& initial_a,
                std::string& initial_b) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  noise.merge_config(o);
  o.apply("initial-a", initial_a);
  o.apply("initial-b", initial_b);
  const auto [a, b] = purity_experiment(
      parse_direction(initial_a), parse_direction(initial_b), common.qubits,
      common.parameters(), noise.parameters(), common.steps);
  MapMeta meta{"purity", common.kappa, common.qubits, common.steps,
               Backend::Register, ScanMode::Full, common.seed, GridSpec{}, kVersion};
  if (common.json()) {
    nlohmann::json j = {{"meta", meta_json(meta)},
                        {"series_a", series_json(series_rows(a.values, 0), meta)["data"]},
                        {"series_b", series_json(series_rows(b.values, 0), meta)["data"]}};
    write_file(common.out, dump_json(j));
  } else {
    write_file(with_suffix(common.out, "_a"), series_csv(series_rows(a.values, 0)));
    write_file(with_suffix(common.out, "_b"), series_csv(series_rows(b.values, 0)));
  }
}

void run_tomography_demo(CommonOptions& common, std::string& state,
                         std::uint64_t& shots) {
  const Overrides o{read_config(common.config)};
  common.merge_config(o);
  o.apply("state", state);
  o.apply("shots", shots);
  const int n = common.qubits;
  DensityOperator truth = DensityOperator::register_basis(
      n, Eigen::MatrixXcd::Zero(std::int64_t(1) << n, std::int64_t(1) << n));
  if (state == "zero") {
    truth.elements(0, 0) = 1.0;
  } else if (state == "ghz") {
    const std::int64_t last = truth.dim() - 1;
    truth.elements(0, 0) = truth.elements(0, last) = 0.5;
    truth.elements(last, 0) = truth.elements(last, last) = 0.5;
  } else if (state == "evolved") {
    RegisterVector psi = coherent_state_register(n, chaotic_initial_a());
    for (int k = 0; k < common.steps; ++k)
      psi = step_register(psi, common.parameters());
    truth = DensityOperator::pure(psi);
  } else {
    throw std::invalid_argument("unknown state (zero|ghz|evolved): " + state);
  }
  const auto settings = tomography_settings(n);
  const auto records = simulate_counts(truth, settings, shots, common.seed);
  const DensityOperator reconstructed = mle_reconstruct(records);
  const double f = overlap_with_theory(reconstructed, truth);
  MapMeta meta{"tomography-demo", common.kappa, n, common.steps, Backend::Register,
               ScanMode::Full, common.seed, GridSpec{}, kVersion};
  if (common.json()) {
    nlohmann::json j = {{"meta", meta_json(meta)},
                        {"state", state},
                        {"shots", shots},
                        {"fidelity_to_truth", f},
                        {"reconstruction_purity", purity(reconstructed)},
                        {"records", count_records_json(records)["records"]}};
    write_file(common.out, dump_json(j));
  } else {
    std::string csv = "quantity,value\n";
    csv += "fidelity_to_truth," + format_double(f) + "\n";
    csv += "reconstruction_purity," + format_double(purity(reconstructed)) + "\n";
    write_file(common.out, csv);
    write_file(with_suffix(common.out, "_counts") + ".json",
               dump_json(count_records_json(records)));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum kicked top simulator"};
  app.set_version_flag("--version", ktop::kVersion);
  app.require_subcommand(1);

  CommonOptions common;
  NoiseOptions noise;
  NoiseOptions purity_noise;
  purity_noise.t1_ns = 15000.0;  // hardware-scale defaults
  purity_noise.tphi_ns = 3000.0;
  std::string average = "time_average";
  std::string initial = "1.2708,0.6";
  std::vector<std::string> initials = {"1.18,2.62", "2.45,0.87", "1.5708,-1.5708"};
  bool include_initial = false;
  int trajectories = 500;
  std::string qubit_list = "4,6,8,10";
  std::string chaos_qubit_list = "4,8,10";
  std::string window = "10:500";
  std::string fs_initial = "1.2708,0.6";
  std::string initial_low = "1.5708,-1.5708";
  std::string initial_high = "2.9,-2.4";
  std::string initial_a = "1.55,2.1389";
  std::string initial_b = "0.65,-2.15";
  std::string tomo_state = "ghz";
  std::uint64_t shots = 10000;

  auto* entropy_map = app.add_subcommand("entropy-map", "time-averaged entropy over an initial-state grid");
  common.add_flags(entropy_map);
  noise.add_flags(entropy_map);
  entropy_map->add_option("--average", average, "time_average|per_step_snapshots");
  entropy_map->callback([&] { run_entropy_map(common, noise, average); });

  auto* snapshots = app.add_subcommand("snapshots", "per-step entropy maps, N = 0..steps");
  common.add_flags(snapshots);
  snapshots->callback([&] { run_snapshots(common); });

  auto* trajectory = app.add_subcommand("trajectory", "single-qubit Bloch vector and entropy per step");
  common.add_flags(trajectory);
  trajectory->add_option("--initial", initial, "initial state THETA,PHI");
  trajectory->callback([&] {
    if (!trajectory->count("--kappa")) common.kappa = 2.5;
    run_trajectory(common, initial);
  });

  auto* classical = app.add_subcommand("classical-map", "stroboscopic cloud of the classical top");
  common.add_flags(classical);
  classical->add_option("--trajectories", trajectories, "number of random orbits");
  classical->callback([&] {
    if (!classical->count("--steps")) common.steps = 200;
    run_classical_map(common, trajectories);
  });

  auto* ergodicity = app.add_subcommand("ergodicity", "overlap of the time-averaged state with the microcanonical ensemble");
  common.add_flags(ergodicity);
  ergodicity->add_option("--initial", initials, "initial states THETA,PHI (repeatable)");
  ergodicity->add_flag("--include-initial", include_initial,
                       "average over steps 0..N instead of 1..N");
  ergodicity->callback([&] {
    if (!ergodicity->count("--kappa")) common.kappa = 2.5;
    run_ergodicity(common, initials, include_initial);
  });

  auto* finite_size = app.add_subcommand("finite-size", "entropy-fluctuation scaling with system size");
  common.add_flags(finite_size);
  finite_size->add_option("--qubit-list", qubit_list, "comma-separated n values");
  finite_size->add_option("--window", window, "step window MIN:MAX");
  finite_size->add_option("--initial", fs_initial, "initial state THETA,PHI");
  finite_size->callback([&] { run_finite_size(common, qubit_list, window, fs_initial); });

  auto* full_chaos = app.add_subcommand("full-chaos", "strong-kick maps per system size plus classical cloud");
  common.add_flags(full_chaos);
  full_chaos->add_option("--qubit-list", chaos_qubit_list, "comma-separated n values");
  full_chaos->callback([&] {
    if (!full_chaos->count("--kappa")) common.kappa = 5.0;
    if (!full_chaos->count("--steps")) common.steps = 500;
    if (!full_chaos->count("--grid")) common.grid = "16x16";
    run_full_chaos(common, chaos_qubit_list);
  });

  auto* pauli_bars = app.add_subcommand("pauli-bars", "full Pauli correlation tables for two insets");
  common.add_flags(pauli_bars);
  pauli_bars->add_option("--initial-low", initial_low, "low-entropy inset THETA,PHI");
  pauli_bars->add_option("--initial-high", initial_high, "high-entropy inset THETA,PHI");
  pauli_bars->callback([&] {
    if (!pauli_bars->count("--steps")) common.steps = 10;
    run_pauli_bars(common, initial_low, initial_high);
  });

  auto* purity_cmd = app.add_subcommand("purity", "state purity under decoherence for two insets");
  common.add_flags(purity_cmd);
  purity_noise.add_flags(purity_cmd);
  purity_cmd->add_option("--initial-a", initial_a, "first inset THETA,PHI");
  purity_cmd->add_option("--initial-b", initial_b, "second inset THETA,PHI");
  purity_cmd->callback([&] { run_purity(common, purity_noise, initial_a, initial_b); });

  auto* tomo = app.add_subcommand("tomography-demo", "synthetic counts plus maximum-likelihood reconstruction");
  common.add_flags(tomo);
  tomo->add_option("--state", tomo_state, "zero|ghz|evolved");
  tomo->add_option("--shots", shots, "shots per setting");
  tomo->callback([&] {
    if (!tomo->count("--kappa")) common.kappa = 2.5;
    if (!tomo->count("--steps")) common.steps = 5;
    run_tomography_demo(common, tomo_state, shots);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ktop::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
