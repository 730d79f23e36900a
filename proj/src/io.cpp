#include "ktop/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ktop/version.hpp"

namespace ktop {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(contents.data(), std::streamsize(contents.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string entropy_map_csv(const EntropyMap& map) {
  std::string out = "theta,phi,entropy\n";
  for (int i = 0; i < map.grid.theta_points; ++i)
    for (int j = 0; j < map.grid.phi_points; ++j) {
      out += format_double(map.grid.theta(i));
      out += ',';
      out += format_double(map.grid.phi(j));
      out += ',';
      out += format_double(map.values(i, j));
      out += '\n';
    }
  return out;
}

std::string cloud_csv(const StroboscopicCloud& cloud) {
  std::string out = "traj,step,theta,phi\n";
  for (const CloudPoint& p : cloud.points) {
    out += std::to_string(p.trajectory);
    out += ',';
    out += std::to_string(p.step);
    out += ',';
    out += format_double(p.theta);
    out += ',';
    out += format_double(p.phi);
    out += '\n';
  }
  return out;
}

std::string series_csv(const std::vector<std::pair<int, double>>& rows) {
  std::string out = "step,value\n";
  for (const auto& [step, value] : rows) {
    out += std::to_string(step);
    out += ',';
    out += format_double(value);
    out += '\n';
  }
  return out;
}

std::string pauli_csv(const PauliCorrelations& table) {
  std::string out = "pauli_string,expectation\n";
  for (Eigen::Index i = 0; i < table.values.size(); ++i) {
    out += PauliCorrelations::string_label(std::uint64_t(i), table.n);
    out += ',';
    out += format_double(table.values(i));
    out += '\n';
  }
  return out;
}

std::string scaling_csv(const ScalingTable& table) {
  std::string out = "n,sigma\n";
  for (const ScalingRow& row : table.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.sigma);
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const TrajectoryRecord& record) {
  std::string out = "step,x,y,z,entropy\n";
  for (std::size_t k = 0; k < record.bloch.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += format_double(record.bloch[k].x);
    out += ',';
    out += format_double(record.bloch[k].y);
    out += ',';
    out += format_double(record.bloch[k].z);
    out += ',';
    out += format_double(record.entropies[k]);
    out += '\n';
  }
  return out;
}

nlohmann::json meta_json(const MapMeta& meta) {
  return {
      {"schema_version", kSchemaVersion},
      {"command", meta.command},
      {"kappa", meta.kappa},
      {"qubits", meta.qubits},
      {"steps", meta.steps},
      {"backend", to_string(meta.backend)},
      {"mode", to_string(meta.mode)},
      {"seed", meta.seed},
      {"grid", meta.grid.to_string()},
      {"version", meta.version},
  };
}

nlohmann::json entropy_map_json(const EntropyMap& map) {
  nlohmann::json cells = nlohmann::json::array();
  for (int i = 0; i < map.grid.theta_points; ++i)
    for (int j = 0; j < map.grid.phi_points; ++j)
      cells.push_back({{"theta", map.grid.theta(i)},
                       {"phi", map.grid.phi(j)},
                       {"entropy", map.values(i, j)}});
  return {{"meta", meta_json(map.meta)}, {"data", std::move(cells)}};
}

nlohmann::json cloud_json(const StroboscopicCloud& cloud, const MapMeta& meta) {
  nlohmann::json points = nlohmann::json::array();
  for (const CloudPoint& p : cloud.points)
    points.push_back({{"traj", p.trajectory},
                      {"step", p.step},
                      {"theta", p.theta},
                      {"phi", p.phi}});
  nlohmann::json j = {{"meta", meta_json(meta)}, {"data", std::move(points)}};
  j["meta"]["rng"] = cloud.rng_name;
  return j;
}

nlohmann::json series_json(const std::vector<std::pair<int, double>>& rows,
                           const MapMeta& meta) {
  nlohmann::json data = nlohmann::json::array();
  for (const auto& [step, value] : rows)
    data.push_back({{"step", step}, {"value", value}});
  return {{"meta", meta_json(meta)}, {"data", std::move(data)}};
}

nlohmann::json pauli_json(const PauliCorrelations& table, const MapMeta& meta) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < table.values.size(); ++i)
    data.push_back(
        {{"pauli_string", PauliCorrelations::string_label(std::uint64_t(i), table.n)},
         {"expectation", table.values(i)}});
  return {{"meta", meta_json(meta)}, {"data", std::move(data)}};
}

nlohmann::json scaling_json(const ScalingTable& table, const MapMeta& meta) {
  nlohmann::json data = nlohmann::json::array();
  for (const ScalingRow& row : table.rows)
    data.push_back({{"n", row.n}, {"sigma", row.sigma}});
  nlohmann::json j = {{"meta", meta_json(meta)}, {"data", std::move(data)}};
  j["meta"]["window"] = {table.window.first, table.window.second};
  return j;
}

nlohmann::json trajectory_json(const TrajectoryRecord& record, const MapMeta& meta) {
  nlohmann::json data = nlohmann::json::array();
  for (std::size_t k = 0; k < record.bloch.size(); ++k)
    data.push_back({{"step", k},
                    {"x", record.bloch[k].x},
                    {"y", record.bloch[k].y},
                    {"z", record.bloch[k].z},
                    {"entropy", record.entropies[k]}});
  return {{"meta", meta_json(meta)}, {"data", std::move(data)}};
}

nlohmann::json count_records_json(const std::vector<CountRecord>& records) {
  nlohmann::json data = nlohmann::json::array();
  for (const CountRecord& r : records) {
    nlohmann::json labels = nlohmann::json::array();
    for (TomographyRotation rot : r.setting.labels)
      labels.push_back(tomography_rotation_name(rot));
    data.push_back(
        {{"setting", std::move(labels)}, {"shots", r.shots}, {"counts", r.counts}});
  }
  return {{"schema_version", kSchemaVersion}, {"records", std::move(data)}};
}

namespace {

TomographyRotation rotation_from_name(const std::string& name) {
  if (name == "I") return TomographyRotation::I;
  if (name == "Xpi2") return TomographyRotation::XHalfPi;
  if (name == "Ypi2") return TomographyRotation::YHalfPi;
  if (name == "Xpi") return TomographyRotation::XPi;
  throw std::invalid_argument("unknown tomography rotation: " + name);
}

}  // namespace

std::vector<CountRecord> count_records_from_json(const nlohmann::json& j) {
  std::vector<CountRecord> records;
  for (const auto& entry : j.at("records")) {
    CountRecord r;
    for (const auto& name : entry.at("setting"))
      r.setting.labels.push_back(rotation_from_name(name.get<std::string>()));
    r.shots = entry.at("shots").get<std::uint64_t>();
    r.counts = entry.at("counts").get<std::vector<std::uint64_t>>();
    std::uint64_t sum = 0;
    for (std::uint64_t c : r.counts) sum += c;
    if (sum != r.shots)
      throw std::invalid_argument("count record: counts do not sum to shots");
    records.push_back(std::move(r));
  }
  return records;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ktop
