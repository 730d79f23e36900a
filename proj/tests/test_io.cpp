#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ktop/io.hpp"
#include "ktop/version.hpp"

using namespace ktop;

TEST_CASE("doubles survive the 17-digit round trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.718281828459045e-17, 123456.789, -0.5,
                   3.141592653589793}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv schemas carry the pinned headers") {
  EntropyMap map{GridSpec{2, 2}, Eigen::MatrixXd::Zero(2, 2),
                 MapMeta{"entropy-map", 0.5, 3, 4, Backend::Dicke, ScanMode::Full,
                         7, GridSpec{2, 2}, kVersion}};
  map.values << 0.25, 0.5, 0.75, 1.0;
  const std::string csv = entropy_map_csv(map);
  CHECK(csv.rfind("theta,phi,entropy\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
  CHECK(csv.back() == '\n');
  // 4 cells + header -> 5 lines
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  StroboscopicCloud cloud{0.5, 1, 1, 3, "rng", {{0, 0, 1.0, -2.0}, {0, 1, 1.5, 2.0}}};
  CHECK(cloud_csv(cloud).rfind("traj,step,theta,phi\n", 0) == 0);

  CHECK(series_csv({{1, 0.5}}).rfind("step,value\n", 0) == 0);

  PauliCorrelations table{1, Eigen::Vector4d(1.0, 0.0, 0.0, 0.5)};
  const std::string pauli = pauli_csv(table);
  CHECK(pauli.rfind("pauli_string,expectation\n", 0) == 0);
  CHECK(pauli.find("I,1\n") != std::string::npos);
  CHECK(pauli.find("Z,0.5\n") != std::string::npos);

  ScalingTable scaling{{{4, 0.18}, {6, 0.16}}, {10, 500}, 2.5, {1.0, 0.5}};
  CHECK(scaling_csv(scaling).rfind("n,sigma\n", 0) == 0);

  TrajectoryRecord record{{1.0, 0.5}, {0.5, kPi / 2}, {{0, 0, 1}}, {0.0}};
  CHECK(trajectory_csv(record).rfind("step,x,y,z,entropy\n", 0) == 0);
}

TEST_CASE("json meta carries the pinned keys") {
  const MapMeta meta{"entropy-map", 2.5, 3, 10, Backend::Register,
                     ScanMode::InteractionsOnly, 42, GridSpec{31, 61}, kVersion};
  const nlohmann::json j = meta_json(meta);
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("command") == "entropy-map");
  CHECK(j.at("kappa") == 2.5);
  CHECK(j.at("qubits") == 3);
  CHECK(j.at("steps") == 10);
  CHECK(j.at("backend") == "register");
  CHECK(j.at("mode") == "interactions_only");
  CHECK(j.at("seed") == 42);
  CHECK(j.at("grid") == "31x61");
}

TEST_CASE("entropy map json wraps meta and data") {
  EntropyMap map{GridSpec{2, 2}, Eigen::MatrixXd::Constant(2, 2, 0.5),
                 MapMeta{"entropy-map", 0.5, 3, 4, Backend::Dicke, ScanMode::Full,
                         7, GridSpec{2, 2}, kVersion}};
  const nlohmann::json j = entropy_map_json(map);
  CHECK(j.contains("meta"));
  REQUIRE(j.at("data").size() == 4);
  CHECK(j.at("data")[0].at("entropy") == 0.5);
  // two dumps are byte-identical
  CHECK(dump_json(j) == dump_json(entropy_map_json(map)));
}

TEST_CASE("count records survive a json round trip") {
  const std::vector<TomographySetting> settings = tomography_settings(2);
  std::vector<CountRecord> records;
  records.push_back({settings[5], 10, {4, 3, 2, 1}});
  records.push_back({settings[9], 7, {0, 0, 7, 0}});
  const nlohmann::json j = count_records_json(records);
  const auto back = count_records_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back[0].setting.name() == records[0].setting.name());
  CHECK(back[0].shots == 10);
  CHECK(back[0].counts == records[0].counts);
  CHECK(back[1].counts == records[1].counts);

  nlohmann::json bad = j;
  bad["records"][0]["shots"] = 11;
  CHECK_THROWS_AS(count_records_from_json(bad), std::invalid_argument);
}

TEST_CASE("suffix insertion before the extension") {
  CHECK(with_suffix("a/b.csv", "_N3") == "a/b_N3.csv");
  CHECK(with_suffix("plain", "_x") == "plain_x");
  CHECK(with_suffix("dir.v2/file", "_x") == "dir.v2/file_x");
  CHECK(with_suffix("dir.v2/file.json", "_x") == "dir.v2/file_x.json");
}
