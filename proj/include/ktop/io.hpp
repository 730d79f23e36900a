#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ktop/experiments.hpp"

namespace ktop {

/// 17 significant digits, '.' decimal separator; round-trips any double.
std::string format_double(double v);

/// Write bytes exactly as given (binary mode, LF endings).
void write_file(const std::string& path, const std::string& contents);

/// Insert a suffix before the extension: stem("a/b.csv", "_N3") -> "a/b_N3.csv".
std::string with_suffix(const std::string& path, const std::string& suffix);

// CSV payloads. Header rows are part of the pinned schemas.
std::string entropy_map_csv(const EntropyMap& map);            // theta,phi,entropy
std::string cloud_csv(const StroboscopicCloud& cloud);         // traj,step,theta,phi
std::string series_csv(const std::vector<std::pair<int, double>>& rows);  // step,value
std::string pauli_csv(const PauliCorrelations& table);         // pauli_string,expectation
std::string scaling_csv(const ScalingTable& table);            // n,sigma
std::string trajectory_csv(const TrajectoryRecord& record);    // step,x,y,z,entropy

nlohmann::json meta_json(const MapMeta& meta);
nlohmann::json entropy_map_json(const EntropyMap& map);
nlohmann::json cloud_json(const StroboscopicCloud& cloud, const MapMeta& meta);
nlohmann::json series_json(const std::vector<std::pair<int, double>>& rows,
                           const MapMeta& meta);
nlohmann::json pauli_json(const PauliCorrelations& table, const MapMeta& meta);
nlohmann::json scaling_json(const ScalingTable& table, const MapMeta& meta);
nlohmann::json trajectory_json(const TrajectoryRecord& record, const MapMeta& meta);

// Count-record JSON schema (the wire format for tomography data).
nlohmann::json count_records_json(const std::vector<CountRecord>& records);
std::vector<CountRecord> count_records_from_json(const nlohmann::json& j);

std::string dump_json(const nlohmann::json& j);  // 2-space indent + LF

}  // namespace ktop
