#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "abq/ofab.hpp"
#include "abq/sat.hpp"
#include "abq/variational.hpp"

namespace abq {

inline constexpr const char* kToolVersion = "0.1.0";

// a batch of instances sharing (n, alpha, seed); generated once and reused
// by every algorithm that touches the cell
struct Ensemble {
  int n = 0;
  double alpha = 0.0;
  int m = 0;
  uint64_t seed = 0;
  std::vector<Formula> instances;
};

nlohmann::json instance_to_json(const Formula& f);
Formula instance_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

// trace arrays plus the best point; amplitudes only on request
nlohmann::json run_record_to_json(const RunRecord& rec, bool include_state = false);
nlohmann::json run_result_to_json(const RunResult& res, bool include_state = false);
nlohmann::json ofab_result_to_json(const OfabResult& res);

// fixed 12-significant-digit form shared by every exported table
std::string format_double(double x);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// comma-separated, newline-terminated; cells must not contain commas
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

uint64_t fnv1a64(const std::string& bytes);

// seed, config hash and tool version pinned next to every result set
nlohmann::json make_manifest(uint64_t seed, const nlohmann::json& config);

}  // namespace abq
