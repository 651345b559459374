#include "abq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace abq {

using nlohmann::json;

json instance_to_json(const Formula& f) {
  json clauses = json::array();
  for (const Clause& cl : f.clauses) clauses.push_back({cl[0], cl[1], cl[2]});
  return json{{"n", f.n}, {"clauses", clauses}};
}

Formula instance_from_json(const json& j) {
  Formula f;
  f.n = j.at("n").get<int>();
  for (const auto& cl : j.at("clauses")) {
    if (cl.size() != 3) throw std::invalid_argument("clause must have 3 literals");
    f.clauses.push_back({cl[0].get<int>(), cl[1].get<int>(), cl[2].get<int>()});
  }
  validate(f);
  return f;
}

json ensemble_to_json(const Ensemble& e) {
  json instances = json::array();
  for (const Formula& f : e.instances) instances.push_back(instance_to_json(f));
  return json{{"n", e.n},       {"alpha", e.alpha},        {"m", e.m},
              {"seed", e.seed}, {"instances", instances}};
}

Ensemble ensemble_from_json(const json& j) {
  Ensemble e;
  e.n = j.at("n").get<int>();
  e.alpha = j.at("alpha").get<double>();
  e.m = j.at("m").get<int>();
  e.seed = j.at("seed").get<uint64_t>();
  for (const auto& inst : j.at("instances")) e.instances.push_back(instance_from_json(inst));
  return e;
}

json schedule_to_json(const Schedule& s) {
  return json{{"gamma", s.gamma}, {"beta", s.beta}};
}

Schedule schedule_from_json(const json& j) {
  Schedule s;
  s.gamma = j.at("gamma").get<std::vector<double>>();
  s.beta = j.at("beta").get<std::vector<double>>();
  if (s.gamma.size() != s.beta.size())
    throw std::invalid_argument("schedule arrays differ in length");
  return s;
}

namespace {

json state_to_json(const StateVector& psi) {
  json amps = json::array();
  for (size_t z = 0; z < psi.dim(); ++z)
    amps.push_back({psi[z].real(), psi[z].imag()});
  return amps;
}

}  // namespace

json run_record_to_json(const RunRecord& rec, bool include_state) {
  json j{{"energy_trace", rec.energy_trace},
         {"n_con", rec.n_con},
         {"best_energy", rec.best_energy},
         {"best_iteration", rec.best_iteration},
         {"best_schedule", schedule_to_json(rec.best_schedule)},
         {"best_bias", rec.best_bias}};
  json angles = json::array();
  for (const Schedule& s : rec.angle_snapshots) angles.push_back(schedule_to_json(s));
  j["angle_snapshots"] = angles;
  j["bias_snapshots"] = rec.bias_snapshots;
  if (include_state) j["final_state"] = state_to_json(rec.final_state);
  return j;
}

json run_result_to_json(const RunResult& res, bool include_state) {
  json j{{"best_sample", res.best_sample},
         {"sample_energies", res.sample_energies},
         {"best", run_record_to_json(res.best, include_state)}};
  if (!res.fourier_level_energies.empty())
    j["fourier_level_energies"] = res.fourier_level_energies;
  return j;
}

json ofab_result_to_json(const OfabResult& res) {
  json levels = json::array();
  for (const OfabLevel& lv : res.levels) {
    levels.push_back(json{{"level", lv.level},
                          {"sample_energies", lv.sample_energies},
                          {"sample_expectations", lv.sample_expectations},
                          {"fields", lv.fields},
                          {"best_energy", lv.best_energy},
                          {"best_sample", lv.best_sample}});
  }
  json assignment = json::array();
  for (uint8_t b : res.assignment) assignment.push_back(static_cast<int>(b));
  return json{{"levels", levels},
              {"energy", res.energy},
              {"assignment", assignment},
              {"best_sample", res.best_sample},
              {"state_preparations", res.state_preparations},
              {"layers_per_sample", res.layers_per_sample}};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json read_json(const std::string& path) { return json::parse(read_text(path)); }

void write_csv(const std::string& path, const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i].find(',') != std::string::npos || row[i].find('\n') != std::string::npos)
        throw std::invalid_argument("csv cell contains a separator: " + row[i]);
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::invalid_argument("csv row width differs from header");
    append_row(row);
  }
  write_text(path, out);
}

CsvTable read_csv(const std::string& path) {
  const std::string text = read_text(path);
  CsvTable table;
  std::istringstream lines(text);
  std::string line;
  bool first = true;
  while (std::getline(lines, line)) {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    if (first) {
      table.header = std::move(row);
      first = false;
    } else {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

json make_manifest(uint64_t seed, const json& config) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  return json{{"seed", seed}, {"config_hash", hash}, {"version", kToolVersion}};
}

}  // namespace abq
