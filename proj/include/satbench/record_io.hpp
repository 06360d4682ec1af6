#pragma once

#include <string>

#include <json.hpp>

#include "satbench/walksat.hpp"

namespace satbench {

// One JSON object per run. Wall time is deliberately excluded so that
// rerunning a study with the same seed reproduces output files byte for
// byte.
inline nlohmann::json run_record_json(const RunRecord& rec) {
  nlohmann::json j;
  j["instance_id"] = rec.instance_id;
  j["noise"] = rec.noise;
  if (rec.flips)
    j["flips"] = *rec.flips;
  else
    j["flips"] = nullptr;
  j["tries"] = rec.tries;
  j["seed"] = rec.seed;
  j["solved"] = rec.solved();
  return j;
}

inline std::string run_record_line(const RunRecord& rec) {
  return run_record_json(rec).dump();
}

inline RunRecord parse_run_record(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  RunRecord rec;
  rec.instance_id = j.at("instance_id").get<std::string>();
  rec.noise = j.at("noise").get<double>();
  if (!j.at("flips").is_null()) rec.flips = j.at("flips").get<std::uint64_t>();
  rec.tries = j.at("tries").get<std::uint64_t>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  return rec;
}

}  // namespace satbench
