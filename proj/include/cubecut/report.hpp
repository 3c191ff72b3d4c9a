#pragma once

#include <string>

#include <json.hpp>

namespace cubecut {

// Outcome of one verification check. details holds witnesses and
// measurements; its layout is documented in docs/report-schema.md.
struct CheckReport {
  std::string name;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();

  void fail(const std::string& witness) {
    pass = false;
    details["failures"].push_back(witness);
  }
};

inline nlohmann::json to_json(const CheckReport& r) {
  return {{"name", r.name}, {"pass", r.pass}, {"details", r.details}};
}

}  // namespace cubecut
