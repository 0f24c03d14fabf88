#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bdq::cli {

struct RunConfig {
  std::string domain = "ball";  // ball, disc or custom
  std::string psi;              // defining polynomial for custom domains
  int n = 1;
  int order = 2;
  std::string mu = "omega";     // omega or omega+canonical
  std::string chart = "boundary";
  double tol = 1e-8;
  std::string out;
  std::uint64_t seed = 1;
  std::string a = "u";          // perturbation for normal-form
};

inline constexpr int kMaxOrder = 4;

const std::vector<std::string>& subcommands();

// Throws bdq::Error on invalid configurations.
void validate(const std::string& subcommand, const RunConfig& cfg);

// Runs one subcommand; the result is a JSON artifact.
nlohmann::json run(const std::string& subcommand, const RunConfig& cfg);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string render(const nlohmann::json& j);

nlohmann::json error_json(const std::string& code, const std::string& detail);

// Parses argv, runs, writes output; returns the process exit status.
int main_entry(int argc, char** argv);

}  // namespace bdq::cli
