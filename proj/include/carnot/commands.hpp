#pragma once

// Subcommands of the command line tool. Each returns the report document;
// errors propagate as carnot::Error.

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace carnot {

inline constexpr const char* kVersion = "1.0.0";

struct CommandOptions {
  std::string algebra = "heisenberg";
  std::string lattice;
  std::string dims;    // "2,1,1"
  std::string target;  // comma-separated coordinates, rationals allowed
  std::string mode = "rational";
  std::string csv;
  std::uint64_t seed = 0;
  int samples = 100;
  int radius = 1;
  int layer = 0;  // adjust: 0 means the full tuple
  int k = 3;
  int n_factors = 2;
  bool timing = false;
};

nlohmann::json cmd_algebra_check(const CommandOptions& o);
nlohmann::json cmd_popp_gram(const CommandOptions& o);
nlohmann::json cmd_constants(const CommandOptions& o);
nlohmann::json cmd_adjust(const CommandOptions& o);
nlohmann::json cmd_path(const CommandOptions& o);
nlohmann::json cmd_box_verify(const CommandOptions& o);
nlohmann::json cmd_systole(const CommandOptions& o);
nlohmann::json cmd_bch_tables(const CommandOptions& o);

// Wraps a payload with command, version, inputs digest and seed.
nlohmann::json make_report(const std::string& command, const CommandOptions& o, nlohmann::json outputs);

std::string sha256_hex(const std::string& data);

}  // namespace carnot
