#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "chemodde/core.hpp"

namespace chemodde {

inline constexpr int kConfigSchema = 1;

struct RunOptions {
  long horizon = 2000;
  double tol = 1e-10;
  std::optional<long> T;
  bool emit_svg = false;
  std::optional<std::string> out_dir;
};

struct RunConfig {
  ChemostatParams params;
  InitialHistory init;
  RunOptions run;
};

/// Flat `key = value` pairs; `#` starts a comment. Duplicate keys are an error.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Builds a RunConfig from the documented key schema (see docs/config.md).
/// Malformed text raises UsageError; invalid values raise ParameterError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace chemodde
