#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace quomm {

/// Invalid configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string verb;                 // consistency | verify-rep | normal-order | casimir | rank | qes-enumerate
  std::string algebra = "spl";      // spl | spl21 | osp22 | osp12 | custom
  std::optional<int> N;
  std::vector<std::pair<std::string, std::string>> params;  // name, rational literal
  std::optional<std::string> table_path;
  bool symbolic = false;
  std::optional<long> n;
  std::optional<std::string> q;
  std::optional<long> degree;
  std::uint64_t seed = 1;
  std::string expression;
  std::optional<std::string> casimir_operator;
  std::vector<std::string> literal;  // spl21 literal readings
  bool printed_normalization = false;
  bool export_representation = false;
  bool trace = false;
  std::string format = "json";
  unsigned workers = 0;
};

struct CommandResult {
  int exit_code = 0;
  nlohmann::ordered_json body;
  nlohmann::ordered_json meta;
};

/// Runs one verb. Usage errors and malformed inputs yield exit 2 with an
/// "error" body; failed checks yield exit 1.
CommandResult run_command(const RunConfig& config);

/// JSON document {"body", "meta"} or a plain-text rendering of the body.
std::string render_result(const CommandResult& result, const std::string& format);

}  // namespace quomm
