#ifndef VIRASYM_CLI_HPP
#define VIRASYM_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace virasym::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;      // usage, parse and I/O errors
inline constexpr int kNotClassified = 2; // failed residual checks or NotInClassifiedFamily

struct RunConfig {
  std::string command;   // classify | verify-map | center
  std::string algebra;   // vir | witt | w22 | w22-centerless
  std::string problem;   // classify: biderivation | derivation | commuting | symmetric-biderivation
                         // verify-map: the same plus postlie; defaults by map kind
  std::optional<std::int64_t> window;
  std::optional<std::int64_t> value_radius;
  std::optional<std::int64_t> core;
  std::string input;
  std::string output;    // empty: stdout
  bool summary = false;
  bool timings = true;
  unsigned threads = 1;
  int verbosity = 0;
};

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify_map(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_center(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace virasym::cli

#endif // VIRASYM_CLI_HPP
