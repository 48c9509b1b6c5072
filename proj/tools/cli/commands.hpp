#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "document.hpp"
#include "report.hpp"

namespace dirac_stab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

struct Options {
  std::string command;
  std::string input_path;
  std::string format = "table";
  std::uint64_t seed = 0;
  std::optional<double> tol;
  double step = 1e-3;
  double t = 1.0;
  std::optional<int> degree;
  std::optional<std::string> point;
  std::string subalgebra, mc, xi, q, qprime;
  bool require_stable = false;
};

/// Input problems the parser cannot see (missing named elements, unsupported kinds).
class InputError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Runs one command on a parsed document. Throws InputError / ParseError for input
/// problems; every other outcome is in the report, including its exit code.
Report run_command(const Options& opt, const Document& doc);

}  // namespace dirac_stab::cli
