#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dirac_stab::cli {

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Everything a command produces. Rendering is deterministic: no clocks, no addresses,
/// fixed float formatting.
struct Report {
  std::string version;
  std::string command;
  std::vector<std::string> options;  // echoed as given, input path reduced to its file name
  std::string input_name;
  std::string digest;
  std::string kind;
  std::string name;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<Table> tables;
  std::vector<std::string> notes;
  int exit_code = 0;

  void check(std::string what, bool ok, std::string detail = {});
  void result(std::string key, std::string value);
  bool all_passed() const;
};

std::string render_table(const Report& r);
std::string render_json(const Report& r);

/// 64-bit FNV-1a of the input bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Fixed "%.3e" rendering used for every floating-point value in reports.
std::string format_double(double x);

}  // namespace dirac_stab::cli
