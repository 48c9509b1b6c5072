#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace dirac_stab::cli {

void Report::check(std::string what, bool ok, std::string detail) {
  checks.push_back({std::move(what), ok, std::move(detail)});
}

void Report::result(std::string key, std::string value) { results.emplace_back(std::move(key), std::move(value)); }

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

namespace {

void render(std::ostringstream& out, const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    out << "  ";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << '\n';
  };
  out << t.title << '\n';
  line(t.columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : t.rows) line(row);
}

}  // namespace

std::string render_table(const Report& r) {
  std::ostringstream out;
  out << "dirac-stab " << r.version << '\n';
  out << "command: " << r.command;
  for (const auto& o : r.options) out << ' ' << o;
  out << '\n';
  out << "input:   " << r.input_name << " (fnv1a " << r.digest << ")\n";
  out << "kind:    " << r.kind;
  if (!r.name.empty()) out << " \"" << r.name << '"';
  out << '\n';
  out << "seed:    " << r.seed << "\n\n";
  if (!r.checks.empty()) {
    out << "checks\n";
    for (const auto& c : r.checks) {
      out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << '\n';
    }
    out << '\n';
  }
  if (!r.results.empty()) {
    std::size_t w = 0;
    for (const auto& [k, v] : r.results) w = std::max(w, k.size());
    out << "results\n";
    for (const auto& [k, v] : r.results) out << "  " << k << std::string(w - k.size() + 2, ' ') << v << '\n';
    out << '\n';
  }
  for (const auto& t : r.tables) {
    render(out, t);
    out << '\n';
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  if (!r.notes.empty()) out << '\n';
  out << "status: " << (r.exit_code == 0 ? "ok" : "failed") << " (exit " << r.exit_code << ")\n";
  return out.str();
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["tool"] = "dirac-stab";
  j["version"] = r.version;
  j["command"] = r.command;
  j["options"] = r.options;
  j["input"] = {{"file", r.input_name}, {"fnv1a", r.digest}};
  j["kind"] = r.kind;
  j["name"] = r.name;
  j["seed"] = r.seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.results) j["results"][k] = v;
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tables) j["tables"].push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
  j["notes"] = r.notes;
  j["exit_code"] = r.exit_code;
  return j.dump(2) + "\n";
}

}  // namespace dirac_stab::cli
