#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "latdesign/lattice.hpp"

namespace latdesign::report {

inline constexpr int schema_version = 1;

enum class Scope { Quick, Full };

/// Shells larger than this are left out of the quick scope.
inline constexpr std::size_t quick_shell_limit = 100000;

/// pass, misprint (printed value is not attainable; the derived one holds)
/// and skipped count as success; fail, error and resource-abort do not.
struct Item {
  int criterion = 0;
  std::string section;
  std::string lattice;
  std::string name;
  std::string expected;
  std::string observed;
  std::string source = "derived";  // reference | derived
  std::string status = "pass";
  std::string note;
  double seconds = 0;

  bool ok() const { return status == "pass" || status == "misprint" || status == "skipped"; }
};

struct Report {
  Scope scope = Scope::Full;
  int workers = 1;
  std::uint64_t seed = 0;
  double seconds = 0;
  std::vector<Item> items;

  bool ok() const;
  std::size_t count(const std::string& status) const;
  bool has_resource_abort() const { return count("resource-abort") > 0; }
};

struct Options {
  Scope scope = Scope::Full;
  int workers = 0;
  std::uint64_t seed = 20240101;
  std::size_t max_vectors = 100000000;
  /// Criteria to run (1..9); empty means all.
  std::set<int> criteria;
  /// Replaces catalog lattices by name, for fault injection.
  std::map<std::string, Lattice> overrides;
};

std::string criterion_title(int criterion);
std::string scope_name(Scope s);
Scope parse_scope(const std::string& s);

Report run_report(const Options& opts);

/// Canonical JSON. Without timing the output is independent of the worker
/// count and of wall-clock time.
std::string to_json(const Report& r, bool include_timing = true, int indent = 2);
std::string to_csv(const Report& r);
/// Structural validation of a report document; returns the problems found.
std::vector<std::string> validate_json(const std::string& text);

}  // namespace latdesign::report
