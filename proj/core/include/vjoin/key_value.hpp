#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace vjoin {

/// Flat `key = value` text: one entry per line, `#` starts a comment, blank
/// lines are ignored. Duplicate keys are errors. Lookups are tracked so the
/// caller can reject keys nobody consumed.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in, std::string source = "config");
  static KeyValues load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  const std::string& raw(std::string_view key) const;

  std::string get_string(std::string_view key, std::string fallback) const;
  std::size_t get_size(std::string_view key, std::size_t fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key, double fallback) const;
  bool get_bool(std::string_view key, bool fallback) const;
  /// Comma-separated list; empty items are errors.
  std::vector<std::string> get_list(std::string_view key,
                                    std::vector<std::string> fallback) const;

  /// Throws ConfigError naming every key that was never looked up.
  void reject_unused() const;

 private:
  std::string source_;
  std::map<std::string, std::string, std::less<>> entries_;
  mutable std::set<std::string, std::less<>> used_;
};

std::size_t parse_size(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);

}  // namespace vjoin
