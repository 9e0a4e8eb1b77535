#include "vjoin/key_value.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "vjoin/errors.hpp"

namespace vjoin {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string(what) + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw ConfigError(std::string(what) + ": expected a number, got '" + copy +
                      "'");
  }
  return value;
}

KeyValues KeyValues::parse(std::istream& in, std::string source) {
  KeyValues kv;
  kv.source_ = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(kv.source_ + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(kv.source_ + ":" + std::to_string(line_no) +
                        ": empty key");
    }
    if (!kv.entries_.emplace(key, value).second) {
      throw ConfigError(kv.source_ + ":" + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues KeyValues::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse(in, path.string());
}

bool KeyValues::has(std::string_view key) const {
  used_.emplace(key);
  return entries_.find(key) != entries_.end();
}

const std::string& KeyValues::raw(std::string_view key) const {
  used_.emplace(key);
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(source_ + ": missing key '" + std::string(key) + "'");
  }
  return it->second;
}

std::string KeyValues::get_string(std::string_view key,
                                  std::string fallback) const {
  return has(key) ? raw(key) : std::move(fallback);
}

std::size_t KeyValues::get_size(std::string_view key,
                                std::size_t fallback) const {
  return has(key) ? parse_size(raw(key), key) : fallback;
}

std::uint64_t KeyValues::get_u64(std::string_view key,
                                 std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& text = raw(key);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string(key) + ": expected an unsigned integer");
  }
  return value;
}

double KeyValues::get_double(std::string_view key, double fallback) const {
  return has(key) ? parse_double(raw(key), key) : fallback;
}

bool KeyValues::get_bool(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = raw(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + v +
                    "'");
}

std::vector<std::string> KeyValues::get_list(
    std::string_view key, std::vector<std::string> fallback) const {
  if (!has(key)) return fallback;
  std::vector<std::string> items;
  std::string_view rest = raw(key);
  while (true) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (item.empty()) {
      throw ConfigError(std::string(key) + ": empty list item");
    }
    items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return items;
}

void KeyValues::reject_unused() const {
  std::string unknown;
  for (const auto& [key, value] : entries_) {
    if (used_.count(key) == 0) {
      unknown += unknown.empty() ? key : ", " + key;
    }
  }
  if (!unknown.empty()) {
    throw ConfigError(source_ + ": unknown key(s): " + unknown);
  }
}

}  // namespace vjoin
