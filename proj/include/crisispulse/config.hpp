#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crisispulse {

// "key = value" file, one pair per line. '#' starts a comment, blank lines
// are ignored. Values keep internal spacing; surrounding whitespace is
// trimmed. Repeated keys are an error.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  std::string require(const std::string& key) const;

  std::optional<long long> get_int(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  // Comma-separated value, entries trimmed, empties dropped.
  std::vector<std::string> get_list(const std::string& key) const;

  std::vector<std::string> keys() const;  // sorted

 private:
  std::map<std::string, std::string> values_;
};

std::string read_file(const std::string& path);          // throws MissingInputError
void write_file(const std::string& path, std::string_view data);

}  // namespace crisispulse
