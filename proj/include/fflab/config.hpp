#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fflab {

/// Plain "key = value" settings; '#' starts a comment. Keys are validated
/// against a fixed list so typos fail loudly.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  std::optional<std::uint64_t> get_uint(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  /// Comma-separated unsigned integers.
  std::optional<std::vector<std::uint64_t>> get_list(const std::string& key) const;

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace fflab
