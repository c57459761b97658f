#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qotto::io {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat `key = value` configuration, one per line, `#` comments; nested stroke
// settings use dotted keys (expansion.kind, bath.hot.T, ...).
class Config {
 public:
  static Config parse_text(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int dflt) const;

  void set(const std::string& key, const std::string& value);  // overrides
  const std::map<std::string, std::string>& entries() const { return kv_; }

  // FNV-1a of the canonicalized (sorted, trimmed) entries, hex-encoded.
  std::string hash() const;

 private:
  std::map<std::string, std::string> kv_;
  std::map<std::string, int> lines_;
  [[noreturn]] void fail(const std::string& key, const std::string& why) const;
};

// 17-significant-digit decimal formatting used by every emitted file.
std::string format_number(double v);

}  // namespace qotto::io
