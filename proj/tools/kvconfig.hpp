#pragma once
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Flat key-value config files with one section per subcommand:
//
//   [forward]
//   profile = sech
//   lambda = 1
//   n = 1..20
//
// Unknown keys are rejected with a line diagnostic; command-line flags
// override file values.

namespace cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class KvConfig {
public:
  KvConfig() = default;

  // parse `path`, keeping only `section`; `allowed` is the full key set for
  // that section
  static KvConfig load(const std::string& path, const std::string& section,
                       const std::set<std::string>& allowed);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;

  // "lo..hi" inclusive integer range
  std::pair<int, int> range(const std::string& key) const;
  // comma-separated doubles
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

private:
  std::map<std::string, std::string> kv_;
};

}  // namespace cli
