#include "kvconfig.hpp"

#include <fstream>
#include <sstream>

namespace cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

KvConfig KvConfig::load(const std::string& path, const std::string& section,
                        const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  KvConfig cfg;
  std::string line, current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      current = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected 'key = value'";
      throw ConfigError(os.str());
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (current != section) continue;  // other subcommands' sections
    if (!allowed.count(key)) {
      std::ostringstream os;
      os << path << ":" << lineno << ": unknown key \"" << key << "\" in ["
         << section << "]";
      throw ConfigError(os.str());
    }
    cfg.kv_[key] = value;
  }
  return cfg;
}

const std::string& KvConfig::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing required option: " + key);
  return it->second;
}

std::string KvConfig::get_or(const std::string& key,
                             const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double KvConfig::number(const std::string& key) const {
  const std::string& v = get(key);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("option " + key + " is not a number: \"" + v + "\"");
  }
}

double KvConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int KvConfig::integer_or(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double x = number(key);
  const int i = static_cast<int>(x);
  if (x != i) throw ConfigError("option " + key + " must be an integer");
  return i;
}

std::pair<int, int> KvConfig::range(const std::string& key) const {
  const std::string& v = get(key);
  const auto dots = v.find("..");
  try {
    if (dots == std::string::npos) {
      const int single = std::stoi(v);
      return {single, single};
    }
    const int lo = std::stoi(v.substr(0, dots));
    const int hi = std::stoi(v.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument(v);
    return {lo, hi};
  } catch (const std::exception&) {
    throw ConfigError("option " + key + " is not a range lo..hi: \"" + v + "\"");
  }
}

std::vector<double> KvConfig::numbers(const std::string& key) const {
  const std::string& v = get(key);
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("option " + key + " has a non-numeric entry: \"" + item +
                        "\"");
    }
  }
  if (out.empty()) throw ConfigError("option " + key + " is empty");
  return out;
}

}  // namespace cli
