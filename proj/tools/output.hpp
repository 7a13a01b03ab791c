#pragma once
#include <atomic>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

namespace cli {

// CSV with a declared header schema; rows are preformatted so reruns with the
// same config produce identical bytes below the timestamped comment line
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size())
      throw std::runtime_error("row width does not match the declared schema");
    rows_.push_back(std::move(cells));
  }

  void write(const std::filesystem::path& path, const std::string& stamp) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# generated " << stamp << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
      out << columns_[i] << (i + 1 < columns_.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << row[i] << (i + 1 < row.size() ? "," : "");
      out << "\n";
    }
  }

  std::size_t size() const { return rows_.size(); }

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string timestamp() {
  char buf[64];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// run manifest: the resolved configuration plus every solver tolerance that
// shaped the outputs
inline nlohmann::json base_manifest(const std::string& command,
                                    const std::map<std::string, std::string>& kv,
                                    const std::string& stamp) {
  nlohmann::json m;
  m["command"] = command;
  m["generated"] = stamp;
  m["config"] = kv;
  m["tolerances"] = {{"ode_rtol", 1e-12},
                     {"ode_atol", 1e-14},
                     {"tail_truncation", 1e-11},
                     {"liouville_quadrature", 1e-12},
                     {"matching_consistency", 1e-8}};
  return m;
}

inline void write_json(const std::filesystem::path& path,
                       const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// worker count: AHSCAT_THREADS caps the pool, 0/unset means hardware default
inline unsigned worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("AHSCAT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = static_cast<unsigned>(cap);
  }
  if (n < 1) n = 1;
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

// index-deterministic parallel map; results land by index, so the output is
// independent of scheduling
inline void parallel_for(std::size_t jobs,
                         const std::function<void(std::size_t)>& body) {
  const unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < jobs; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cli
