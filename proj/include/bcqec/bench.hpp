#pragma once
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "bcqec/rng.hpp"

#ifdef BCQEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace bcqec {

inline const char* kVersion = "blind-cqec 1.0.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat `key = value` file with optional [section] headers; keys are stored as
// "section.key" ("" section -> bare key). Command-line overrides go through
// set().
class BenchmarkConfig {
 public:
  static BenchmarkConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& def) const;
  std::int64_t get_int(const std::string& key, std::int64_t def) const;
  double get_double(const std::string& key, double def) const;
  // comma-separated lists; empty grid -> ConfigError
  std::vector<double> get_grid(const std::string& key,
                               const std::vector<double>& def) const;
  std::vector<int> get_int_grid(const std::string& key,
                                const std::vector<int>& def) const;

  std::uint64_t master_seed = 42;
  std::string out_dir = "out";
  int workers = 0;  // 0 -> hardware default
  bool check = false;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// %.12g, '.' decimal separator, no locale dependence
std::string format_float(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void row_mixed(const std::vector<double>& nums);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  size_t width_;
};

// JSON sidecar: config echo, seed, version string
void write_manifest(const std::string& out_dir, const std::string& command,
                    const BenchmarkConfig& cfg,
                    const std::vector<std::string>& csv_files);

// Runs fn(task_index) for every index; results land in task-index order
// regardless of worker count.
template <class T, class Fn>
std::vector<T> parallel_map(int n_tasks, int workers, Fn fn) {
  std::vector<T> out(static_cast<size_t>(n_tasks));
#ifdef BCQEC_HAVE_OPENMP
  if (workers != 1) {
#pragma omp parallel for schedule(dynamic) num_threads( \
    workers > 0 ? workers : omp_get_max_threads())
    for (int i = 0; i < n_tasks; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
  }
#endif
  for (int i = 0; i < n_tasks; ++i) out[static_cast<size_t>(i)] = fn(i);
  return out;
}

}  // namespace bcqec
