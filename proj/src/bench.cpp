#include "bcqec/bench.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

namespace bcqec {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

BenchmarkConfig BenchmarkConfig::from_file(const std::string& path) {
  BenchmarkConfig cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    cfg.set(section.empty() ? key : section + "." + key, val);
  }
  return cfg;
}

void BenchmarkConfig::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool BenchmarkConfig::has(const std::string& key) const {
  return kv_.count(key) > 0;
}

std::string BenchmarkConfig::get_string(const std::string& key,
                                        const std::string& def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

std::int64_t BenchmarkConfig::get_int(const std::string& key,
                                      std::int64_t def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  try {
    size_t pos = 0;
    std::int64_t v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: " +
                      it->second);
  }
}

double BenchmarkConfig::get_double(const std::string& key, double def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: " + it->second);
  }
}

std::vector<double> BenchmarkConfig::get_grid(
    const std::string& key, const std::vector<double>& def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) {
    if (def.empty()) throw ConfigError("config key '" + key + "': empty grid");
    return def;
  }
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': bad grid entry: " + tok);
    }
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty grid");
  return out;
}

std::vector<int> BenchmarkConfig::get_int_grid(const std::string& key,
                                               const std::vector<int>& def) const {
  std::vector<double> dd(def.begin(), def.end());
  std::vector<double> g = get_grid(key, dd);
  std::vector<int> out;
  for (double v : g) out.push_back(static_cast<int>(v));
  return out;
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : path_(path), width_(header.size()) {
  std::filesystem::create_directories(
      std::filesystem::path(path).parent_path());
  out_.open(path);
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
  for (size_t i = 0; i < header.size(); ++i)
    out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw std::logic_error("csv row width mismatch in " + path_);
  for (size_t i = 0; i < cells.size(); ++i)
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<double>& nums) {
  std::vector<std::string> cells;
  cells.reserve(nums.size());
  for (double v : nums) cells.push_back(format_float(v));
  row(cells);
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const BenchmarkConfig& cfg,
                    const std::vector<std::string>& csv_files) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["master_seed"] = cfg.master_seed;
  j["workers"] = cfg.workers;
  nlohmann::json echo = nlohmann::json::object();
  for (const auto& [k, v] : cfg.entries()) echo[k] = v;
  j["config"] = echo;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : csv_files)
    files.push_back(std::filesystem::path(f).filename().string());
  j["outputs"] = files;
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/" + command + "_manifest.json");
  out << j.dump(2) << "\n";
}

}  // namespace bcqec
