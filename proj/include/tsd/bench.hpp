#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsd/event_graph_json.hpp"
#include "tsd/solve.hpp"

namespace tsd {

struct BenchRecord {
  std::string instance;
  std::string method;
  std::size_t locations_before = 0;
  std::size_t locations_after = 0;
  std::size_t reduction_steps = 0;
  std::uint64_t turns = 0;
  bool optimal = false;
  std::size_t reps = 0;
  double mean_ms = 0;
  double min_ms = 0;
  std::uint64_t nodes = 0;
  std::size_t rounds = 0;
  std::size_t cuts = 0;
  std::size_t width = 0;
  std::string error;  // empty on success
};

class CrossCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kBenchHeader =
    "# tsd-bench v1\n"
    "instance,method,locations_before,locations_after,reduction_steps,turns,optimal,reps,mean_ms,min_ms,nodes,"
    "rounds,cuts,width,error\n";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string bench_to_csv(const std::vector<BenchRecord>& rows) {
  std::ostringstream os;
  os << kBenchHeader;
  char buf[64];
  for (const auto& r : rows) {
    os << detail::csv_field(r.instance) << ',' << r.method << ',';
    if (r.error.empty()) {
      os << r.locations_before << ',' << r.locations_after << ',' << r.reduction_steps << ',' << r.turns << ','
         << (r.optimal ? 1 : 0) << ',' << r.reps << ',';
      std::snprintf(buf, sizeof buf, "%.3f,%.3f", r.mean_ms, r.min_ms);
      os << buf << ',' << r.nodes << ',' << r.rounds << ',' << r.cuts << ',' << r.width << ",\n";
    } else {
      os << r.locations_before << ",,,,,,,,,,,," << detail::csv_field(r.error) << '\n';
    }
  }
  return os.str();
}

/// Runs every method `reps` times on every *.json instance of `dir` (sorted by
/// file name), one cell at a time. Per-cell failures become error rows; two
/// optimal results with different turn counts abort with CrossCheckError.
inline std::vector<BenchRecord> run_bench(const std::filesystem::path& dir, const std::vector<Method>& methods,
                                          std::size_t reps = 5, const SolveOptions& options = {}) {
  if (reps == 0) throw std::invalid_argument("reps must be positive");
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename().string().find(".meta.") == std::string::npos) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchRecord> rows;
  for (const auto& file : files) {
    const std::string name = file.filename().string();
    std::optional<EventGraph> g;
    std::string load_error;
    try {
      std::ifstream in(file, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      auto parsed = parse_event_graph(buf.str());
      auto report = validate(parsed);
      if (!report.ok()) throw InvalidGraphError(report);
      g = normalize(parsed);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    std::optional<std::uint64_t> agreed;
    std::string agreed_by;
    for (auto method : methods) {
      BenchRecord rec;
      rec.instance = name;
      rec.method = to_string(method);
      if (!g) {
        rec.error = load_error;
        rows.push_back(rec);
        continue;
      }
      rec.locations_before = g->location_count();
      try {
        double total = 0, best = std::numeric_limits<double>::max();
        SolveResult last;
        for (std::size_t k = 0; k < reps; ++k) {
          last = solve(*g, method, options);
          total += last.stats.wall_ms;
          best = std::min(best, last.stats.wall_ms);
        }
        rec.locations_after = last.stats.locations_reduced;
        rec.reduction_steps = last.stats.reduction_steps;
        rec.turns = last.turns;
        rec.optimal = last.optimal;
        rec.reps = reps;
        rec.mean_ms = total / static_cast<double>(reps);
        rec.min_ms = best;
        rec.nodes = last.stats.nodes;
        rec.rounds = last.stats.rounds;
        rec.cuts = last.stats.cuts;
        rec.width = last.stats.width;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      if (rec.error.empty() && rec.optimal) {
        if (agreed && *agreed != rec.turns) {
          throw CrossCheckError("cross-check failed on " + name + ": " + agreed_by + " found " +
                                std::to_string(*agreed) + " turns, " + rec.method + " found " +
                                std::to_string(rec.turns));
        }
        agreed = rec.turns;
        agreed_by = rec.method;
      }
      rows.push_back(rec);
    }
  }
  return rows;
}

}  // namespace tsd
