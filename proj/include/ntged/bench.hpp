#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ntged/ged_approx.hpp"
#include "ntged/graph.hpp"

namespace ntged {

struct SyntheticSpec {
  std::size_t count = 40;
  std::size_t min_vertices = 8;
  std::size_t max_vertices = 12;
  double edge_probability = 0.25;
  std::size_t vertex_labels = 3;
  std::size_t edge_labels = 2;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument for an inconsistent spec.
  void validate() const;
};

/// Seeded random graphs: vertex count uniform in [min, max], each vertex pair
/// joined independently with the edge probability, labels drawn uniformly.
/// Vertex labels are named a, b, c, ...; edge labels x, y, z, ... The output
/// depends only on the spec (mt19937_64 plus portable bounded draws).
Dataset generate_synthetic(const SyntheticSpec& spec);

/// `count` distinct ordered pairs (i, j), i != j, of [0, graph_count),
/// uniformly at random. Throws std::invalid_argument if fewer pairs exist.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t graph_count, std::size_t count,
                                                              std::uint64_t seed);

/// |d - approx| / d; requires d > 0.
double relative_error(const Rational& exact, const Rational& approx);

struct ExperimentSpec {
  std::optional<std::string> dataset_path;  // uses `synthetic` when absent
  SyntheticSpec synthetic;
  std::size_t pairs = 100;
  std::uint64_t seed = 42;  // pair sampling
  std::vector<ApproxConfig> methods;
  bool exact = true;
  std::size_t exact_max_total_vertices = 24;
  std::size_t workers = 1;
  std::size_t repeats = 5;  // timings are averaged over this many runs
  std::string output_path;
};

/// Reads an experiment description from JSON, e.g.
///   {"dataset": {"synthetic": {"count": 40, "seed": 42}}, "pairs": 100,
///    "methods": [{"method": "nt", "height": 5}, {"method": "bgm"}],
///    "weight": "1/2", "cache": "pair", "exact": true, "out": "results.csv"}
ExperimentSpec load_experiment_spec(const std::string& path);

struct PairRecord {
  std::size_t pair_id = 0;
  std::size_t g1 = 0, g2 = 0;
  std::string g1_name, g2_name;
  std::string method;
  int height = 0;
  int k = 0;
  Rational weight;
  Rational bound;
  std::optional<Rational> exact;
  std::optional<double> rel_err;
  // Mean over repeats, microseconds.
  double t_trees_us = 0, t_matrix_us = 0, t_lap_us = 0, t_path_us = 0;
  std::uint64_t cache_hits = 0, cache_misses = 0;
};

struct MethodSummary {
  std::string method;
  int height = 0;
  int k = 0;
  Rational weight;
  std::size_t pairs = 0;
  std::size_t error_pairs = 0;          // pairs contributing to R
  std::size_t zero_distance_skipped = 0;
  std::size_t exact_unavailable = 0;
  std::optional<double> mean_relative_error;  // R
  double mean_bound = 0;
  // Mean phase timings over pairs, microseconds.
  double t_trees_us = 0, t_matrix_us = 0, t_lap_us = 0, t_path_us = 0;
  double mean_total_us() const { return t_trees_us + t_matrix_us + t_lap_us + t_path_us; }
  std::uint64_t cache_hits = 0, cache_misses = 0;
};

struct ErrorReport {
  std::vector<PairRecord> records;  // method-major, then pair order
  std::vector<MethodSummary> summaries;
  std::vector<std::string> log;     // skipped pairs and similar notes
};

ErrorReport run_experiment(const ExperimentSpec& spec);
/// Same, on an already loaded dataset.
ErrorReport run_experiment(const ExperimentSpec& spec, const Dataset& data);

/// CSV with header
///   pair_id,g1_id,g2_id,method,height,k,weight,bound,exact,rel_err,
///   t_trees_us,t_matrix_us,t_lap_us,t_path_us,cache_hits,cache_misses
/// followed by one row per record and one `mean` row per method.
void write_csv(std::ostream& out, const ErrorReport& report);

}  // namespace ntged
