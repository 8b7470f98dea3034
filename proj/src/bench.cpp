#include "ntged/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ntged/exact.hpp"

namespace ntged {

namespace {

// Portable draws on top of mt19937_64, whose output sequence is fixed by the
// standard (the std distributions are not).
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::string letter_name(std::size_t index, char first, std::size_t span) {
  if (index < span) return std::string(1, static_cast<char>(first + index));
  return std::string(1, first) + std::to_string(index);
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double to_us(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) / 1000.0; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (min_vertices > max_vertices) throw std::invalid_argument("min_vertices exceeds max_vertices");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  if (vertex_labels == 0 || edge_labels == 0) throw std::invalid_argument("label alphabets must be non-empty");
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Dataset out;
  for (std::size_t l = 0; l < spec.vertex_labels; ++l) out.labels.vertex_label(letter_name(l, 'a', 23));
  for (std::size_t l = 0; l < spec.edge_labels; ++l) out.labels.edge_label(letter_name(l, 'x', 3));

  Random rng(spec.seed);
  for (std::size_t gi = 0; gi < spec.count; ++gi) {
    const std::size_t n = spec.min_vertices + rng.below(spec.max_vertices - spec.min_vertices + 1);
    std::vector<Label> labels(n);
    for (auto& l : labels) l = static_cast<Label>(rng.below(spec.vertex_labels));
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (rng.unit() < spec.edge_probability) {
          edges.push_back({u, v, static_cast<Label>(rng.below(spec.edge_labels))});
        }
      }
    }
    out.graphs.emplace_back(std::move(labels), std::move(edges), std::to_string(gi));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t graph_count, std::size_t count,
                                                              std::uint64_t seed) {
  const std::size_t available = graph_count < 2 ? 0 : graph_count * (graph_count - 1);
  if (count > available) {
    throw std::invalid_argument("requested " + std::to_string(count) + " pairs but only " +
                                std::to_string(available) + " distinct pairs exist");
  }
  Random rng(seed ^ 0x5DEECE66Dull);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (count * 2 > available) {
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < graph_count; ++i) {
      for (std::size_t j = 0; j < graph_count; ++j) {
        if (i != j) all.emplace_back(i, j);
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(all[i], all[i + rng.below(all.size() - i)]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  while (out.size() < count) {
    const std::size_t i = rng.below(graph_count);
    const std::size_t j = rng.below(graph_count);
    if (i == j || !seen.emplace(i, j).second) continue;
    out.emplace_back(i, j);
  }
  return out;
}

double relative_error(const Rational& exact, const Rational& approx) {
  if (!(exact > Rational(0))) throw std::invalid_argument("relative error needs a positive exact distance");
  Rational diff = approx - exact;
  if (diff < Rational(0)) diff = -diff;
  return (diff / exact).to_double();
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open experiment spec '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid experiment spec '" + path + "': " + e.what());
  }

  ExperimentSpec spec;
  auto weight_of = [](const nlohmann::json& v) {
    return v.is_string() ? Rational::parse(v.get<std::string>()) : Rational::parse(std::to_string(v.get<double>()));
  };
  try {
    if (j.contains("dataset")) {
      const auto& d = j.at("dataset");
      if (d.contains("file")) spec.dataset_path = d.at("file").get<std::string>();
      if (d.contains("synthetic")) {
        const auto& s = d.at("synthetic");
        auto& out = spec.synthetic;
        out.count = s.value("count", out.count);
        out.min_vertices = s.value("min_vertices", out.min_vertices);
        out.max_vertices = s.value("max_vertices", out.max_vertices);
        out.edge_probability = s.value("edge_probability", out.edge_probability);
        out.vertex_labels = s.value("vertex_labels", out.vertex_labels);
        out.edge_labels = s.value("edge_labels", out.edge_labels);
        out.seed = s.value("seed", out.seed);
      }
    }
    spec.pairs = j.value("pairs", spec.pairs);
    spec.seed = j.value("seed", spec.seed);
    spec.exact = j.value("exact", spec.exact);
    spec.exact_max_total_vertices = j.value("exact_max_total_vertices", spec.exact_max_total_vertices);
    spec.workers = j.value("workers", spec.workers);
    spec.repeats = j.value("repeats", spec.repeats);
    spec.output_path = j.value("out", spec.output_path);

    const Rational default_weight = j.contains("weight") ? weight_of(j.at("weight")) : Rational(1, 2);
    const CacheMode default_cache = parse_cache_mode(j.value("cache", std::string("pair")));
    for (const auto& m : j.at("methods")) {
      ApproxConfig cfg = config_for_method(m.at("method").get<std::string>(), m.value("height", 3));
      if (m.contains("k") && cfg.method == Method::nt) cfg.k = m.at("k").get<int>();
      cfg.weight = m.contains("weight") ? weight_of(m.at("weight")) : default_weight;
      cfg.cache = m.contains("cache") ? parse_cache_mode(m.at("cache").get<std::string>()) : default_cache;
      cfg.validate();
      spec.methods.push_back(cfg);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid experiment spec '" + path + "': " + e.what());
  }
  if (spec.methods.empty()) throw std::runtime_error("experiment spec lists no methods");
  return spec;
}

ErrorReport run_experiment(const ExperimentSpec& spec) {
  const Dataset data = spec.dataset_path ? read_graph_file(*spec.dataset_path) : generate_synthetic(spec.synthetic);
  return run_experiment(spec, data);
}

ErrorReport run_experiment(const ExperimentSpec& spec, const Dataset& data) {
  if (spec.repeats == 0) throw std::invalid_argument("repeats must be positive");
  const auto pairs = sample_pairs(data.graphs.size(), spec.pairs, spec.seed);
  ErrorReport report;

  std::vector<std::optional<Rational>> exact(pairs.size());
  if (spec.exact) {
    std::vector<std::string> notes(pairs.size());
    parallel_for(pairs.size(), spec.workers, [&](std::size_t p) {
      const auto& g = data.graphs[pairs[p].first];
      const auto& h = data.graphs[pairs[p].second];
      ExactOptions options;
      options.max_total_vertices = spec.exact_max_total_vertices;
      try {
        exact[p] = exact_ged(g, h, EditCostModel::uniform(), options);
      } catch (const SizeGuardError& e) {
        notes[p] = "pair " + std::to_string(p) + ": exact oracle skipped (" + e.what() + ")";
      }
    });
    for (auto& note : notes) {
      if (!note.empty()) report.log.push_back(std::move(note));
    }
  }

  for (const auto& cfg : spec.methods) {
    cfg.validate();
    std::unique_ptr<SdtedCache> shared;
    if (cfg.cache == CacheMode::global && cfg.method != Method::bgm) shared = std::make_unique<SdtedCache>();

    std::vector<PairRecord> rows(pairs.size());
    parallel_for(pairs.size(), spec.workers, [&](std::size_t p) {
      const auto& g = data.graphs[pairs[p].first];
      const auto& h = data.graphs[pairs[p].second];
      PairRecord& r = rows[p];
      r.pair_id = p;
      r.g1 = pairs[p].first;
      r.g2 = pairs[p].second;
      r.g1_name = g.name();
      r.g2_name = h.name();
      r.method = cfg.method_name();
      r.height = cfg.method == Method::bgm ? 0 : cfg.height;
      r.k = cfg.method == Method::bgm ? 0 : cfg.effective_k();
      r.weight = cfg.weight;
      PhaseTimings sum;
      for (std::size_t run = 0; run < spec.repeats; ++run) {
        const ApproxResult res = approx_ged(g, h, cfg, shared.get());
        if (run == 0) {
          r.bound = res.upper_bound;
          r.cache_hits = res.cache_stats.hits;
          r.cache_misses = res.cache_stats.misses;
        } else if (!(res.upper_bound == r.bound)) {
          throw std::logic_error("non-deterministic bound for pair " + std::to_string(p));
        }
        sum.trees += res.timings.trees;
        sum.matrix += res.timings.matrix;
        sum.lap += res.timings.lap;
        sum.path += res.timings.path;
      }
      const double runs = static_cast<double>(spec.repeats);
      r.t_trees_us = to_us(sum.trees) / runs;
      r.t_matrix_us = to_us(sum.matrix) / runs;
      r.t_lap_us = to_us(sum.lap) / runs;
      r.t_path_us = to_us(sum.path) / runs;
      r.exact = exact[p];
      if (r.exact && *r.exact > Rational(0)) r.rel_err = relative_error(*r.exact, r.bound);
    });

    MethodSummary s;
    s.method = cfg.method_name();
    s.height = rows.empty() ? 0 : rows.front().height;
    s.k = rows.empty() ? 0 : rows.front().k;
    s.weight = cfg.weight;
    s.pairs = rows.size();
    double err_sum = 0, bound_sum = 0;
    for (const auto& r : rows) {
      bound_sum += r.bound.to_double();
      s.t_trees_us += r.t_trees_us;
      s.t_matrix_us += r.t_matrix_us;
      s.t_lap_us += r.t_lap_us;
      s.t_path_us += r.t_path_us;
      s.cache_hits += r.cache_hits;
      s.cache_misses += r.cache_misses;
      if (!r.exact) {
        ++s.exact_unavailable;
      } else if (!r.rel_err) {
        ++s.zero_distance_skipped;
      } else {
        err_sum += *r.rel_err;
        ++s.error_pairs;
      }
    }
    if (s.error_pairs > 0) s.mean_relative_error = err_sum / static_cast<double>(s.error_pairs);
    if (!rows.empty()) {
      const double n = static_cast<double>(rows.size());
      s.mean_bound = bound_sum / n;
      s.t_trees_us /= n;
      s.t_matrix_us /= n;
      s.t_lap_us /= n;
      s.t_path_us /= n;
    }
    report.summaries.push_back(s);
    for (auto& r : rows) report.records.push_back(std::move(r));
  }
  return report;
}

void write_csv(std::ostream& out, const ErrorReport& report) {
  out << "pair_id,g1_id,g2_id,method,height,k,weight,bound,exact,rel_err,"
         "t_trees_us,t_matrix_us,t_lap_us,t_path_us,cache_hits,cache_misses\n";
  for (const auto& r : report.records) {
    out << r.pair_id << ',' << csv_field(r.g1_name) << ',' << csv_field(r.g2_name) << ',' << r.method << ','
        << r.height << ',' << r.k << ',' << r.weight << ',' << r.bound << ','
        << (r.exact ? r.exact->to_string() : "") << ',' << (r.rel_err ? fixed(*r.rel_err, 6) : "") << ','
        << fixed(r.t_trees_us, 1) << ',' << fixed(r.t_matrix_us, 1) << ',' << fixed(r.t_lap_us, 1) << ','
        << fixed(r.t_path_us, 1) << ',' << r.cache_hits << ',' << r.cache_misses << '\n';
  }
  for (const auto& s : report.summaries) {
    out << "mean,,," << s.method << ',' << s.height << ',' << s.k << ',' << s.weight << ','
        << fixed(s.mean_bound, 6) << ",," << (s.mean_relative_error ? fixed(*s.mean_relative_error, 6) : "")
        << ',' << fixed(s.t_trees_us, 1) << ',' << fixed(s.t_matrix_us, 1) << ',' << fixed(s.t_lap_us, 1)
        << ',' << fixed(s.t_path_us, 1) << ',' << s.cache_hits << ',' << s.cache_misses << '\n';
  }
}

}  // namespace ntged
