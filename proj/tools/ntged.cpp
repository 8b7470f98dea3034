// Command-line front end: pair, exact, gen, bench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ntged/bench.hpp"
#include "ntged/exact.hpp"
#include "ntged/ged_approx.hpp"
#include "ntged/graph.hpp"

namespace {

using namespace ntged;

// Loads one graph from each file into a shared label dictionary, so equal
// label names compare equal across the two files.
struct GraphPair {
  Dataset data;
  const LabeledGraph& g() const { return data.graphs[0]; }
  const LabeledGraph& h() const { return data.graphs[1]; }
};

GraphPair load_pair(const std::string& f1, const std::string& f2) {
  GraphPair pair;
  for (const auto& path : {f1, f2}) {
    const std::size_t before = pair.data.graphs.size();
    append_graph_file(path, pair.data);
    const std::size_t read = pair.data.graphs.size() - before;
    if (read == 0) throw std::runtime_error("no graph in '" + path + "'");
    if (read > 1) pair.data.graphs.resize(before + 1);  // first record only
  }
  return pair;
}

std::string describe(const EditOperation& op, const LabelDictionary& labels) {
  std::string s = to_string(op.kind);
  switch (op.kind) {
    case EditOpKind::delete_vertex:
      s += " " + std::to_string(op.u);
      break;
    case EditOpKind::relabel_vertex:
    case EditOpKind::insert_vertex:
      s += " " + std::to_string(op.u) + " -> " + labels.vertex_name(op.label);
      break;
    case EditOpKind::delete_edge:
      s += " " + std::to_string(op.u) + "-" + std::to_string(op.v);
      break;
    case EditOpKind::relabel_edge:
    case EditOpKind::insert_edge:
      s += " " + std::to_string(op.u) + "-" + std::to_string(op.v) + " -> " + labels.edge_name(op.label);
      break;
  }
  return s + "  (" + op.cost.to_string() + ")";
}

void print_mapping(const VertexMapping& mapping) {
  std::cout << "mapping:";
  for (std::size_t v = 0; v < mapping.size(); ++v) {
    std::cout << ' ' << v << "->" << (mapping[v] ? std::to_string(*mapping[v]) : std::string("eps"));
  }
  std::cout << '\n';
}

struct MethodFlags {
  std::string method = "nt";
  int height = 3;
  int k = -1;
  std::string weight = "1/2";
  std::string cache = "pair";

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "bgm | nt | nt1 | wl")
        ->check(CLI::IsMember({"bgm", "nt", "nt1", "wl"}))
        ->capture_default_str();
    cmd->add_option("--height", height, "neighborhood height")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--k", k, "redundancy for method nt (default 0)");
    cmd->add_option("--weight", weight, "level weight w in [0,1], e.g. 0.5 or 1/2")->capture_default_str();
    cmd->add_option("--cache", cache, "off | pair | global")
        ->check(CLI::IsMember({"off", "pair", "global"}))
        ->capture_default_str();
  }

  ApproxConfig config() const {
    ApproxConfig cfg = config_for_method(method, height);
    if (k >= 0) {
      if (cfg.method != Method::nt) throw std::invalid_argument("--k applies to method nt only");
      cfg.k = k;
    }
    cfg.weight = Rational::parse(weight);
    cfg.cache = parse_cache_mode(cache);
    cfg.validate();
    return cfg;
  }
};

int run_pair(const std::string& f1, const std::string& f2, const MethodFlags& flags, bool show_ops) {
  const auto pair = load_pair(f1, f2);
  const ApproxConfig cfg = flags.config();
  std::unique_ptr<SdtedCache> cache;
  if (cfg.cache == CacheMode::global) cache = std::make_unique<SdtedCache>();
  const ApproxResult r = approx_ged(pair.g(), pair.h(), cfg, cache.get());

  std::cout << "method: " << cfg.method_name();
  if (cfg.method != Method::bgm) std::cout << " h=" << cfg.height << " k=" << cfg.effective_k() << " w=" << cfg.weight;
  std::cout << '\n';
  std::cout << "bound: " << r.upper_bound << " (" << r.upper_bound.to_double() << ")\n";
  print_mapping(r.mapping);

  std::size_t counts[6] = {};
  for (const auto& op : r.path.operations) ++counts[static_cast<int>(op.kind)];
  std::cout << "edit path: " << r.path.operations.size() << " operations, cost " << r.path.cost << '\n';
  for (auto kind : {EditOpKind::delete_edge, EditOpKind::relabel_edge, EditOpKind::relabel_vertex,
                    EditOpKind::delete_vertex, EditOpKind::insert_vertex, EditOpKind::insert_edge}) {
    if (counts[static_cast<int>(kind)] > 0) {
      std::cout << "  " << to_string(kind) << ": " << counts[static_cast<int>(kind)] << '\n';
    }
  }
  if (show_ops) {
    for (const auto& op : r.path.operations) std::cout << "  " << describe(op, pair.data.labels) << '\n';
  }
  std::cout << "time_us: trees=" << r.timings.trees.count() / 1000.0 << " matrix=" << r.timings.matrix.count() / 1000.0
            << " lap=" << r.timings.lap.count() / 1000.0 << " path=" << r.timings.path.count() / 1000.0 << '\n';
  std::cout << "cache: hits=" << r.cache_stats.hits << " misses=" << r.cache_stats.misses << '\n';
  return 0;
}

int run_exact(const std::string& f1, const std::string& f2, std::size_t guard) {
  const auto pair = load_pair(f1, f2);
  ExactOptions options;
  options.max_total_vertices = guard;
  const ExactResult r = exact_ged_search(pair.g(), pair.h(), EditCostModel::uniform(), options);
  std::cout << "exact: " << r.distance << '\n';
  print_mapping(r.mapping);
  std::cout << "expanded: " << r.expanded_nodes << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph edit distance bounds from neighborhood trees"};
  app.require_subcommand(1);

  std::string f1, f2;
  MethodFlags pair_flags;
  bool show_ops = false;
  auto* pair = app.add_subcommand("pair", "upper bound and edit path for two graphs");
  pair->add_option("--g1", f1, "first graph file")->required()->check(CLI::ExistingFile);
  pair->add_option("--g2", f2, "second graph file")->required()->check(CLI::ExistingFile);
  pair->add_flag("--ops", show_ops, "list every edit operation");
  pair_flags.attach(pair);

  std::size_t guard = 24;
  auto* exact = app.add_subcommand("exact", "exact graph edit distance (small graphs)");
  exact->add_option("--g1", f1, "first graph file")->required()->check(CLI::ExistingFile);
  exact->add_option("--g2", f2, "second graph file")->required()->check(CLI::ExistingFile);
  exact->add_option("--max-vertices", guard, "limit on |V(G)|+|V(H)|")->capture_default_str();

  SyntheticSpec gen_spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a seeded synthetic corpus");
  gen->add_option("--count", gen_spec.count)->capture_default_str();
  gen->add_option("--min-vertices", gen_spec.min_vertices)->capture_default_str();
  gen->add_option("--max-vertices", gen_spec.max_vertices)->capture_default_str();
  gen->add_option("--p", gen_spec.edge_probability, "edge probability")->capture_default_str();
  gen->add_option("--vertex-labels", gen_spec.vertex_labels)->capture_default_str();
  gen->add_option("--edge-labels", gen_spec.edge_labels)->capture_default_str();
  gen->add_option("--seed", gen_spec.seed)->capture_default_str();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  std::string spec_path, dataset;
  MethodFlags bench_flags;
  ExperimentSpec bench_spec;
  bool no_exact = false;
  auto* bench = app.add_subcommand("bench", "relative error and runtime experiment");
  bench->add_option("--spec", spec_path, "JSON experiment description")->check(CLI::ExistingFile);
  bench->add_option("--dataset", dataset, "graph file (default: synthetic corpus)")->check(CLI::ExistingFile);
  bench_flags.attach(bench);
  bench->add_option("--seed", bench_spec.seed, "pair sampling seed")->capture_default_str();
  bench->add_option("--pairs", bench_spec.pairs)->capture_default_str();
  bench->add_option("--workers", bench_spec.workers)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--repeats", bench_spec.repeats)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", bench_spec.output_path, "CSV output (default stdout)");
  bench->add_flag("--no-exact", no_exact, "skip the exact oracle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pair) return run_pair(f1, f2, pair_flags, show_ops);
    if (*exact) return run_exact(f1, f2, guard);
    if (*gen) {
      const Dataset data = generate_synthetic(gen_spec);
      if (gen_out.empty()) {
        write_graphs(std::cout, data.graphs, data.labels);
      } else {
        std::ofstream out(gen_out);
        if (!out) throw std::runtime_error("cannot write '" + gen_out + "'");
        write_graphs(out, data.graphs, data.labels);
      }
      return 0;
    }
    if (*bench) {
      ExperimentSpec spec;
      if (!spec_path.empty()) {
        spec = load_experiment_spec(spec_path);
        // Explicit flags override the file.
        if (bench->count("--out")) spec.output_path = bench_spec.output_path;
        if (bench->count("--workers")) spec.workers = bench_spec.workers;
        if (bench->count("--seed")) spec.seed = bench_spec.seed;
        if (bench->count("--pairs")) spec.pairs = bench_spec.pairs;
        if (bench->count("--repeats")) spec.repeats = bench_spec.repeats;
      } else {
        spec = bench_spec;
        spec.methods.push_back(bench_flags.config());
      }
      if (!dataset.empty()) spec.dataset_path = dataset;
      if (no_exact) spec.exact = false;

      const ErrorReport report = run_experiment(spec);
      for (const auto& line : report.log) std::cerr << line << '\n';
      if (spec.output_path.empty()) {
        write_csv(std::cout, report);
      } else {
        std::ofstream out(spec.output_path);
        if (!out) throw std::runtime_error("cannot write '" + spec.output_path + "'");
        write_csv(out, report);
      }
      for (const auto& s : report.summaries) {
        std::cerr << s.method;
        if (s.method != "bgm") std::cerr << " h=" << s.height << " k=" << s.k;
        std::cerr << ": R=";
        if (s.mean_relative_error) std::cerr << *s.mean_relative_error;
        else std::cerr << "n/a";
        std::cerr << " over " << s.error_pairs << " pairs (" << s.zero_distance_skipped << " with d=0 skipped, "
                  << s.exact_unavailable << " without exact), mean time " << s.mean_total_us() << " us\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
