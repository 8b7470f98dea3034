#include <doctest.h>

#include <random>

#include "ntged/exact.hpp"
#include "ntged/ged_approx.hpp"
#include "oracles.hpp"

using namespace ntged;

namespace {

std::vector<ApproxConfig> all_configs() {
  return {ApproxConfig::bgm(), ApproxConfig::nt(0), ApproxConfig::nt(1), ApproxConfig::nt(3),
          ApproxConfig::nt1(2), ApproxConfig::wl(2), ApproxConfig::wl(3), ApproxConfig::nt(2, 2)};
}

}  // namespace

TEST_CASE("config factories") {
  CHECK(ApproxConfig::wl(4).effective_k() == 4);
  CHECK(ApproxConfig::nt1(3).effective_k() == 1);
  CHECK(ApproxConfig::nt(3).method_name() == "nt");
  CHECK(ApproxConfig::nt1(3).method_name() == "nt1");
  CHECK(ApproxConfig::bgm().method_name() == "bgm");
  CHECK(config_for_method("wl", 2).method == Method::wl);
  CHECK_THROWS_AS(config_for_method("walks", 2), std::invalid_argument);
  CHECK(parse_cache_mode("global") == CacheMode::global);
  CHECK_THROWS(parse_cache_mode("always"));
  ApproxConfig bad = ApproxConfig::nt(-1);
  CHECK_THROWS(bad.validate());
  bad = ApproxConfig::nt(2);
  bad.weight = Rational(2);
  CHECK_THROWS(bad.validate());
}

TEST_CASE("single vertex matrices") {
  const LabeledGraph a({0}, {});
  for (const auto& cfg : all_configs()) {
    const auto m = build_cost_matrix(a, a, cfg);
    REQUIRE(m.matrix.size() == 1);
    CHECK(m.matrix(0, 0) == Rational(0));
  }
}

TEST_CASE("bgm matrix example") {
  // G = a-b, H = a.
  const LabeledGraph g({0, 1}, {{0, 1, 0}});
  const LabeledGraph h({0}, {});
  const auto m = build_cost_matrix(g, h, ApproxConfig::bgm());
  CHECK_FALSE(m.swapped);
  REQUIRE(m.matrix.size() == 2);
  const CostMatrix expected{{1, 2}, {2, 2}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(m.matrix(i, j) == expected(i, j));
  CHECK(m.matrix.real_columns() == 1);
  // Swapping the operands orients the same way.
  const auto r = build_cost_matrix(h, g, ApproxConfig::bgm());
  CHECK(r.swapped);
  CHECK(r.matrix == m.matrix);
}

TEST_CASE("height zero reduces to root comparison") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_graph(rng, oracle::uniform(rng, 2, 7), 0.4, 3, 2);
    const auto h = oracle::random_graph(rng, oracle::uniform(rng, 1, g.vertex_count()), 0.4, 3, 2);
    const auto nt = build_cost_matrix(g, h, ApproxConfig::nt(0));
    CHECK(nt.matrix == build_cost_matrix(g, h, ApproxConfig::wl(0)).matrix);
    CHECK(nt.matrix == build_cost_matrix(g, h, ApproxConfig::nt1(0)).matrix);
    const auto& rows = nt.swapped ? h : g;
    const auto& cols = nt.swapped ? g : h;
    for (VertexId i = 0; i < rows.vertex_count(); ++i) {
      for (VertexId j = 0; j < cols.vertex_count(); ++j) {
        CHECK(nt.matrix(i, j) == Rational(rows.vertex_label(i) == cols.vertex_label(j) ? 0 : 1));
      }
      for (std::size_t j = cols.vertex_count(); j < nt.matrix.size(); ++j) CHECK(nt.matrix(i, j) == Rational(1));
    }
  }
}

TEST_CASE("wl equals nt with k = h") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_graph(rng, oracle::uniform(rng, 2, 7), 0.4, 3, 2);
    const auto h = oracle::random_graph(rng, oracle::uniform(rng, 2, 7), 0.4, 3, 2);
    for (int height = 0; height <= 3; ++height) {
      CHECK(build_cost_matrix(g, h, ApproxConfig::wl(height)).matrix ==
            build_cost_matrix(g, h, ApproxConfig::nt(height, height)).matrix);
    }
  }
}

TEST_CASE("edit path example") {
  const LabeledGraph g({0, 1}, {{0, 1, 0}});
  const LabeledGraph h({0}, {});
  const VertexMapping m{0u, std::nullopt};
  const auto path = derive_edit_path(g, h, m, EditCostModel::uniform());
  REQUIRE(path.operations.size() == 2);
  CHECK(path.operations[0].kind == EditOpKind::delete_edge);
  CHECK(path.operations[1].kind == EditOpKind::delete_vertex);
  CHECK(path.operations[1].u == 1);
  CHECK(path.cost == Rational(2));
  CHECK(is_isomorphic(apply_edit_path(g, path), h));
  CHECK(std::string(to_string(EditOpKind::delete_edge)) == "DeleteEdge");

  const auto r = approx_ged(g, h, ApproxConfig::bgm());
  CHECK(r.upper_bound == Rational(2));
  CHECK(r.path == path);
}

TEST_CASE("isomorphic graphs give an empty path") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_graph(rng, oracle::uniform(rng, 1, 8), 0.4, 3, 2);
    for (const auto& cfg : all_configs()) {
      const auto r = approx_ged(g, g, cfg);
      CHECK(r.upper_bound == Rational(0));
      CHECK(r.path.operations.empty());
    }
  }
}

TEST_CASE("equal labels with mismatched edges give edge operations only") {
  const LabeledGraph g({0, 0, 0}, {{0, 1, 0}, {1, 2, 1}});
  const LabeledGraph h({0, 0, 0}, {{0, 1, 1}, {0, 2, 0}});
  const VertexMapping m{0u, 1u, 2u};
  const auto path = derive_edit_path(g, h, m, EditCostModel::uniform());
  for (const auto& op : path.operations) {
    CHECK((op.kind == EditOpKind::delete_edge || op.kind == EditOpKind::relabel_edge ||
           op.kind == EditOpKind::insert_edge));
  }
  CHECK(path.cost == Rational(3));  // relabel 0-1, delete 1-2, insert 0-2
  CHECK(is_isomorphic(apply_edit_path(g, path), h));
}

TEST_CASE("bounds are realized edit paths") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 60; ++t) {
    const auto g = oracle::random_graph(rng, oracle::uniform(rng, 0, 6), 0.4, 3, 2);
    const auto h = oracle::random_graph(rng, oracle::uniform(rng, 0, 6), 0.4, 3, 2);
    const Rational exact = oracle::ged_enumerate(g, h, EditCostModel::uniform());
    for (const auto& cfg : all_configs()) {
      const auto r = approx_ged(g, h, cfg);
      CHECK(r.upper_bound >= exact);
      CHECK(r.path.cost == r.upper_bound);
      CHECK(oracle::induced_cost(g, h, r.mapping, cfg.costs) == r.upper_bound);
      CHECK(mapping_cost(g, h, r.mapping, cfg.costs) == r.upper_bound);
      CHECK(is_isomorphic(apply_edit_path(g, r.path), h));
      CHECK(approx_ged(h, g, cfg).upper_bound == r.upper_bound);
      const auto again = approx_ged(g, h, cfg);
      CHECK(again.path == r.path);
      CHECK(again.mapping == r.mapping);
    }
  }
}

TEST_CASE("empty graphs") {
  const LabeledGraph empty;
  const LabeledGraph g({0, 1}, {{0, 1, 0}});
  for (const auto& cfg : all_configs()) {
    CHECK(approx_ged(empty, empty, cfg).upper_bound == Rational(0));
    const auto del = approx_ged(g, empty, cfg);
    CHECK(del.upper_bound == Rational(3));
    CHECK(apply_edit_path(g, del.path).vertex_count() == 0);
    const auto ins = approx_ged(empty, g, cfg);
    CHECK(ins.upper_bound == Rational(3));
    CHECK(is_isomorphic(apply_edit_path(empty, ins.path), g));
  }
}

TEST_CASE("cache modes give identical bounds") {
  std::mt19937_64 rng(55);
  SdtedCache global;
  for (int t = 0; t < 30; ++t) {
    const auto g = oracle::random_graph(rng, oracle::uniform(rng, 2, 9), 0.35, 3, 2);
    const auto h = oracle::random_graph(rng, oracle::uniform(rng, 2, 9), 0.35, 3, 2);
    auto cfg = ApproxConfig::nt(3);
    cfg.cache = CacheMode::off;
    const auto off = approx_ged(g, h, cfg);
    cfg.cache = CacheMode::per_pair;
    const auto pair = approx_ged(g, h, cfg);
    cfg.cache = CacheMode::global;
    const auto shared = approx_ged(g, h, cfg, &global);
    CHECK(off.upper_bound == pair.upper_bound);
    CHECK(off.upper_bound == shared.upper_bound);
    CHECK(off.path == pair.path);
    CHECK(off.cache_stats.hits + off.cache_stats.misses == 0);
  }
  auto cfg = ApproxConfig::nt(2);
  cfg.cache = CacheMode::global;
  CHECK_THROWS(approx_ged(LabeledGraph({0}, {}), LabeledGraph({0}, {}), cfg));
}

TEST_CASE("apply_edit_path rejects illegal operations") {
  const LabeledGraph g({0, 1}, {{0, 1, 0}});
  EditPath bad;
  bad.operations.push_back({EditOpKind::delete_vertex, 0, 0, 0, Rational(1)});
  CHECK_THROWS_AS(apply_edit_path(g, bad), std::invalid_argument);
  EditPath missing;
  missing.operations.push_back({EditOpKind::delete_edge, 0, 5, 0, Rational(1)});
  CHECK_THROWS_AS(apply_edit_path(g, missing), std::invalid_argument);
  EditPath twice;
  twice.operations.push_back({EditOpKind::insert_edge, 0, 1, 0, Rational(1)});
  CHECK_THROWS_AS(apply_edit_path(g, twice), std::invalid_argument);
}

TEST_CASE("invalid mappings are rejected") {
  const LabeledGraph g({0, 1}, {{0, 1, 0}});
  const LabeledGraph h({0, 1}, {});
  CHECK_THROWS(derive_edit_path(g, h, VertexMapping{0u}, EditCostModel::uniform()));
  CHECK_THROWS(derive_edit_path(g, h, VertexMapping{0u, 0u}, EditCostModel::uniform()));
  CHECK_THROWS(derive_edit_path(g, h, VertexMapping{0u, 4u}, EditCostModel::uniform()));
}

TEST_CASE("timings are recorded") {
  std::mt19937_64 rng(56);
  const auto g = oracle::random_graph(rng, 9, 0.4, 3, 2);
  const auto h = oracle::random_graph(rng, 8, 0.4, 3, 2);
  const auto r = approx_ged(g, h, ApproxConfig::nt(3));
  CHECK(r.timings.total().count() > 0);
  CHECK(r.cache_stats.misses > 0);
}
