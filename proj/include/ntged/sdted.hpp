#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "ntged/costs.hpp"
#include "ntged/ntree.hpp"

namespace ntged {

/// Memo of subtree distances keyed by (code, code[, depth]).
///
/// Owns the CodeTable its keys refer to, so every structure compared through
/// one cache must be encoded with cache.codes(). The depth is part of the key
/// only when the level weights are not all 1. A cache is bound to the first
/// cost configuration it sees; using it with another one throws.
/// Thread-safe; concurrent workers may race to fill the same key, which is
/// harmless because the values are deterministic.
class SdtedCache {
 public:
  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::size_t entries = 0;
  };

  CodeTable& codes() { return codes_; }

  std::optional<Rational> find(CodeId a, CodeId b, int depth);
  void store(CodeId a, CodeId b, int depth, const Rational& value);

  /// Binds the cache to a configuration on first use.
  void bind(const EditCostModel& costs, const LevelWeights& weights);

  Stats stats() const;

 private:
  struct Key {
    CodeId a, b;
    int depth;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = (static_cast<std::uint64_t>(k.a) << 32) ^ k.b;
      h ^= static_cast<std::uint64_t>(k.depth + 1) * 0x9E3779B97F4A7C15ull;
      h *= 0xBF58476D1CE4E5B9ull;
      return static_cast<std::size_t>(h ^ (h >> 31));
    }
  };

  CodeTable codes_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, Rational, KeyHash> values_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
  bool depth_keyed_ = true;
  std::optional<EditCostModel> bound_costs_;
  std::optional<Rational> bound_weight_;
};

enum class Side { deletion, insertion };

/// A structure together with the per-node data reused across comparisons.
struct PreparedStructure {
  const NeighborhoodStructure* structure = nullptr;
  std::vector<CodeId> codes;       // empty when no cache is used
  std::vector<Rational> deletion;  // weighted cost of removing each node's subtree (no incoming link)
  std::vector<Rational> insertion;
};

/// Structure- and depth-preserving tree edit distance with level weights.
///
/// Matched nodes are always on the same depth. For a matched pair the cost is
/// the weighted relabel cost of the two nodes plus an optimal assignment of
/// their children, where matching two children also pays the weighted edge
/// substitution of the two parent links, and an unmatched child pays its link
/// plus its whole subtree. The child assignment is padded to a square matrix
/// of side max(children); an entry pairing two real children is capped at
/// "delete one, insert the other", which keeps the padded form exact for
/// cost models where substitution is dearer than deletion plus insertion.
/// Edge costs of a link are charged at the depth of its lower endpoint.
///
/// Works on trees and on compressed structures alike: shared nodes are
/// evaluated once per node pair within a call.
class SdtedComputer {
 public:
  SdtedComputer(EditCostModel costs, LevelWeights weights, SdtedCache* cache = nullptr);

  PreparedStructure prepare(const NeighborhoodStructure& s) const;

  Rational distance(const PreparedStructure& a, const PreparedStructure& b) const;

  /// Weighted cost of deleting (or inserting) the whole structure.
  Rational removal_cost(const PreparedStructure& s, Side side) const;

  const EditCostModel& costs() const { return costs_; }
  const LevelWeights& weights() const { return weights_; }
  SdtedCache* cache() const { return cache_; }

 private:
  Rational link_removal(Label edge_label, int child_depth, Side side) const;

  EditCostModel costs_;
  LevelWeights weights_;
  SdtedCache* cache_;
};

/// One-shot convenience wrapper around SdtedComputer.
Rational sdted(const NeighborhoodStructure& a, const NeighborhoodStructure& b,
               const EditCostModel& costs, const LevelWeights& weights,
               SdtedCache* cache = nullptr);

/// Weighted cost of removing the subtree below `node` (deletion) or of
/// inserting it (insertion), counted with the multiplicities of the expanded
/// tree. The link from `parent` to `node` is included when a parent is given;
/// for a node with exactly one parent that link is included by default.
/// Throws std::out_of_range for an unknown node and std::invalid_argument if
/// `parent` is not a parent of `node`, or if `node` has several parents and
/// none was named.
Rational subtree_removal_cost(const NeighborhoodStructure& s, NodeId node,
                              const EditCostModel& costs, const LevelWeights& weights,
                              Side side = Side::deletion,
                              std::optional<NodeId> parent = std::nullopt);

}  // namespace ntged
