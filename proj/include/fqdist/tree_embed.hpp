#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqdist/expander.hpp"

namespace fqdist {

// An item pairs a host vertex with a color; residuals and expansion
// hypotheses quantify over sets of items.
using Item = std::pair<std::int32_t, std::int32_t>;

// A tree on {0..n-1} whose edges carry colors in [0, t).
class ColoredTree {
 public:
  static ColoredTree from_edges(std::int32_t n, std::vector<std::array<std::int32_t, 3>> edges,
                                std::int32_t t);

  std::int32_t vertex_count() const { return n_; }
  std::int32_t color_count() const { return t_; }
  const std::vector<std::array<std::int32_t, 3>>& edges() const { return edges_; }
  // (neighbor, color) pairs, sorted by neighbor.
  std::span<const Item> adjacency(std::int32_t v) const;
  std::int32_t degree(std::int32_t v, std::int32_t color) const;
  std::int32_t max_degree(std::int32_t color) const;  // Delta_r

 private:
  std::int32_t n_ = 0, t_ = 0;
  std::vector<std::array<std::int32_t, 3>> edges_;
  std::vector<std::vector<Item>> adj_;
  std::vector<std::vector<std::int32_t>> degree_;  // [v][color]
  std::vector<std::int32_t> max_degree_;           // [color]
};

// Injective color-respecting map from an embedded subtree into the host.
// embedded_degree tracks, per tree vertex, how many of its tree edges have
// both endpoints embedded, split by color; those are the D_{H,r} values the
// residual consumes.
struct PartialEmbedding {
  PartialEmbedding(const ColoredTree& tree, std::int32_t host_n);

  std::vector<std::int32_t> tree_to_host;  // -1 when unassigned
  std::vector<std::int32_t> host_to_tree;  // -1 when unused
  Bitset image;
  std::vector<std::vector<std::int32_t>> embedded_degree;  // [tree_v][color]
  std::int32_t embedded_count = 0;

  void assign(const ColoredTree& tree, std::int32_t tree_v, std::int32_t host_v);
  void unassign(const ColoredTree& tree, std::int32_t tree_v);
};

// R(X, phi) = |Gamma(X) \ image| - sum over (v, r) in X of
//             (Delta - D_{H,r}(phi^{-1}(v))), with degree 0 off the image.
// X is treated as a set; duplicates are rejected.
std::int64_t residual(const ColoredFamily& g, const PartialEmbedding& emb, std::int32_t delta,
                      std::span<const Item> items);

enum class GoodnessKind { kGood, kViolated, kCapped };

struct GoodnessVerdict {
  GoodnessKind kind = GoodnessKind::kGood;
  std::vector<Item> witness;  // a violating X when kViolated
  std::uint64_t subsets_checked = 0;
};

// Exhaustively decides whether R(X, phi) >= 0 for every item set X with
// 1 <= |X| <= s. Exceeding the enumeration cap yields kCapped, which is
// distinct from both true and false.
GoodnessVerdict is_s_good(const ColoredFamily& g, const PartialEmbedding& emb, std::int32_t delta,
                          std::int32_t s, const Caps& caps = {});

struct ClauseReport {
  bool vacuous = false;  // empty size range
  bool pass = false;
  std::int64_t min_slack = 0;
  std::vector<Item> witness;  // tightest (or violating) item set
};

struct HypothesesReport {
  ClauseReport small_sets;  // |Gamma(X)| >= Delta|X| + 1 for 1 <= |X| <= m
  ClauseReport large_sets;  // |Gamma(X)| >= Delta|X| + k for m < |X| <= 2m
  // min over the large range of |Gamma(X)| - Delta|X|; the largest k the
  // large-set clause supports. INT64_MAX when the range is empty.
  std::int64_t k_max = 0;
  std::uint64_t subsets_checked = 0;
  bool capped = false;
  bool pass() const { return !capped && small_sets.pass && large_sets.pass; }
};

// Exhaustive verification of both expansion hypotheses for (delta, m, k).
HypothesesReport check_hypotheses(const ColoredFamily& g, std::int32_t delta, std::int32_t m,
                                  std::int64_t k, const Caps& caps = {});

struct GoodnessParams {
  std::int32_t delta = 2;
  std::int32_t m = 1;
  std::int64_t tree_bound_k = 1;
  std::int32_t s_cap = 2;  // largest subset size enumerated in goodness checks
};

enum class EmbedStrategy { kExactGood, kGreedy, kBacktrack };

struct ExtendResult {
  bool ok = false;
  std::int32_t chosen_host = -1;
  std::int32_t candidates = 0;
  std::string reason;  // set on failure
};

// Embeds the not-yet-embedded leaf tree vertex `leaf_v`, attached in the tree
// to the embedded vertex `anchor_u` by an edge of color `color`.
//   exact-good: smallest candidate whose extension stays s_cap-good;
//   greedy:     candidate maximizing the min-over-colors residual degree
//               |Gamma_{G_r}(w) \ image|, ties by index (heuristic, no
//               guarantee).
ExtendResult extend_leaf(const ColoredFamily& g, PartialEmbedding& emb, const ColoredTree& tree,
                         std::int32_t leaf_v, std::int32_t anchor_u, std::int32_t color,
                         EmbedStrategy strategy, const GoodnessParams& params,
                         const Caps& caps = {});

struct TreeEmbedResult {
  bool ok = false;
  std::vector<std::int32_t> embedding;  // tree vertex -> host vertex
  // failure details
  std::int32_t failed_tree_vertex = -1;
  std::string reason;
  std::uint64_t backtrack_nodes = 0;
};

// Embeds the tree vertex by vertex in BFS order from vertex 0, so every
// added vertex is a leaf attached to the embedded subtree. The backtrack
// strategy searches assignments exhaustively (budgeted). Any returned
// embedding is validated before return.
TreeEmbedResult embed_tree(const ColoredFamily& g, const ColoredTree& tree,
                           const GoodnessParams& params, EmbedStrategy strategy,
                           const Caps& caps = {});

// Every tree on up to n_max vertices (one representative per isomorphism
// class, vertex 0 a canonical root) with every edge coloring in t colors up
// to color permutation. Counts per size are checked against the free-tree
// table 1, 1, 1, 2, 3, 6, 11, 23 before returning.
std::vector<ColoredTree> enumerate_colored_trees(std::int32_t n_max, std::int32_t t,
                                                 const Caps& caps = {});

}  // namespace fqdist
