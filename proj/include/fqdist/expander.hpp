#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fqdist/distgraph.hpp"
#include "fqdist/rng.hpp"

namespace fqdist {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

// Sorted duplicate-free index set over a family universe.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<std::int32_t> sorted_unique);
  static VertexSet of(std::vector<std::int32_t> any_order);  // sorts + dedups
  static VertexSet full(std::int32_t n);

  const std::vector<std::int32_t>& indices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  bool contains(std::int32_t x) const;
  Bitset bitset(std::size_t universe) const;

  VertexSet set_union(const VertexSet& o) const;
  VertexSet set_intersect(const VertexSet& o) const;
  VertexSet set_minus(const VertexSet& o) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::int32_t> v_;
};

// Ties a family vertex back to the geometry it came from.
struct DistanceBacking {
  std::shared_ptr<const DistanceGraphFamily> geometry;
  // labels[v] = point index in F_q^d for family vertex v.
  std::vector<std::uint32_t> labels;
};

// A t-colored graph family on one vertex universe: one symmetric irreflexive
// relation per color, materialized as sorted adjacency lists. Hosts every
// embedder in this project. Immutable after construction.
class ColoredFamily {
 public:
  static ColoredFamily from_adjacency(std::vector<std::vector<std::vector<std::int32_t>>> adj_by_color);
  // Full space; attaches character-sum certificates per color.
  static ColoredFamily from_distance(std::shared_ptr<const DistanceGraphFamily> geometry,
                                     unsigned workers = 1);
  // Restriction to a set of point indices (universe reindexed to 0..|S|-1).
  static ColoredFamily from_distance_subset(std::shared_ptr<const DistanceGraphFamily> geometry,
                                            const std::vector<std::uint32_t>& point_indices,
                                            unsigned workers = 1);

  std::int32_t vertex_count() const { return n_; }
  std::int32_t color_count() const { return static_cast<std::int32_t>(adj_.size()); }
  std::span<const std::int32_t> neighbors(std::int32_t v, std::int32_t color) const;
  std::int32_t degree(std::int32_t v, std::int32_t color) const {
    return static_cast<std::int32_t>(neighbors(v, color).size());
  }
  bool adjacent(std::int32_t u, std::int32_t v, std::int32_t color) const;

  const std::optional<SpectralCertificate>& certificate(std::int32_t color) const;
  void set_certificate(std::int32_t color, SpectralCertificate cert);

  // Same colors, universe S (reindexed); certificates are dropped because an
  // induced subgraph is no longer regular.
  ColoredFamily induce(const VertexSet& s) const;

  bool has_distance_backing() const { return backing_.has_value(); }
  const DistanceBacking& backing() const;
  // Point index of a vertex (identity map when not distance-backed).
  std::uint32_t label(std::int32_t v) const;

 private:
  ColoredFamily() = default;
  void validate() const;
  std::int32_t n_ = 0;
  std::vector<std::vector<std::vector<std::int32_t>>> adj_;  // [color][v] sorted
  std::vector<std::optional<SpectralCertificate>> certs_;
  std::optional<DistanceBacking> backing_;
};

// Ordered pairs (x, y) in X x Y with xy an edge of the given color; pairs
// inside X intersect Y are hit twice by symmetry, matching e_G(X, Y).
std::int64_t edge_count(const ColoredFamily& g, std::int32_t color, const VertexSet& x,
                        const VertexSet& y);

struct MixingReport {
  std::int64_t edges = 0;
  double expected = 0.0;  // D |X| |Y| / n
  double lhs = 0.0;       // |edges - expected|
  double rhs = 0.0;       // lambda sqrt(|X| |Y|)
  double slack = 0.0;     // rhs - lhs
  bool pass = false;
};

MixingReport mixing_check(const ColoredFamily& g, std::int32_t color, const VertexSet& x,
                          const VertexSet& y);

VertexSet neighborhood_union(const ColoredFamily& g,
                             std::span<const std::pair<std::int32_t, std::int32_t>> items);

struct PeelRemoval {
  std::int32_t vertex = 0;
  std::int32_t witness_color = 0;
  std::int32_t degree_at_removal = 0;
};

struct PeelReport {
  VertexSet input;
  double c_param = 0.0;
  double lambda_used = 0.0;
  double tau = 0.0;  // removal threshold C * lambda / 4
  VertexSet survivors;
  std::vector<PeelRemoval> removals;
  // Removal-count guarantee 8 t C^-2 |S|, valid when C >= 4 sqrt(t) and the
  // set is at least as large as the size the guarantee is stated for
  // (implied_c = |S| D_min / (n lambda) >= C).
  double removed_bound = 0.0;
  double implied_c = 0.0;
  bool theorem_applies = false;
  bool removed_bound_ok = false;
  std::int32_t min_surviving_degree = 0;  // over colors and surviving vertices
};

// Repeatedly removes the smallest-index vertex whose within-set degree in
// some color falls below tau = C * lambda / 4, until none remains. The fixed
// point is the unique maximal subset with min color-degree >= tau, so the
// outcome is removal-order independent.
PeelReport peel(const ColoredFamily& g, const VertexSet& s, double c_param);

// Same fixed point under an explicit threshold (no certificates involved).
struct ThresholdPeelResult {
  VertexSet survivors;
  std::vector<PeelRemoval> removals;
  std::int32_t min_surviving_degree = 0;
};
ThresholdPeelResult peel_to_threshold(const ColoredFamily& g, const VertexSet& s, double tau);
// Test hook: removal order driven by rng; the surviving set must match.
ThresholdPeelResult peel_to_threshold_random_order(const ColoredFamily& g, const VertexSet& s,
                                                   double tau, Rng& rng);

struct StarColorReport {
  std::int32_t color = 0;
  std::int32_t min_degree = 0;  // min within-W degree
  double threshold = 0.0;       // |S| / (6q), distance-backed only
  bool pass = false;
};

struct StarReport {
  std::vector<StarColorReport> per_color;
  bool has_threshold = false;
};

// Per-color minimum degree inside W, compared against the star threshold
// |S| / (6q) when the family is distance-backed.
StarReport star_report(const ColoredFamily& g, const VertexSet& w, std::uint64_t s_size);

// Largest C for which the peeling guarantee is stated at this set size:
// |S| = C n lambda / D with the conservative (max lambda, min degree) pair.
double implied_c(const ColoredFamily& g, std::uint64_t s_size);

struct ConjectureProbeReport {
  double c_param = 0.0;
  double tau = 0.0;  // |S| / (10 q)
  std::uint64_t s_size = 0;
  std::uint64_t removed = 0;
  double conjectured_removals = 0.0;  // 100 C^-2 |S|
  double ratio = 0.0;                 // removed / conjectured
  std::int32_t min_surviving_degree = 0;
};

// Empirical probe only: peels at threshold |S| / (10q) against every nonzero
// distance and reports the removal count against 100 C^-2 |S|. Requires a
// distance-backed family whose colors cover all of F_q^*.
ConjectureProbeReport probe_min_degree_conjecture(const ColoredFamily& g, const VertexSet& s,
                                                  double c_param);

// Random regular host generator for synthetic test families: deterministic
// circulant start followed by seeded degree-preserving edge swaps.
std::vector<std::vector<std::int32_t>> random_regular_graph(std::int32_t n, std::int32_t degree,
                                                            Rng& rng);

}  // namespace fqdist
