#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fqdist/expander.hpp"

namespace fqdist {

// A [t]-colored path on `length` vertices; colors[i] is the color of the
// edge between path vertices i and i+1.
struct ColoredPath {
  std::int32_t length = 0;
  std::vector<std::int32_t> colors;

  static ColoredPath cyclic(std::int32_t length, std::int32_t t);
  static ColoredPath random(std::int32_t length, std::int32_t t, std::uint64_t seed);
};

// One-pass search state: A (unexplored), the ordered list U realizing a path
// prefix, and per-color discard sets B_r. A, U and the B_r partition S.
struct DfsState {
  std::vector<std::int32_t> u_stack;
  Bitset in_a, in_u, in_b;
  std::vector<std::vector<std::int32_t>> b_sets;
  std::int64_t a_count = 0;
  std::uint64_t steps = 0;
  std::int32_t a_scan_pos = 0;  // A never grows, so a monotone cursor finds its minimum
};

DfsState dfs_init(const ColoredFamily& g, const VertexSet& s);
bool dfs_terminal(const DfsState& state);

// Moves exactly one vertex: A -> U (append the smallest-index admissible
// vertex) or U -> B_r (the path head has no color-r neighbor left in A).
void dfs_step(DfsState& state, const ColoredFamily& g, const ColoredPath& path);

// Checks the partition, the embedded prefix, and e(A, B_r) = 0 for every r.
void dfs_validate(const DfsState& state, const ColoredFamily& g, const ColoredPath& path,
                  const VertexSet& s);

struct PathEmbedOptions {
  bool validate_each_step = false;
  // Called after init and after every step.
  std::function<void(const DfsState&)> snapshot = nullptr;
};

struct PathEmbedResult {
  bool success = false;
  std::vector<std::int32_t> embedding;  // path vertex i -> host vertex
  std::uint64_t steps = 0;
  std::int32_t max_u_reached = 0;
  std::vector<std::int64_t> b_census;  // per color, at termination
};

// Runs dfs_step until |U| = path.length (success) or A and U are both empty
// (failure report). A successful embedding is re-validated before return.
PathEmbedResult embed_path(const ColoredFamily& g, const VertexSet& s, const ColoredPath& path,
                           const PathEmbedOptions& opts = {});

struct IncidenceCertReport {
  std::int64_t a_size = 0;
  std::int64_t b_total = 0;
  std::int64_t incidences = 0;       // I(A, spheres around B) -- must be 0
  double budget = 0.0;               // q^((d+2)/2)
  bool budget_applicable = false;    // |A| >= 1 + budget
  bool budget_ok = false;            // b_total <= budget (when applicable)
  bool incidences_zero = false;
};

// Restates the e(A, B_r) = 0 invariant through sphere incidences: the spheres
// of radius r centered at B_r miss A entirely, and while |A| >= 1 + q^((d+2)/2)
// the discard total obeys sum_r |B_r| <= q^((d+2)/2).
IncidenceCertReport incidence_certificate(const DfsState& state, const ColoredFamily& g);

}  // namespace fqdist
