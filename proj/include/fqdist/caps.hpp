#pragma once

#include <cstdint>

namespace fqdist {

// Resource limits for the exhaustive / brute-force code paths. Every cap
// violation raises cap_error naming the violated bound, so callers can tell
// "too big to verify at this scale" apart from "verified false".
struct Caps {
  std::uint64_t max_field_size = 1u << 20;        // q = p^k
  std::uint64_t max_enum_points = 1u << 24;       // q^d sweeps (spheres, histograms)
  std::uint64_t max_dense_spectrum_n = 1000;      // dense eigensolver vertex count
  std::uint64_t max_char_sweep_ops = 1u << 30;    // q^(2d-1) * ext_degree
  std::uint64_t max_subset_enum = 50'000'000;     // goodness / hypothesis subsets
  std::uint64_t max_pair_count = 200'000'000;     // |X|*|Y| brute-force pair scans
  std::uint64_t max_backtrack_nodes = 10'000'000; // exhaustive tree embedding
  std::uint32_t max_tree_enum_vertices = 8;       // colored tree generator
};

}  // namespace fqdist
