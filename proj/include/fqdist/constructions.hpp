#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqdist/distgraph.hpp"

namespace fqdist {

enum class PairForm { kNorm, kQForm };

struct ConstructionOutput {
  std::string kind;  // "avoiding" | "saturating" | "paired-diagonal"
  std::uint32_t d = 0;
  std::uint32_t slab_k = 0;
  elem_t tail_coeff = 0;     // the Q-form tail coefficient in use
  elem_t target_radius = 0;  // r
  std::vector<std::uint32_t> x_points;
  std::vector<std::uint32_t> y_points;
};

// Ordered pairs in X x Y whose difference has the given form value r.
std::int64_t count_pairs_at_distance(const DistanceGraphFamily& geometry,
                                     const std::vector<std::uint32_t>& x,
                                     const std::vector<std::uint32_t>& y, elem_t r, PairForm form,
                                     const Caps& caps = {});

// Paired-coordinate set avoiding distance r entirely: |Y| = q^(k+1) - q^k
// exactly and no pair of X x Y realizes r under the alternating form.
// X keeps the tails whose leading form value v satisfies
// eta(r - v) not in {0, eta(tail)}; dropping v = r as well as the
// eta(tail) class is what makes the avoidance exact.
ConstructionOutput construct_avoiding(const DistanceGraphFamily& geometry, std::uint32_t slab_k,
                                      elem_t r, const Caps& caps = {});

// Paired-coordinate pair (X, Y) with every pair at distance r: |Y| = q^k
// exactly and the count equals |X| * |Y|. The radius may be supplied; when
// slab_k = (d-1)/2 it must satisfy eta(r) = eta(tail).
ConstructionOutput construct_saturating(const DistanceGraphFamily& geometry, std::uint32_t slab_k,
                                        elem_t r = 0, const Caps& caps = {});

// Paired-coordinate diagonal set X of size q^((d+1)/2) whose internal
// differences all satisfy eta(Q(x - y)) in {0, eta(tail)}; distances of the
// opposite character class never occur inside X.
ConstructionOutput construct_paired_diagonal(const DistanceGraphFamily& geometry,
                                             const Caps& caps = {});

struct ConstructionCheck {
  std::string name;
  std::int64_t observed = 0;
  std::int64_t expected = 0;
  bool pass = false;
};

struct ConstructionReport {
  std::vector<ConstructionCheck> checks;
  std::int64_t pair_count = -1;  // S_r(X, Y) for avoiding/saturating
  bool pass = true;
};

// Re-verifies the construction's exact claims by brute force.
ConstructionReport verify_construction(const DistanceGraphFamily& geometry,
                                       const ConstructionOutput& out, const Caps& caps = {});

}  // namespace fqdist
