#pragma once

#include <cstdint>
#include <vector>

#include "fqdist/distgraph.hpp"

namespace fqdist {

// A sphere given by center (point index) and radius; radius zero is allowed.
struct SphereRef {
  std::uint32_t center = 0;
  elem_t radius = 0;

  friend bool operator==(const SphereRef&, const SphereRef&) = default;
};

using SphereSet = std::vector<SphereRef>;

// (center, radius) pairs must be distinct.
void validate_sphere_set(const SphereSet& spheres);

enum class IncidenceStrategy {
  kPairs,      // scan X x Y testing ||x - center|| = radius
  kTranslate,  // scan each sphere's point set against an X membership table
  kBoth,       // run both, error on disagreement
};

// Exact count of (point, sphere) pairs with the point on the sphere.
std::int64_t count_incidences(const DistanceGraphFamily& geometry,
                              const std::vector<std::uint32_t>& points, const SphereSet& spheres,
                              IncidenceStrategy strategy = IncidenceStrategy::kBoth,
                              const Caps& caps = {});

struct IncidenceBoundReport {
  std::int64_t incidences = 0;
  double expected = 0.0;  // |X| |Y| / q
  double lhs = 0.0;       // |I - expected|
  double rhs = 0.0;       // q^exponent sqrt(|X| |Y|)
  double exponent = 0.0;  // d/2 unless overridden
  double slack = 0.0;
  bool pass = false;
};

// Checks |I(X,Y) - |X||Y|/q| <= q^(d/2) sqrt(|X||Y|). The exponent can be
// overridden to probe sharper hypothetical bounds; such runs are
// observational and carry no guarantee.
IncidenceBoundReport bound_check_general(const DistanceGraphFamily& geometry,
                                         const std::vector<std::uint32_t>& points,
                                         const SphereSet& spheres,
                                         double exponent_override = -1.0,
                                         const Caps& caps = {});

}  // namespace fqdist
