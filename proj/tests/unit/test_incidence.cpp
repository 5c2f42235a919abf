#include <doctest.h>

#include <memory>

#include "fqdist/incidence.hpp"
#include "fqdist/rng.hpp"

using namespace fqdist;

namespace {

DistanceGraphFamily geometry(std::uint32_t p, std::uint32_t d) {
  FieldSpec f = FieldSpec::build(p, 1);
  return DistanceGraphFamily(f, d, DistanceGraphFamily::all_radii(f));
}

}  // namespace

TEST_SUITE("incidence") {

TEST_CASE("trivial counts") {
  const DistanceGraphFamily g = geometry(3, 2);
  SphereSet one = {{0, 1}};
  CHECK(count_incidences(g, {}, one) == 0);

  // a sphere against its own point set
  std::vector<std::uint32_t> own(g.sphere(1).points);
  CHECK(count_incidences(g, own, one) == static_cast<std::int64_t>(own.size()));
}

TEST_CASE("full configuration in F_3^2") {
  const DistanceGraphFamily g = geometry(3, 2);
  std::vector<std::uint32_t> all_points;
  SphereSet all_spheres;
  for (std::uint32_t v = 0; v < 9; ++v) {
    all_points.push_back(v);
    all_spheres.push_back({v, 1});
  }
  CHECK(count_incidences(g, all_points, all_spheres) == 36);  // 9 * |sphere_1|

  const IncidenceBoundReport report = bound_check_general(g, all_points, all_spheres);
  CHECK(report.incidences == 36);
  CHECK(report.lhs == doctest::Approx(9.0));   // |36 - 27|
  CHECK(report.rhs == doctest::Approx(27.0));  // 3 * 9
  CHECK(report.pass);
}

TEST_CASE("empty configuration passes") {
  const DistanceGraphFamily g = geometry(3, 2);
  const IncidenceBoundReport report = bound_check_general(g, {}, {});
  CHECK(report.incidences == 0);
  CHECK(report.pass);
}

TEST_CASE("strategies agree on random configurations with zero radii included") {
  for (auto [p, d] : {std::pair<unsigned, unsigned>{3, 2}, {5, 2}, {7, 3}}) {
    const DistanceGraphFamily g = geometry(p, d);
    const std::uint64_t n = g.vertex_count();
    Rng rng(derive_seed(123, p * 10 + d));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::uint32_t> points = rng.sample(n, 1 + rng.below(n));
      const std::uint64_t sphere_count = 1 + rng.below(20);
      SphereSet spheres;
      for (std::uint32_t code : rng.sample(n * p, sphere_count))
        spheres.push_back({code / p, static_cast<elem_t>(code % p)});
      const std::int64_t by_pairs =
          count_incidences(g, points, spheres, IncidenceStrategy::kPairs);
      const std::int64_t by_translate =
          count_incidences(g, points, spheres, IncidenceStrategy::kTranslate);
      CHECK(by_pairs == by_translate);
      CHECK(bound_check_general(g, points, spheres).pass);
    }
  }
}

TEST_CASE("duplicate spheres are rejected") {
  const DistanceGraphFamily g = geometry(3, 2);
  SphereSet dup = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(count_incidences(g, {0}, dup), usage_error);
}

TEST_CASE("pair cap") {
  const DistanceGraphFamily g = geometry(3, 2);
  Caps caps;
  caps.max_pair_count = 2;
  SphereSet spheres = {{0, 1}, {1, 1}, {2, 1}};
  CHECK_THROWS_AS(count_incidences(g, {0, 1, 2}, spheres, IncidenceStrategy::kPairs, caps),
                  cap_error);
}

TEST_CASE("observational exponent override") {
  const DistanceGraphFamily g = geometry(5, 2);
  std::vector<std::uint32_t> points = {0, 1, 2, 3, 4};
  SphereSet spheres = {{0, 1}, {7, 2}};
  const IncidenceBoundReport standard = bound_check_general(g, points, spheres);
  const IncidenceBoundReport sharper = bound_check_general(g, points, spheres, 0.5);
  CHECK(standard.exponent == doctest::Approx(1.0));
  CHECK(sharper.exponent == doctest::Approx(0.5));
  CHECK(sharper.rhs < standard.rhs);
}

}  // TEST_SUITE
