#include <doctest.h>

#include <cmath>
#include <memory>

#include "fqdist/constructions.hpp"
#include "fqdist/rng.hpp"

using namespace fqdist;

namespace {

DistanceGraphFamily geometry(std::uint32_t p, std::uint32_t d) {
  FieldSpec f = FieldSpec::build(p, 1);
  return DistanceGraphFamily(f, d, DistanceGraphFamily::all_radii(f));
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("avoiding construction at q=3, d=5") {
  const DistanceGraphFamily g = geometry(3, 5);
  for (elem_t r = 1; r < 3; ++r) {
    const ConstructionOutput out = construct_avoiding(g, 1, r);
    CHECK(out.y_points.size() == 6);  // q^(k+1) - q^k = 9 - 3
    CHECK(!out.x_points.empty());
    const ConstructionReport report = verify_construction(g, out);
    CHECK(report.pass);
    CHECK(report.pair_count == 0);
  }
}

TEST_CASE("avoiding construction at q=7, d=5") {
  const DistanceGraphFamily g = geometry(7, 5);
  const ConstructionOutput out = construct_avoiding(g, 1, 3);
  CHECK(out.y_points.size() == 42);
  const ConstructionReport report = verify_construction(g, out);
  CHECK(report.pass);
  CHECK(report.pair_count == 0);
}

TEST_CASE("saturating construction") {
  const DistanceGraphFamily g3 = geometry(3, 3);
  // slab_k = (d-1)/2 = 1: the radius must share the tail coefficient's
  // character; for q = 3 that forces r = 2
  const ConstructionOutput special = construct_saturating(g3, 1);
  CHECK(special.target_radius == 2);
  CHECK(special.y_points.size() == 3);  // q^k
  const ConstructionReport special_report = verify_construction(g3, special);
  CHECK(special_report.pass);
  CHECK(special_report.pair_count ==
        static_cast<std::int64_t>(special.x_points.size() * special.y_points.size()));

  // non-special slab: any nonzero radius works
  const DistanceGraphFamily g5 = geometry(3, 5);
  for (elem_t r = 1; r < 3; ++r) {
    const ConstructionOutput out = construct_saturating(g5, 1, r);
    CHECK(out.y_points.size() == 3);
    CHECK(verify_construction(g5, out).pass);
  }

  // inadmissible radius in the special case
  CHECK_THROWS_AS(construct_saturating(g3, 1, 1), usage_error);
}

TEST_CASE("paired diagonal construction") {
  const DistanceGraphFamily g = geometry(3, 3);
  const ConstructionOutput out = construct_paired_diagonal(g);
  CHECK(out.x_points.size() == 9);  // q^((d+1)/2)
  const ConstructionReport report = verify_construction(g, out);
  CHECK(report.pass);

  // opposite-character radii realize no internal distance
  const FieldSpec& f = g.field();
  const int tail_char = f.legendre(out.tail_coeff);
  for (elem_t r = 1; r < f.q(); ++r)
    if (f.legendre(r) == -tail_char)
      CHECK(count_pairs_at_distance(g, out.x_points, out.x_points, r, PairForm::kQForm) == 0);
}

TEST_CASE("pair counting basics") {
  const DistanceGraphFamily g = geometry(3, 2);
  CHECK(count_pairs_at_distance(g, {0}, {0}, 1, PairForm::kNorm) == 0);  // x = y
  const std::vector<std::uint32_t> sphere(g.sphere(1).points);
  CHECK(count_pairs_at_distance(g, {0}, sphere, 1, PairForm::kNorm) ==
        static_cast<std::int64_t>(sphere.size()));

  Caps caps;
  caps.max_pair_count = 1;
  CHECK_THROWS_AS(count_pairs_at_distance(g, {0, 1}, {0, 1}, 1, PairForm::kNorm, caps),
                  cap_error);
}

TEST_CASE("pair counts sit inside the mixing window") {
  // |S_r(X,Y) - (D_r / q^d) |X||Y|| <= 2 q^((d-1)/2) sqrt(|X||Y|)
  for (auto [p, d] : {std::pair<unsigned, unsigned>{3, 2}, {5, 2}, {3, 3}}) {
    const DistanceGraphFamily g = geometry(p, d);
    const std::uint64_t n = g.vertex_count();
    Rng rng(derive_seed(271, p * 10 + d));
    for (int trial = 0; trial < 40; ++trial) {
      const std::vector<std::uint32_t> x = rng.sample(n, 1 + rng.below(n));
      const std::vector<std::uint32_t> y = rng.sample(n, 1 + rng.below(n));
      for (elem_t r = 1; r < g.field().q(); ++r) {
        const std::int64_t count = count_pairs_at_distance(g, x, y, r, PairForm::kNorm);
        const double expected = static_cast<double>(g.sphere(r).points.size()) / n *
                                static_cast<double>(x.size()) * static_cast<double>(y.size());
        const double rhs = 2.0 * std::pow(static_cast<double>(p), (d - 1) / 2.0) *
                           std::sqrt(static_cast<double>(x.size()) * static_cast<double>(y.size()));
        CHECK(std::abs(static_cast<double>(count) - expected) <= rhs + 1e-9);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  const DistanceGraphFamily even = geometry(3, 4);
  CHECK_THROWS_AS(construct_avoiding(even, 1, 1), usage_error);

  const DistanceGraphFamily g = geometry(3, 5);
  CHECK_THROWS_AS(construct_avoiding(g, 0, 1), usage_error);
  CHECK_THROWS_AS(construct_avoiding(g, 2, 1), usage_error);  // needs k < (d-1)/2
  CHECK_THROWS_AS(construct_avoiding(g, 1, 0), usage_error);
  CHECK_THROWS_AS(construct_saturating(g, 3), usage_error);
}

}  // TEST_SUITE
