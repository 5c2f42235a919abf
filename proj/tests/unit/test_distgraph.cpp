#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "fqdist/distgraph.hpp"

using namespace fqdist;

namespace {

DistanceGraphFamily family(std::uint32_t p, std::uint32_t k, std::uint32_t d) {
  FieldSpec f = FieldSpec::build(p, k);
  return DistanceGraphFamily(f, d, DistanceGraphFamily::all_radii(f));
}

std::set<Point> point_set(const DistanceGraphFamily& g, const std::vector<std::uint32_t>& idx) {
  std::set<Point> out;
  for (std::uint32_t i : idx) out.insert(g.decode(i));
  return out;
}

}  // namespace

TEST_SUITE("distgraph") {

TEST_CASE("sphere contents in F_3^2") {
  const DistanceGraphFamily g = family(3, 1, 2);
  const Sphere& unit = g.sphere(1);
  CHECK(point_set(g, unit.points) == std::set<Point>{{0, 1}, {0, 2}, {1, 0}, {2, 0}});
  const Sphere& two = g.sphere(2);
  CHECK(point_set(g, two.points) == std::set<Point>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});

  // spheres partition the space
  std::uint64_t total = 0;
  for (elem_t r = 0; r < 3; ++r) total += g.sphere(r).points.size();
  CHECK(total == 9);
}

TEST_CASE("sphere negation symmetry across the test matrix") {
  for (auto [p, k, d] :
       {std::tuple<unsigned, unsigned, unsigned>{3, 1, 2}, {5, 1, 2}, {7, 1, 2}, {3, 2, 2},
        {3, 1, 3}, {5, 1, 3}, {3, 2, 3}}) {
    const DistanceGraphFamily g = family(p, k, d);
    for (elem_t r = 0; r < g.field().q(); ++r) {
      const Sphere& s = g.sphere(r);
      for (std::uint32_t pt : s.points)
        CHECK(std::binary_search(s.points.begin(), s.points.end(), g.point_neg(pt)));
      if (r != 0)
        CHECK(!std::binary_search(s.points.begin(), s.points.end(), g.encode(Point(d, 0))));
    }
  }
}

TEST_CASE("neighbors by sphere translation") {
  const DistanceGraphFamily g = family(3, 1, 2);
  // neighbors of the origin are the sphere itself
  const auto origin_nb = g.neighbors(g.encode({0, 0}), 1);
  CHECK(origin_nb.size() == g.sphere(1).points.size());
  for (std::uint32_t pt : g.sphere(1).points)
    CHECK(std::binary_search(origin_nb.begin(), origin_nb.end(), pt));

  // vertex-transitivity: every vertex has |sphere| neighbors
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    CHECK(g.neighbors(v, 1).size() == g.sphere(1).points.size());

  CHECK(point_set(g, g.neighbors(g.encode({1, 1}), 1)) ==
        std::set<Point>{{1, 0}, {1, 2}, {0, 1}, {2, 1}});

  CHECK_THROWS_AS(g.neighbors(0, 0), usage_error);
}

TEST_CASE("family rejects bad parameters") {
  FieldSpec f = FieldSpec::build(3, 1);
  CHECK_THROWS_AS(DistanceGraphFamily(f, 2, {0}), usage_error);
  CHECK_THROWS_AS(DistanceGraphFamily(f, 2, {1, 1}), usage_error);
  CHECK_THROWS_AS(DistanceGraphFamily(f, 2, {}), usage_error);
  CHECK_THROWS_AS(DistanceGraphFamily(f, 1, {1}), usage_error);
}

TEST_CASE("character sum eigenvalue against the hand oracle") {
  // q=3, d=2, r=1: the character at m=(1,1) sums w^(s1+s2) over the four
  // sphere points (0,1),(0,2),(1,0),(2,0): w + w^2 + w + w^2 = -2.
  const DistanceGraphFamily g = family(3, 1, 2);
  const SpectrumResult s = g.spectrum_character(1);
  CHECK(s.eigenvalues[g.encode({1, 1})] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(s.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));  // trivial character
  CHECK(s.certificate.lambda == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.certificate.lambda <= 2.0 * std::sqrt(3.0));
  CHECK(s.max_imag_residue <= 1e-9);
}

TEST_CASE("character and dense spectra agree as multisets") {
  for (auto [p, k, d] :
       {std::tuple<unsigned, unsigned, unsigned>{3, 1, 2}, {5, 1, 2}, {3, 2, 2}, {3, 1, 3}}) {
    const DistanceGraphFamily g = family(p, k, d);
    for (elem_t r : g.radii()) {
      std::vector<double> by_char = g.spectrum_character(r).eigenvalues;
      std::sort(by_char.begin(), by_char.end());
      const std::vector<double> dense = g.spectrum_dense(r);
      REQUIRE(by_char.size() == dense.size());
      for (std::size_t i = 0; i < dense.size(); ++i)
        CHECK(std::abs(by_char[i] - dense[i]) <= 1e-6);
    }
  }
}

TEST_CASE("trace identities of the eigenvalue multiset") {
  const DistanceGraphFamily g = family(5, 1, 2);
  const SpectrumResult s = g.spectrum_character(1);
  double sum = 0.0, sum_sq = 0.0;
  for (double ev : s.eigenvalues) {
    sum += ev;
    sum_sq += ev * ev;
  }
  CHECK(std::abs(sum) <= 1e-9 * 25);  // traceless adjacency
  CHECK(sum_sq == doctest::Approx(25.0 * s.certificate.degree).epsilon(1e-9));
}

TEST_CASE("parallel character sweep is worker-count independent") {
  const DistanceGraphFamily g = family(3, 2, 2);  // F_9
  const SpectrumResult one = g.spectrum_character(1, 1);
  const SpectrumResult four = g.spectrum_character(1, 4);
  REQUIRE(one.eigenvalues.size() == four.eigenvalues.size());
  for (std::size_t i = 0; i < one.eigenvalues.size(); ++i)
    CHECK(one.eigenvalues[i] == four.eigenvalues[i]);  // bitwise equal
  CHECK(one.certificate.lambda == four.certificate.lambda);
}

TEST_CASE("degree offsets match the stated membership") {
  // q=3, d=2, r=1: D = 4 = q + q^0
  const DistanceGraphFamily g2 = family(3, 1, 2);
  const NdlReport r2 = g2.verify_ndl(1);
  CHECK(r2.degree == 4);
  CHECK(r2.degree_offset == 1);
  CHECK(r2.degree_offset_ok);
  CHECK(r2.sandwich_ok);

  // q=3, d=3: D - 9 in {-3, +3}, by brute-force sphere count
  const DistanceGraphFamily g3 = family(3, 1, 3);
  for (elem_t r : g3.radii()) {
    const NdlReport rep = g3.verify_ndl(r);
    CHECK((rep.degree_offset == 3 || rep.degree_offset == -3));
    CHECK(rep.degree_offset_ok);
    CHECK(rep.lambda_ok);
  }
}

TEST_CASE("dense solver cap") {
  FieldSpec f = FieldSpec::build(3, 1);
  Caps caps;
  caps.max_dense_spectrum_n = 8;
  const DistanceGraphFamily g(f, 2, {1}, caps);
  CHECK_THROWS_AS(g.spectrum_dense(1), cap_error);
}

TEST_CASE("point encode decode round trip") {
  const DistanceGraphFamily g = family(3, 2, 3);
  for (std::uint32_t v = 0; v < g.vertex_count(); v += 37) {
    CHECK(g.encode(g.decode(v)) == v);
    CHECK(g.point_add(v, g.point_neg(v)) == 0);
    CHECK(g.point_sub(v, v) == 0);
  }
}

}  // TEST_SUITE
