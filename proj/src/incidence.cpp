#include "fqdist/incidence.hpp"

#include <algorithm>
#include <cmath>

#include <boost/dynamic_bitset.hpp>

#include "fqdist/error.hpp"

namespace fqdist {

void validate_sphere_set(const SphereSet& spheres) {
  SphereSet sorted = spheres;
  std::sort(sorted.begin(), sorted.end(), [](const SphereRef& a, const SphereRef& b) {
    return a.center != b.center ? a.center < b.center : a.radius < b.radius;
  });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1]) throw usage_error("sphere set contains a duplicate sphere");
}

namespace {

std::int64_t count_pairs(const DistanceGraphFamily& geometry,
                         const std::vector<std::uint32_t>& points, const SphereSet& spheres) {
  const FieldSpec& f = geometry.field();
  std::int64_t count = 0;
  for (const SphereRef& s : spheres) {
    const Point center = geometry.decode(s.center);
    for (std::uint32_t pt : points) {
      const Point x = geometry.decode(pt);
      elem_t norm = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const elem_t diff = f.sub(x[i], center[i]);
        norm = f.add(norm, f.mul(diff, diff));
      }
      if (norm == s.radius) ++count;
    }
  }
  return count;
}

std::int64_t count_translate(const DistanceGraphFamily& geometry,
                             const std::vector<std::uint32_t>& points, const SphereSet& spheres) {
  boost::dynamic_bitset<std::uint64_t> in_x(geometry.vertex_count());
  for (std::uint32_t pt : points) {
    if (pt >= geometry.vertex_count()) throw usage_error("point index outside the space");
    if (in_x.test(pt)) throw usage_error("point set contains a duplicate point");
    in_x.set(pt);
  }
  std::int64_t count = 0;
  for (const SphereRef& s : spheres)
    for (std::uint32_t offset : geometry.sphere(s.radius).points)
      if (in_x.test(geometry.point_add(s.center, offset))) ++count;
  return count;
}

}  // namespace

std::int64_t count_incidences(const DistanceGraphFamily& geometry,
                              const std::vector<std::uint32_t>& points, const SphereSet& spheres,
                              IncidenceStrategy strategy, const Caps& caps) {
  validate_sphere_set(spheres);
  const std::uint64_t pair_cost =
      static_cast<std::uint64_t>(points.size()) * spheres.size();
  const std::uint64_t translate_cost =
      static_cast<std::uint64_t>(spheres.size()) * geometry.vertex_count();
  switch (strategy) {
    case IncidenceStrategy::kPairs:
      if (pair_cost > caps.max_pair_count)
        throw cap_error("|X|*|Y| exceeds max_pair_count = " + std::to_string(caps.max_pair_count));
      return count_pairs(geometry, points, spheres);
    case IncidenceStrategy::kTranslate:
      if (translate_cost > caps.max_pair_count)
        throw cap_error("|Y|*|sphere| exceeds max_pair_count = " +
                        std::to_string(caps.max_pair_count));
      return count_translate(geometry, points, spheres);
    case IncidenceStrategy::kBoth: {
      if (pair_cost > caps.max_pair_count || translate_cost > caps.max_pair_count)
        throw cap_error("incidence dual-strategy cost exceeds max_pair_count = " +
                        std::to_string(caps.max_pair_count));
      const std::int64_t a = count_pairs(geometry, points, spheres);
      const std::int64_t b = count_translate(geometry, points, spheres);
      if (a != b) throw internal_error("incidence counting strategies disagree");
      return a;
    }
  }
  throw usage_error("unknown incidence strategy");
}

IncidenceBoundReport bound_check_general(const DistanceGraphFamily& geometry,
                                         const std::vector<std::uint32_t>& points,
                                         const SphereSet& spheres, double exponent_override,
                                         const Caps& caps) {
  IncidenceBoundReport report;
  report.incidences = count_incidences(geometry, points, spheres, IncidenceStrategy::kBoth, caps);
  const double q = geometry.field().q();
  report.exponent = exponent_override >= 0.0 ? exponent_override : geometry.dimension() / 2.0;
  report.expected = static_cast<double>(points.size()) * static_cast<double>(spheres.size()) / q;
  report.lhs = std::abs(static_cast<double>(report.incidences) - report.expected);
  report.rhs = std::pow(q, report.exponent) *
               std::sqrt(static_cast<double>(points.size()) * static_cast<double>(spheres.size()));
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-9;
  return report;
}

}  // namespace fqdist
