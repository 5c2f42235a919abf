#include "fqdist/dfs_path.hpp"

#include <algorithm>
#include <cmath>

#include "fqdist/error.hpp"
#include "fqdist/incidence.hpp"
#include "fqdist/rng.hpp"

namespace fqdist {

ColoredPath ColoredPath::cyclic(std::int32_t length, std::int32_t t) {
  if (length < 1) throw usage_error("path length must be >= 1");
  if (t < 1) throw usage_error("color count must be >= 1");
  ColoredPath p;
  p.length = length;
  p.colors.resize(length - 1);
  for (std::int32_t i = 0; i + 1 < length; ++i) p.colors[i] = i % t;
  return p;
}

ColoredPath ColoredPath::random(std::int32_t length, std::int32_t t, std::uint64_t seed) {
  if (length < 1) throw usage_error("path length must be >= 1");
  if (t < 1) throw usage_error("color count must be >= 1");
  ColoredPath p;
  p.length = length;
  p.colors.resize(length - 1);
  Rng rng(seed);
  for (auto& c : p.colors) c = static_cast<std::int32_t>(rng.below(t));
  return p;
}

DfsState dfs_init(const ColoredFamily& g, const VertexSet& s) {
  DfsState state;
  state.in_a = s.bitset(g.vertex_count());
  state.in_u = Bitset(g.vertex_count());
  state.in_b = Bitset(g.vertex_count());
  state.b_sets.resize(g.color_count());
  state.a_count = static_cast<std::int64_t>(s.size());
  return state;
}

bool dfs_terminal(const DfsState& state) {
  return state.a_count == 0 && state.u_stack.empty();
}

void dfs_step(DfsState& state, const ColoredFamily& g, const ColoredPath& path) {
  if (dfs_terminal(state)) throw usage_error("dfs_step called on a terminal state");
  ++state.steps;

  if (state.u_stack.empty()) {
    while (!state.in_a.test(state.a_scan_pos)) ++state.a_scan_pos;
    const std::int32_t v = state.a_scan_pos;
    state.in_a.reset(v);
    --state.a_count;
    state.in_u.set(v);
    state.u_stack.push_back(v);
    return;
  }

  const std::int32_t k = static_cast<std::int32_t>(state.u_stack.size());
  if (k >= path.length) throw usage_error("dfs_step called after the path prefix is complete");
  const std::int32_t color = path.colors[k - 1];
  const std::int32_t head = state.u_stack.back();

  if (state.a_count > 0) {
    for (std::int32_t w : g.neighbors(head, color)) {
      if (!state.in_a.test(w)) continue;
      state.in_a.reset(w);
      --state.a_count;
      state.in_u.set(w);
      state.u_stack.push_back(w);
      return;
    }
  }

  state.u_stack.pop_back();
  state.in_u.reset(head);
  state.in_b.set(head);
  state.b_sets[color].push_back(head);
}

void dfs_validate(const DfsState& state, const ColoredFamily& g, const ColoredPath& path,
                  const VertexSet& s) {
  const Bitset in_s = s.bitset(g.vertex_count());
  Bitset all = state.in_a | state.in_u | state.in_b;
  if (all != in_s) throw internal_error("dfs state does not cover S");
  if ((state.in_a & state.in_u).any() || (state.in_a & state.in_b).any() ||
      (state.in_u & state.in_b).any())
    throw internal_error("dfs state classes overlap");
  if (static_cast<std::int64_t>(state.in_a.count()) != state.a_count)
    throw internal_error("dfs A census mismatch");

  std::int64_t b_total = 0;
  for (const auto& b : state.b_sets) b_total += static_cast<std::int64_t>(b.size());
  if (static_cast<std::size_t>(b_total) != state.in_b.count())
    throw internal_error("dfs B census mismatch");

  // Embedded prefix: injective (bitset membership) and color-respecting.
  for (std::size_t i = 0; i + 1 < state.u_stack.size(); ++i) {
    const std::int32_t color = path.colors[i];
    if (!g.adjacent(state.u_stack[i], state.u_stack[i + 1], color))
      throw internal_error("dfs prefix edge misses its color relation");
  }

  // e(A, B_r) = 0.
  for (std::int32_t c = 0; c < g.color_count(); ++c)
    for (std::int32_t b : state.b_sets[c])
      for (std::int32_t nb : g.neighbors(b, c))
        if (state.in_a.test(nb)) throw internal_error("dfs discard set still sees A");
}

PathEmbedResult embed_path(const ColoredFamily& g, const VertexSet& s, const ColoredPath& path,
                           const PathEmbedOptions& opts) {
  for (std::int32_t c : path.colors)
    if (c < 0 || c >= g.color_count()) throw usage_error("path color outside the family");

  DfsState state = dfs_init(g, s);
  if (opts.snapshot) opts.snapshot(state);
  if (opts.validate_each_step) dfs_validate(state, g, path, s);

  PathEmbedResult result;
  while (true) {
    if (static_cast<std::int32_t>(state.u_stack.size()) == path.length) {
      result.success = true;
      break;
    }
    if (dfs_terminal(state)) break;
    dfs_step(state, g, path);
    result.max_u_reached =
        std::max(result.max_u_reached, static_cast<std::int32_t>(state.u_stack.size()));
    if (opts.snapshot) opts.snapshot(state);
    if (opts.validate_each_step) dfs_validate(state, g, path, s);
  }

  result.steps = state.steps;
  result.b_census.resize(g.color_count());
  for (std::int32_t c = 0; c < g.color_count(); ++c)
    result.b_census[c] = static_cast<std::int64_t>(state.b_sets[c].size());

  if (result.success) {
    result.embedding = state.u_stack;
    // Validate before returning: injectivity and colors.
    Bitset seen(g.vertex_count());
    for (std::int32_t v : result.embedding) {
      if (seen.test(v)) throw internal_error("path embedding is not injective");
      seen.set(v);
    }
    for (std::size_t i = 0; i + 1 < result.embedding.size(); ++i)
      if (!g.adjacent(result.embedding[i], result.embedding[i + 1], path.colors[i]))
        throw internal_error("path embedding misses a color relation");
  }
  return result;
}

IncidenceCertReport incidence_certificate(const DfsState& state, const ColoredFamily& g) {
  if (!g.has_distance_backing())
    throw usage_error("incidence certificate requires a distance-backed family");
  const auto& backing = g.backing();
  const auto& geom = *backing.geometry;

  std::vector<std::uint32_t> a_points;
  for (std::int32_t v = 0; v < g.vertex_count(); ++v)
    if (state.in_a.test(v)) a_points.push_back(g.label(v));

  SphereSet spheres;
  for (std::int32_t c = 0; c < g.color_count(); ++c)
    for (std::int32_t b : state.b_sets[c])
      spheres.push_back({g.label(b), geom.radii()[c]});
  validate_sphere_set(spheres);

  IncidenceCertReport report;
  report.a_size = state.a_count;
  report.b_total = static_cast<std::int64_t>(spheres.size());
  report.incidences = count_incidences(geom, a_points, spheres, IncidenceStrategy::kBoth);
  report.incidences_zero = report.incidences == 0;
  report.budget =
      std::pow(static_cast<double>(geom.field().q()), (geom.dimension() + 2) / 2.0);
  report.budget_applicable = static_cast<double>(report.a_size) >= 1.0 + report.budget;
  report.budget_ok =
      !report.budget_applicable || static_cast<double>(report.b_total) <= report.budget;
  return report;
}

}  // namespace fqdist
