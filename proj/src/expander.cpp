#include "fqdist/expander.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "fqdist/error.hpp"

namespace fqdist {

VertexSet::VertexSet(std::vector<std::int32_t> sorted_unique) : v_(std::move(sorted_unique)) {
  for (std::size_t i = 0; i + 1 < v_.size(); ++i)
    if (v_[i] >= v_[i + 1]) throw usage_error("vertex set must be sorted and duplicate-free");
  if (!v_.empty() && v_.front() < 0) throw usage_error("vertex indices must be nonnegative");
}

VertexSet VertexSet::of(std::vector<std::int32_t> any_order) {
  std::sort(any_order.begin(), any_order.end());
  any_order.erase(std::unique(any_order.begin(), any_order.end()), any_order.end());
  return VertexSet(std::move(any_order));
}

VertexSet VertexSet::full(std::int32_t n) {
  std::vector<std::int32_t> v(n);
  for (std::int32_t i = 0; i < n; ++i) v[i] = i;
  return VertexSet(std::move(v));
}

bool VertexSet::contains(std::int32_t x) const {
  return std::binary_search(v_.begin(), v_.end(), x);
}

Bitset VertexSet::bitset(std::size_t universe) const {
  Bitset b(universe);
  for (std::int32_t x : v_) {
    if (static_cast<std::size_t>(x) >= universe)
      throw usage_error("vertex index outside the universe");
    b.set(x);
  }
  return b;
}

VertexSet VertexSet::set_union(const VertexSet& o) const {
  std::vector<std::int32_t> out;
  out.reserve(v_.size() + o.v_.size());
  std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet VertexSet::set_intersect(const VertexSet& o) const {
  std::vector<std::int32_t> out;
  std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet VertexSet::set_minus(const VertexSet& o) const {
  std::vector<std::int32_t> out;
  std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

void ColoredFamily::validate() const {
  for (const auto& color_adj : adj_) {
    if (static_cast<std::int32_t>(color_adj.size()) != n_)
      throw usage_error("adjacency list count does not match universe size");
    for (std::int32_t v = 0; v < n_; ++v) {
      const auto& nb = color_adj[v];
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] < 0 || nb[i] >= n_) throw usage_error("neighbor outside the universe");
        if (nb[i] == v) throw usage_error("color relation must be irreflexive");
        if (i > 0 && nb[i] <= nb[i - 1]) throw usage_error("neighbor lists must be sorted unique");
        if (!std::binary_search(color_adj[nb[i]].begin(), color_adj[nb[i]].end(), v))
          throw usage_error("color relation must be symmetric");
      }
    }
  }
}

ColoredFamily ColoredFamily::from_adjacency(
    std::vector<std::vector<std::vector<std::int32_t>>> adj_by_color) {
  if (adj_by_color.empty()) throw usage_error("family needs at least one color");
  ColoredFamily g;
  g.n_ = static_cast<std::int32_t>(adj_by_color.front().size());
  g.adj_ = std::move(adj_by_color);
  g.certs_.resize(g.adj_.size());
  g.validate();
  return g;
}

ColoredFamily ColoredFamily::from_distance(std::shared_ptr<const DistanceGraphFamily> geometry,
                                           unsigned workers) {
  std::vector<std::uint32_t> all(geometry->vertex_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
  return from_distance_subset(std::move(geometry), all, workers);
}

ColoredFamily ColoredFamily::from_distance_subset(
    std::shared_ptr<const DistanceGraphFamily> geometry,
    const std::vector<std::uint32_t>& point_indices, unsigned workers) {
  ColoredFamily g;
  g.n_ = static_cast<std::int32_t>(point_indices.size());

  std::vector<std::int32_t> point_to_vertex(geometry->vertex_count(), -1);
  for (std::size_t i = 0; i < point_indices.size(); ++i) {
    const std::uint32_t pt = point_indices[i];
    if (pt >= geometry->vertex_count()) throw usage_error("point index outside the space");
    if (point_to_vertex[pt] != -1) throw usage_error("duplicate point in subset");
    point_to_vertex[pt] = static_cast<std::int32_t>(i);
  }

  const auto& radii = geometry->radii();
  g.adj_.resize(radii.size());
  for (std::size_t c = 0; c < radii.size(); ++c) {
    const Sphere& sph = geometry->sphere(radii[c]);
    auto& color_adj = g.adj_[c];
    color_adj.resize(g.n_);
    for (std::int32_t v = 0; v < g.n_; ++v) {
      for (std::uint32_t s : sph.points) {
        const std::int32_t w = point_to_vertex[geometry->point_add(point_indices[v], s)];
        if (w != -1) color_adj[v].push_back(w);
      }
      std::sort(color_adj[v].begin(), color_adj[v].end());
    }
  }

  g.certs_.resize(radii.size());
  const bool full_space =
      point_indices.size() == geometry->vertex_count();
  if (full_space) {
    for (std::size_t c = 0; c < radii.size(); ++c)
      g.certs_[c] = geometry->spectrum_character(radii[c], workers).certificate;
  }

  g.backing_ = DistanceBacking{std::move(geometry), point_indices};
  g.validate();
  return g;
}

std::span<const std::int32_t> ColoredFamily::neighbors(std::int32_t v, std::int32_t color) const {
  if (color < 0 || color >= color_count()) throw usage_error("unknown color");
  if (v < 0 || v >= n_) throw usage_error("vertex outside the universe");
  return adj_[color][v];
}

bool ColoredFamily::adjacent(std::int32_t u, std::int32_t v, std::int32_t color) const {
  const auto nb = neighbors(u, color);
  return std::binary_search(nb.begin(), nb.end(), v);
}

const std::optional<SpectralCertificate>& ColoredFamily::certificate(std::int32_t color) const {
  if (color < 0 || color >= color_count()) throw usage_error("unknown color");
  return certs_[color];
}

void ColoredFamily::set_certificate(std::int32_t color, SpectralCertificate cert) {
  if (color < 0 || color >= color_count()) throw usage_error("unknown color");
  certs_[color] = cert;
}

ColoredFamily ColoredFamily::induce(const VertexSet& s) const {
  if (s.empty()) throw usage_error("induced universe must be nonempty");
  ColoredFamily g;
  g.n_ = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> remap(n_, -1);
  for (std::size_t i = 0; i < s.indices().size(); ++i) {
    const std::int32_t v = s.indices()[i];
    if (v >= n_) throw usage_error("vertex index outside the universe");
    remap[v] = static_cast<std::int32_t>(i);
  }
  g.adj_.resize(adj_.size());
  for (std::size_t c = 0; c < adj_.size(); ++c) {
    g.adj_[c].resize(g.n_);
    for (std::size_t i = 0; i < s.indices().size(); ++i) {
      for (std::int32_t nb : adj_[c][s.indices()[i]]) {
        const std::int32_t w = remap[nb];
        if (w != -1) g.adj_[c][i].push_back(w);
      }
    }
  }
  g.certs_.resize(adj_.size());
  if (backing_) {
    DistanceBacking b;
    b.geometry = backing_->geometry;
    b.labels.reserve(s.size());
    for (std::int32_t v : s.indices()) b.labels.push_back(backing_->labels[v]);
    g.backing_ = std::move(b);
  }
  return g;
}

const DistanceBacking& ColoredFamily::backing() const {
  if (!backing_) throw usage_error("family is not distance-backed");
  return *backing_;
}

std::uint32_t ColoredFamily::label(std::int32_t v) const {
  if (v < 0 || v >= n_) throw usage_error("vertex outside the universe");
  return backing_ ? backing_->labels[v] : static_cast<std::uint32_t>(v);
}

std::int64_t edge_count(const ColoredFamily& g, std::int32_t color, const VertexSet& x,
                        const VertexSet& y) {
  const Bitset in_y = y.bitset(g.vertex_count());
  std::int64_t count = 0;
  for (std::int32_t v : x.indices())
    for (std::int32_t nb : g.neighbors(v, color))
      if (in_y.test(nb)) ++count;
  return count;
}

MixingReport mixing_check(const ColoredFamily& g, std::int32_t color, const VertexSet& x,
                          const VertexSet& y) {
  const auto& cert = g.certificate(color);
  if (!cert) throw usage_error("mixing check needs a spectral certificate for the color");
  MixingReport report;
  report.edges = edge_count(g, color, x, y);
  const double n = static_cast<double>(cert->n);
  report.expected = cert->degree / n * static_cast<double>(x.size()) * static_cast<double>(y.size());
  report.lhs = std::abs(static_cast<double>(report.edges) - report.expected);
  report.rhs = cert->lambda * std::sqrt(static_cast<double>(x.size()) * static_cast<double>(y.size()));
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-9;
  return report;
}

VertexSet neighborhood_union(const ColoredFamily& g,
                             std::span<const std::pair<std::int32_t, std::int32_t>> items) {
  std::vector<std::int32_t> out;
  for (const auto& [v, color] : items) {
    const auto nb = g.neighbors(v, color);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  return VertexSet::of(std::move(out));
}

namespace {

// Shared fixed-point engine; pick_next chooses among currently violating
// vertices (front of an ordered set for the canonical order).
ThresholdPeelResult peel_core(const ColoredFamily& g, const VertexSet& s, double tau,
                              Rng* rng) {
  const std::int32_t t = g.color_count();
  Bitset alive = s.bitset(g.vertex_count());

  // Within-set degrees for members of S only.
  std::vector<std::vector<std::int32_t>> deg(t);
  for (std::int32_t c = 0; c < t; ++c) {
    deg[c].assign(g.vertex_count(), 0);
    for (std::int32_t v : s.indices()) {
      std::int32_t d = 0;
      for (std::int32_t nb : g.neighbors(v, c))
        if (alive.test(nb)) ++d;
      deg[c][v] = d;
    }
  }

  auto violating_color = [&](std::int32_t v) -> std::int32_t {
    for (std::int32_t c = 0; c < t; ++c)
      if (static_cast<double>(deg[c][v]) < tau) return c;
    return -1;
  };

  std::set<std::int32_t> pending;
  for (std::int32_t v : s.indices())
    if (violating_color(v) != -1) pending.insert(v);

  ThresholdPeelResult result;
  while (!pending.empty()) {
    std::int32_t v;
    if (rng == nullptr) {
      v = *pending.begin();
    } else {
      auto it = pending.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(rng->below(pending.size())));
      v = *it;
    }
    pending.erase(v);
    const std::int32_t c = violating_color(v);
    if (c == -1) throw internal_error("pending vertex no longer violating");
    result.removals.push_back({v, c, deg[c][v]});
    alive.reset(v);
    for (std::int32_t cc = 0; cc < t; ++cc) {
      for (std::int32_t nb : g.neighbors(v, cc)) {
        if (!alive.test(nb)) continue;
        if (--deg[cc][nb] < tau) pending.insert(nb);
      }
    }
  }

  std::vector<std::int32_t> survivors;
  for (std::int32_t v : s.indices())
    if (alive.test(v)) survivors.push_back(v);
  result.survivors = VertexSet(std::move(survivors));

  result.min_surviving_degree = 0;
  bool first = true;
  for (std::int32_t v : result.survivors.indices()) {
    for (std::int32_t c = 0; c < t; ++c) {
      if (first || deg[c][v] < result.min_surviving_degree) result.min_surviving_degree = deg[c][v];
      first = false;
    }
  }
  return result;
}

}  // namespace

ThresholdPeelResult peel_to_threshold(const ColoredFamily& g, const VertexSet& s, double tau) {
  return peel_core(g, s, tau, nullptr);
}

ThresholdPeelResult peel_to_threshold_random_order(const ColoredFamily& g, const VertexSet& s,
                                                   double tau, Rng& rng) {
  return peel_core(g, s, tau, &rng);
}

double implied_c(const ColoredFamily& g, std::uint64_t s_size) {
  double lambda_max = 0.0;
  std::uint32_t degree_min = 0;
  std::uint64_t n = 0;
  bool any = false;
  for (std::int32_t c = 0; c < g.color_count(); ++c) {
    const auto& cert = g.certificate(c);
    if (!cert) throw usage_error("implied C needs certificates on every color");
    lambda_max = std::max(lambda_max, cert->lambda);
    degree_min = any ? std::min(degree_min, cert->degree) : cert->degree;
    n = cert->n;
    any = true;
  }
  if (lambda_max <= 0.0) throw usage_error("implied C needs a positive lambda");
  return static_cast<double>(s_size) * degree_min / (static_cast<double>(n) * lambda_max);
}

PeelReport peel(const ColoredFamily& g, const VertexSet& s, double c_param) {
  if (c_param <= 0.0) throw usage_error("peel requires C > 0");
  const std::int32_t t = g.color_count();
  double lambda_max = 0.0;
  for (std::int32_t c = 0; c < t; ++c) {
    const auto& cert = g.certificate(c);
    if (!cert) throw usage_error("peel needs a spectral certificate for every color");
    lambda_max = std::max(lambda_max, cert->lambda);
  }

  PeelReport report;
  report.input = s;
  report.c_param = c_param;
  report.lambda_used = lambda_max;
  report.tau = c_param * lambda_max / 4.0;

  ThresholdPeelResult core = peel_to_threshold(g, s, report.tau);
  report.survivors = std::move(core.survivors);
  report.removals = std::move(core.removals);
  report.min_surviving_degree = core.min_surviving_degree;

  report.removed_bound = 8.0 * t / (c_param * c_param) * static_cast<double>(s.size());
  report.implied_c = implied_c(g, s.size());
  report.theorem_applies =
      c_param >= 4.0 * std::sqrt(static_cast<double>(t)) && report.implied_c >= c_param - 1e-12;
  report.removed_bound_ok =
      static_cast<double>(report.removals.size()) <= report.removed_bound + 1e-9;
  return report;
}

StarReport star_report(const ColoredFamily& g, const VertexSet& w, std::uint64_t s_size) {
  StarReport report;
  report.has_threshold = g.has_distance_backing();
  const double threshold =
      report.has_threshold
          ? static_cast<double>(s_size) / (6.0 * g.backing().geometry->field().q())
          : 0.0;
  if (w.empty()) return report;
  const Bitset in_w = w.bitset(g.vertex_count());
  for (std::int32_t c = 0; c < g.color_count(); ++c) {
    StarColorReport entry;
    entry.color = c;
    bool first = true;
    for (std::int32_t v : w.indices()) {
      std::int32_t d = 0;
      for (std::int32_t nb : g.neighbors(v, c))
        if (in_w.test(nb)) ++d;
      if (first || d < entry.min_degree) entry.min_degree = d;
      first = false;
    }
    entry.threshold = threshold;
    entry.pass = !report.has_threshold || entry.min_degree >= threshold;
    report.per_color.push_back(entry);
  }
  return report;
}

ConjectureProbeReport probe_min_degree_conjecture(const ColoredFamily& g, const VertexSet& s,
                                                  double c_param) {
  if (!g.has_distance_backing())
    throw usage_error("conjecture probe requires a distance-backed family");
  const auto& geom = *g.backing().geometry;
  if (static_cast<std::uint64_t>(g.color_count()) != geom.field().q() - 1)
    throw usage_error("conjecture probe requires all nonzero distances as colors");
  if (c_param <= 0.0) throw usage_error("conjecture probe requires C > 0");

  ConjectureProbeReport report;
  report.c_param = c_param;
  report.s_size = s.size();
  report.tau = static_cast<double>(s.size()) / (10.0 * geom.field().q());
  ThresholdPeelResult core = peel_to_threshold(g, s, report.tau);
  report.removed = core.removals.size();
  report.conjectured_removals = 100.0 / (c_param * c_param) * static_cast<double>(s.size());
  report.ratio = report.conjectured_removals > 0.0
                     ? static_cast<double>(report.removed) / report.conjectured_removals
                     : 0.0;
  report.min_surviving_degree = core.min_surviving_degree;
  return report;
}

std::vector<std::vector<std::int32_t>> random_regular_graph(std::int32_t n, std::int32_t degree,
                                                            Rng& rng) {
  if (degree >= n || degree < 1) throw usage_error("regular degree must be in [1, n)");
  if (n * degree % 2 != 0) throw usage_error("n * degree must be even");

  // Circulant start: offsets 1..degree/2 (and n/2 when degree is odd).
  std::vector<std::set<std::int32_t>> nb(n);
  auto add_edge = [&](std::int32_t a, std::int32_t b) {
    nb[a].insert(b);
    nb[b].insert(a);
  };
  for (std::int32_t off = 1; off <= degree / 2; ++off)
    for (std::int32_t v = 0; v < n; ++v) add_edge(v, (v + off) % n);
  if (degree % 2 == 1)
    for (std::int32_t v = 0; v < n / 2; ++v) add_edge(v, v + n / 2);

  // Degree-preserving double-edge swaps.
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (std::int32_t v = 0; v < n; ++v)
    for (std::int32_t w : nb[v])
      if (v < w) edges.emplace_back(v, w);
  const std::size_t attempts = 40 * edges.size();
  for (std::size_t it = 0; it < attempts; ++it) {
    const std::size_t i = rng.below(edges.size());
    const std::size_t j = rng.below(edges.size());
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, d] = edges[j];
    if (rng.below(2) == 1) std::swap(c, d);
    // rewire ab, cd -> ac, bd
    if (a == c || a == d || b == c || b == d) continue;
    if (nb[a].count(c) || nb[b].count(d)) continue;
    nb[a].erase(b);
    nb[b].erase(a);
    nb[c].erase(d);
    nb[d].erase(c);
    add_edge(a, c);
    add_edge(b, d);
    edges[i] = {std::min(a, c), std::max(a, c)};
    edges[j] = {std::min(b, d), std::max(b, d)};
  }

  std::vector<std::vector<std::int32_t>> adj(n);
  for (std::int32_t v = 0; v < n; ++v) adj[v].assign(nb[v].begin(), nb[v].end());
  return adj;
}

}  // namespace fqdist
