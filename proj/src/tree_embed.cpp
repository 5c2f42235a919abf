#include "fqdist/tree_embed.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "fqdist/error.hpp"

namespace fqdist {

ColoredTree ColoredTree::from_edges(std::int32_t n, std::vector<std::array<std::int32_t, 3>> edges,
                                    std::int32_t t) {
  if (n < 1) throw usage_error("tree needs at least one vertex");
  if (t < 1) throw usage_error("tree needs at least one color");
  if (static_cast<std::int32_t>(edges.size()) != n - 1)
    throw usage_error("a tree on n vertices has exactly n-1 edges");

  ColoredTree tree;
  tree.n_ = n;
  tree.t_ = t;
  tree.adj_.resize(n);
  tree.degree_.assign(n, std::vector<std::int32_t>(t, 0));
  tree.max_degree_.assign(t, 0);

  std::vector<std::int32_t> dsu(n);
  std::iota(dsu.begin(), dsu.end(), 0);
  auto find = [&](std::int32_t x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };

  for (const auto& [u, v, c] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw usage_error("invalid tree edge");
    if (c < 0 || c >= t) throw usage_error("tree edge color outside [0, t)");
    const std::int32_t ru = find(u), rv = find(v);
    if (ru == rv) throw usage_error("tree edges contain a cycle or duplicate");
    dsu[ru] = rv;
    tree.adj_[u].push_back({v, c});
    tree.adj_[v].push_back({u, c});
    ++tree.degree_[u][c];
    ++tree.degree_[v][c];
    tree.max_degree_[c] = std::max({tree.max_degree_[c], tree.degree_[u][c], tree.degree_[v][c]});
  }
  for (auto& a : tree.adj_) std::sort(a.begin(), a.end());
  tree.edges_ = std::move(edges);
  return tree;
}

std::span<const Item> ColoredTree::adjacency(std::int32_t v) const {
  if (v < 0 || v >= n_) throw usage_error("tree vertex out of range");
  return adj_[v];
}

std::int32_t ColoredTree::degree(std::int32_t v, std::int32_t color) const {
  if (v < 0 || v >= n_ || color < 0 || color >= t_) throw usage_error("tree degree query out of range");
  return degree_[v][color];
}

std::int32_t ColoredTree::max_degree(std::int32_t color) const {
  if (color < 0 || color >= t_) throw usage_error("tree color out of range");
  return max_degree_[color];
}

PartialEmbedding::PartialEmbedding(const ColoredTree& tree, std::int32_t host_n)
    : tree_to_host(tree.vertex_count(), -1),
      host_to_tree(host_n, -1),
      image(host_n),
      embedded_degree(tree.vertex_count(),
                      std::vector<std::int32_t>(tree.color_count(), 0)) {}

void PartialEmbedding::assign(const ColoredTree& tree, std::int32_t tree_v, std::int32_t host_v) {
  if (tree_to_host[tree_v] != -1) throw usage_error("tree vertex already embedded");
  if (host_to_tree[host_v] != -1) throw usage_error("host vertex already used");
  tree_to_host[tree_v] = host_v;
  host_to_tree[host_v] = tree_v;
  image.set(host_v);
  ++embedded_count;
  for (const auto& [nb, c] : tree.adjacency(tree_v)) {
    if (tree_to_host[nb] == -1) continue;
    ++embedded_degree[tree_v][c];
    ++embedded_degree[nb][c];
  }
}

void PartialEmbedding::unassign(const ColoredTree& tree, std::int32_t tree_v) {
  const std::int32_t host_v = tree_to_host[tree_v];
  if (host_v == -1) throw usage_error("tree vertex is not embedded");
  for (const auto& [nb, c] : tree.adjacency(tree_v)) {
    if (tree_to_host[nb] == -1) continue;
    --embedded_degree[tree_v][c];
    --embedded_degree[nb][c];
  }
  tree_to_host[tree_v] = -1;
  host_to_tree[host_v] = -1;
  image.reset(host_v);
  --embedded_count;
}

namespace {

std::vector<Item> normalized_items(std::span<const Item> items) {
  std::vector<Item> x(items.begin(), items.end());
  std::sort(x.begin(), x.end());
  if (std::adjacent_find(x.begin(), x.end()) != x.end())
    throw usage_error("item set contains duplicates");
  return x;
}

std::int64_t item_deficit(const PartialEmbedding& emb, std::int32_t delta, std::int32_t v,
                          std::int32_t r) {
  std::int32_t deg = 0;
  if (emb.image.test(v)) deg = emb.embedded_degree[emb.host_to_tree[v]][r];
  return static_cast<std::int64_t>(delta) - deg;
}

// Neighborhood bitsets and deficit terms for every (vertex, color) item,
// shared by the exhaustive sweeps.
struct ItemContext {
  ItemContext(const ColoredFamily& g, const PartialEmbedding* emb, std::int32_t delta)
      : n(g.vertex_count()), t(g.color_count()) {
    gamma.reserve(static_cast<std::size_t>(n) * t);
    deficit.reserve(static_cast<std::size_t>(n) * t);
    for (std::int32_t v = 0; v < n; ++v) {
      for (std::int32_t c = 0; c < t; ++c) {
        Bitset b(n);
        for (std::int32_t nb : g.neighbors(v, c)) b.set(nb);
        gamma.push_back(std::move(b));
        deficit.push_back(emb ? item_deficit(*emb, delta, v, c)
                              : static_cast<std::int64_t>(delta));
      }
    }
  }

  std::int32_t item_id(std::int32_t v, std::int32_t c) const { return v * t + c; }
  Item item_of(std::int32_t id) const { return {id / t, id % t}; }

  std::int32_t n, t;
  std::vector<Bitset> gamma;
  std::vector<std::int64_t> deficit;
};

std::uint64_t saturating_combinations(std::uint64_t n, std::uint32_t s) {
  std::uint64_t total = 0;
  for (std::uint32_t j = 1; j <= s; ++j) {
    long double c = 1.0L;
    for (std::uint32_t i = 0; i < j; ++i) c = c * static_cast<long double>(n - i) / (i + 1);
    if (c > 1e18L) return std::numeric_limits<std::uint64_t>::max();
    total += static_cast<std::uint64_t>(c);
    if (j > n) break;
  }
  return total;
}

// Enumerates every subset of {0..count-1} of size 1..s in (size, lex) order.
// fn returns false to stop early. Returns the number of subsets visited.
template <typename Fn>
std::uint64_t for_each_subset(std::int32_t count, std::int32_t s, Fn&& fn) {
  std::uint64_t visited = 0;
  std::vector<std::int32_t> ids;
  for (std::int32_t size = 1; size <= s && size <= count; ++size) {
    ids.resize(size);
    for (std::int32_t i = 0; i < size; ++i) ids[i] = i;
    while (true) {
      ++visited;
      if (!fn(std::span<const std::int32_t>(ids))) return visited;
      std::int32_t pos = size - 1;
      while (pos >= 0 && ids[pos] == count - size + pos) --pos;
      if (pos < 0) break;
      ++ids[pos];
      for (std::int32_t i = pos + 1; i < size; ++i) ids[i] = ids[i - 1] + 1;
    }
  }
  return visited;
}

std::int64_t subset_residual(const ItemContext& ctx, const Bitset& image, Bitset& scratch,
                             std::span<const std::int32_t> ids) {
  scratch = ctx.gamma[ids[0]];
  std::int64_t deficit_sum = ctx.deficit[ids[0]];
  for (std::size_t i = 1; i < ids.size(); ++i) {
    scratch |= ctx.gamma[ids[i]];
    deficit_sum += ctx.deficit[ids[i]];
  }
  scratch -= image;
  return static_cast<std::int64_t>(scratch.count()) - deficit_sum;
}

std::vector<Item> ids_to_items(const ItemContext& ctx, std::span<const std::int32_t> ids) {
  std::vector<Item> items;
  items.reserve(ids.size());
  for (std::int32_t id : ids) items.push_back(ctx.item_of(id));
  return items;
}

}  // namespace

std::int64_t residual(const ColoredFamily& g, const PartialEmbedding& emb, std::int32_t delta,
                      std::span<const Item> items) {
  const std::vector<Item> x = normalized_items(items);
  Bitset gamma(g.vertex_count());
  std::int64_t deficit_sum = 0;
  for (const auto& [v, r] : x) {
    for (std::int32_t nb : g.neighbors(v, r)) gamma.set(nb);
    deficit_sum += item_deficit(emb, delta, v, r);
  }
  gamma -= emb.image;
  return static_cast<std::int64_t>(gamma.count()) - deficit_sum;
}

GoodnessVerdict is_s_good(const ColoredFamily& g, const PartialEmbedding& emb, std::int32_t delta,
                          std::int32_t s, const Caps& caps) {
  GoodnessVerdict verdict;
  if (s <= 0) return verdict;  // vacuously good
  const std::int64_t item_count = static_cast<std::int64_t>(g.vertex_count()) * g.color_count();
  if (saturating_combinations(item_count, s) > caps.max_subset_enum) {
    verdict.kind = GoodnessKind::kCapped;
    return verdict;
  }
  const ItemContext ctx(g, &emb, delta);
  Bitset scratch(g.vertex_count());
  verdict.subsets_checked =
      for_each_subset(static_cast<std::int32_t>(item_count), s, [&](std::span<const std::int32_t> ids) {
        if (subset_residual(ctx, emb.image, scratch, ids) < 0) {
          verdict.kind = GoodnessKind::kViolated;
          verdict.witness = ids_to_items(ctx, ids);
          return false;
        }
        return true;
      });
  return verdict;
}

HypothesesReport check_hypotheses(const ColoredFamily& g, std::int32_t delta, std::int32_t m,
                                  std::int64_t k, const Caps& caps) {
  if (m < 0) throw usage_error("m must be nonnegative");
  HypothesesReport report;
  report.k_max = std::numeric_limits<std::int64_t>::max();
  report.small_sets.vacuous = m < 1;
  report.large_sets.vacuous = m < 1;  // range (m, 2m] is empty iff m == 0
  report.small_sets.pass = true;
  report.large_sets.pass = true;
  report.small_sets.min_slack = std::numeric_limits<std::int64_t>::max();
  report.large_sets.min_slack = std::numeric_limits<std::int64_t>::max();
  if (m < 1) return report;

  const std::int64_t item_count = static_cast<std::int64_t>(g.vertex_count()) * g.color_count();
  if (saturating_combinations(item_count, 2 * m) > caps.max_subset_enum) {
    report.capped = true;
    return report;
  }

  const ItemContext ctx(g, nullptr, delta);
  const Bitset empty_image(g.vertex_count());
  Bitset scratch(g.vertex_count());

  report.subsets_checked = for_each_subset(
      static_cast<std::int32_t>(item_count), 2 * m, [&](std::span<const std::int32_t> ids) {
        scratch = ctx.gamma[ids[0]];
        for (std::size_t i = 1; i < ids.size(); ++i) scratch |= ctx.gamma[ids[i]];
        const std::int64_t gamma_size = static_cast<std::int64_t>(scratch.count());
        const std::int64_t size = static_cast<std::int64_t>(ids.size());
        const std::int64_t margin = gamma_size - static_cast<std::int64_t>(delta) * size;
        ClauseReport& clause = size <= m ? report.small_sets : report.large_sets;
        const std::int64_t required = size <= m ? 1 : k;
        const std::int64_t slack = margin - required;
        if (slack < clause.min_slack) {
          clause.min_slack = slack;
          clause.witness = ids_to_items(ctx, ids);
        }
        if (slack < 0) clause.pass = false;
        if (size > m) report.k_max = std::min(report.k_max, margin);
        return true;
      });
  return report;
}

namespace {

// Item sets with zero residual under the current (verified good) embedding.
// Extending by host w stays good iff no zero set X has w in Gamma(X) while
// missing both (w, color) and (anchor_host, color):
//   R(X, phi_w) = R(X, phi) - [w in Gamma(X)] + [(w,c) in X] + [(anchor,c) in X].
struct ZeroSets {
  bool valid = false;
  std::vector<std::vector<std::int32_t>> sets;  // item ids
};

ZeroSets collect_zero_sets(const ItemContext& ctx, const PartialEmbedding& emb, std::int32_t s,
                           const Caps& caps) {
  ZeroSets z;
  const std::int64_t item_count = static_cast<std::int64_t>(ctx.n) * ctx.t;
  if (saturating_combinations(item_count, s) > caps.max_subset_enum) return z;
  Bitset scratch(ctx.n);
  bool good = true;
  std::uint64_t stored = 0;
  for_each_subset(static_cast<std::int32_t>(item_count), s, [&](std::span<const std::int32_t> ids) {
    const std::int64_t r = subset_residual(ctx, emb.image, scratch, ids);
    if (r < 0) {
      good = false;
      return false;
    }
    if (r == 0) {
      z.sets.emplace_back(ids.begin(), ids.end());
      stored += ids.size();
      if (stored > 8'000'000) {
        good = false;  // too many to filter cheaply; fall back
        return false;
      }
    }
    return true;
  });
  if (!good) z.sets.clear();
  z.valid = good;
  return z;
}

bool zero_sets_allow(const ItemContext& ctx, const ZeroSets& z, std::int32_t w,
                     std::int32_t anchor_host, std::int32_t color) {
  const std::int32_t w_item = ctx.item_id(w, color);
  const std::int32_t anchor_item = ctx.item_id(anchor_host, color);
  for (const auto& ids : z.sets) {
    bool w_in_gamma = false, w_in_x = false, anchor_in_x = false;
    for (std::int32_t id : ids) {
      if (ctx.gamma[id].test(w)) w_in_gamma = true;
      if (id == w_item) w_in_x = true;
      if (id == anchor_item) anchor_in_x = true;
    }
    if (w_in_gamma && !w_in_x && !anchor_in_x) return false;
  }
  return true;
}

std::vector<std::int32_t> open_neighbors(const ColoredFamily& g, const PartialEmbedding& emb,
                                         std::int32_t host, std::int32_t color) {
  std::vector<std::int32_t> out;
  for (std::int32_t w : g.neighbors(host, color))
    if (!emb.image.test(w)) out.push_back(w);
  return out;
}

std::int64_t greedy_score(const ColoredFamily& g, const PartialEmbedding& emb, std::int32_t w) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::int32_t c = 0; c < g.color_count(); ++c) {
    std::int64_t open = 0;
    for (std::int32_t nb : g.neighbors(w, c))
      if (!emb.image.test(nb)) ++open;
    best = std::min(best, open);
  }
  return best;
}

}  // namespace

ExtendResult extend_leaf(const ColoredFamily& g, PartialEmbedding& emb, const ColoredTree& tree,
                         std::int32_t leaf_v, std::int32_t anchor_u, std::int32_t color,
                         EmbedStrategy strategy, const GoodnessParams& params, const Caps& caps) {
  if (strategy == EmbedStrategy::kBacktrack)
    throw usage_error("extend_leaf does not implement the backtrack strategy");
  if (emb.tree_to_host[leaf_v] != -1) throw usage_error("leaf is already embedded");
  const std::int32_t anchor_host = emb.tree_to_host[anchor_u];
  if (anchor_host == -1) throw usage_error("anchor vertex is not embedded");
  bool edge_found = false;
  for (const auto& [nb, c] : tree.adjacency(anchor_u))
    if (nb == leaf_v && c == color) edge_found = true;
  if (!edge_found) throw usage_error("tree has no such leaf edge");
  if (emb.embedded_degree[anchor_u][color] + 1 > params.delta)
    throw usage_error("extension would exceed the color degree cap");

  ExtendResult result;
  const std::vector<std::int32_t> candidates = open_neighbors(g, emb, anchor_host, color);
  result.candidates = static_cast<std::int32_t>(candidates.size());
  if (candidates.empty()) {
    result.reason = "no unused neighbor of the anchor in the edge color";
    return result;
  }

  if (strategy == EmbedStrategy::kGreedy) {
    std::int32_t best = -1;
    std::int64_t best_score = -1;
    for (std::int32_t w : candidates) {
      const std::int64_t score = greedy_score(g, emb, w);
      if (score > best_score) {
        best_score = score;
        best = w;
      }
    }
    emb.assign(tree, leaf_v, best);
    result.ok = true;
    result.chosen_host = best;
    return result;
  }

  // exact-good
  const ItemContext ctx(g, &emb, params.delta);
  const ZeroSets zero_sets = collect_zero_sets(ctx, emb, params.s_cap, caps);
  if (zero_sets.valid) {
    for (std::int32_t w : candidates) {
      if (zero_sets_allow(ctx, zero_sets, w, anchor_host, color)) {
        emb.assign(tree, leaf_v, w);
        result.ok = true;
        result.chosen_host = w;
        return result;
      }
    }
    result.reason = "no candidate keeps the embedding s_cap-good";
    return result;
  }

  // Current embedding is not (verifiably) good; check each candidate directly.
  for (std::int32_t w : candidates) {
    emb.assign(tree, leaf_v, w);
    const GoodnessVerdict verdict = is_s_good(g, emb, params.delta, params.s_cap, caps);
    if (verdict.kind == GoodnessKind::kCapped) {
      emb.unassign(tree, leaf_v);
      throw cap_error("goodness enumeration exceeds max_subset_enum; exact-good cannot run");
    }
    if (verdict.kind == GoodnessKind::kGood) {
      result.ok = true;
      result.chosen_host = w;
      return result;
    }
    emb.unassign(tree, leaf_v);
  }
  result.reason = "no candidate keeps the embedding s_cap-good";
  return result;
}

namespace {

struct BfsOrder {
  std::vector<std::int32_t> order;
  std::vector<std::int32_t> parent;  // -1 for root
  std::vector<std::int32_t> parent_color;
};

BfsOrder bfs_order(const ColoredTree& tree) {
  BfsOrder out;
  const std::int32_t n = tree.vertex_count();
  out.parent.assign(n, -1);
  out.parent_color.assign(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<std::int32_t> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    const std::int32_t v = queue.front();
    queue.pop();
    out.order.push_back(v);
    for (const auto& [nb, c] : tree.adjacency(v)) {
      if (seen[nb]) continue;
      seen[nb] = true;
      out.parent[nb] = v;
      out.parent_color[nb] = c;
      queue.push(nb);
    }
  }
  return out;
}

void validate_tree_embedding(const ColoredFamily& g, const ColoredTree& tree,
                             const std::vector<std::int32_t>& map) {
  Bitset used(g.vertex_count());
  for (std::int32_t host : map) {
    if (host < 0 || host >= g.vertex_count()) throw internal_error("embedding maps outside host");
    if (used.test(host)) throw internal_error("tree embedding is not injective");
    used.set(host);
  }
  for (const auto& [u, v, c] : tree.edges())
    if (!g.adjacent(map[u], map[v], c))
      throw internal_error("tree embedding misses a color relation");
}

TreeEmbedResult embed_tree_backtrack(const ColoredFamily& g, const ColoredTree& tree,
                                     const Caps& caps) {
  const BfsOrder bfs = bfs_order(tree);
  TreeEmbedResult result;
  PartialEmbedding emb(tree, g.vertex_count());
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == bfs.order.size()) return true;
    const std::int32_t tv = bfs.order[pos];
    std::vector<std::int32_t> candidates;
    if (pos == 0) {
      candidates.resize(g.vertex_count());
      std::iota(candidates.begin(), candidates.end(), 0);
    } else {
      candidates = open_neighbors(g, emb, emb.tree_to_host[bfs.parent[tv]], bfs.parent_color[tv]);
    }
    for (std::int32_t w : candidates) {
      if (++nodes > caps.max_backtrack_nodes)
        throw cap_error("backtracking exceeds max_backtrack_nodes = " +
                        std::to_string(caps.max_backtrack_nodes));
      emb.assign(tree, tv, w);
      if (self(self, pos + 1)) return true;
      emb.unassign(tree, tv);
    }
    return false;
  };

  result.backtrack_nodes = 0;
  if (rec(rec, 0)) {
    result.ok = true;
    result.embedding = emb.tree_to_host;
  } else {
    result.reason = "exhaustive search found no embedding";
  }
  result.backtrack_nodes = nodes;
  return result;
}

}  // namespace

TreeEmbedResult embed_tree(const ColoredFamily& g, const ColoredTree& tree,
                           const GoodnessParams& params, EmbedStrategy strategy, const Caps& caps) {
  if (tree.color_count() > g.color_count())
    throw usage_error("tree uses more colors than the host family");
  for (std::int32_t c = 0; c < tree.color_count(); ++c)
    if (tree.max_degree(c) > params.delta)
      throw usage_error("tree color degree exceeds delta");
  if (tree.vertex_count() > params.tree_bound_k)
    throw usage_error("tree is larger than the size bound k");
  if (strategy == EmbedStrategy::kExactGood &&
      (params.s_cap < 1 || params.s_cap > 2 * params.m))
    throw usage_error("s_cap must lie in [1, 2m]");

  if (strategy == EmbedStrategy::kBacktrack) {
    TreeEmbedResult result = embed_tree_backtrack(g, tree, caps);
    if (result.ok) validate_tree_embedding(g, tree, result.embedding);
    return result;
  }

  const BfsOrder bfs = bfs_order(tree);
  TreeEmbedResult result;
  PartialEmbedding emb(tree, g.vertex_count());

  // Root placement.
  if (strategy == EmbedStrategy::kExactGood) {
    bool placed = false;
    for (std::int32_t v = 0; v < g.vertex_count() && !placed; ++v) {
      emb.assign(tree, 0, v);
      const GoodnessVerdict verdict = is_s_good(g, emb, params.delta, params.s_cap, caps);
      if (verdict.kind == GoodnessKind::kCapped)
        throw cap_error("goodness enumeration exceeds max_subset_enum; exact-good cannot run");
      if (verdict.kind == GoodnessKind::kGood) {
        placed = true;
      } else {
        emb.unassign(tree, 0);
      }
    }
    if (!placed) {
      result.failed_tree_vertex = 0;
      result.reason = "no s_cap-good root placement";
      return result;
    }
  } else {
    std::int32_t best = 0;
    std::int64_t best_score = -1;
    for (std::int32_t v = 0; v < g.vertex_count(); ++v) {
      const std::int64_t score = greedy_score(g, emb, v);
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    emb.assign(tree, 0, best);
  }

  for (std::size_t pos = 1; pos < bfs.order.size(); ++pos) {
    const std::int32_t tv = bfs.order[pos];
    ExtendResult step = extend_leaf(g, emb, tree, tv, bfs.parent[tv], bfs.parent_color[tv],
                                    strategy, params, caps);
    if (!step.ok) {
      result.failed_tree_vertex = tv;
      result.reason = step.reason;
      return result;
    }
  }

  result.ok = true;
  result.embedding = emb.tree_to_host;
  validate_tree_embedding(g, tree, result.embedding);
  return result;
}

namespace {

// ---- free tree generation --------------------------------------------------

using EdgeList = std::vector<std::pair<std::int32_t, std::int32_t>>;

EdgeList prufer_decode(const std::vector<std::int32_t>& seq, std::int32_t n) {
  std::vector<std::int32_t> degree(n, 1);
  for (std::int32_t s : seq) ++degree[s];
  EdgeList edges;
  std::vector<bool> used(n, false);
  for (std::int32_t s : seq) {
    for (std::int32_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1 && !used[leaf]) {
        edges.emplace_back(leaf, s);
        used[leaf] = true;
        --degree[s];
        break;
      }
    }
  }
  std::vector<std::int32_t> rest;
  for (std::int32_t v = 0; v < n; ++v)
    if (!used[v] && degree[v] >= 1) rest.push_back(v);
  edges.emplace_back(rest[0], rest[1]);
  return edges;
}

std::vector<std::vector<std::int32_t>> edges_to_adj(const EdgeList& edges, std::int32_t n) {
  std::vector<std::vector<std::int32_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::string ahu_string(std::int32_t v, std::int32_t parent,
                       const std::vector<std::vector<std::int32_t>>& adj) {
  std::vector<std::string> children;
  for (std::int32_t nb : adj[v])
    if (nb != parent) children.push_back(ahu_string(nb, v, adj));
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto& c : children) out += c;
  out += ")";
  return out;
}

std::vector<std::int32_t> tree_centers(const std::vector<std::vector<std::int32_t>>& adj) {
  const std::int32_t n = static_cast<std::int32_t>(adj.size());
  if (n == 1) return {0};
  std::vector<std::int32_t> degree(n);
  std::vector<std::int32_t> layer;
  for (std::int32_t v = 0; v < n; ++v) {
    degree[v] = static_cast<std::int32_t>(adj[v].size());
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::int32_t remaining = n;
  while (remaining > 2) {
    std::vector<std::int32_t> next;
    remaining -= static_cast<std::int32_t>(layer.size());
    for (std::int32_t leaf : layer)
      for (std::int32_t nb : adj[leaf])
        if (--degree[nb] == 1) next.push_back(nb);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

// Canonical representative: root at the center with the smaller AHU string,
// relabel in preorder visiting children by ascending subtree string.
std::vector<std::array<std::int32_t, 3>> canonical_edges(
    const std::vector<std::vector<std::int32_t>>& adj, std::int32_t root) {
  std::vector<std::array<std::int32_t, 3>> out;
  std::vector<std::int32_t> label(adj.size(), -1);
  std::int32_t next_label = 0;

  auto rec = [&](auto&& self, std::int32_t v, std::int32_t parent) -> void {
    label[v] = next_label++;
    std::vector<std::pair<std::string, std::int32_t>> children;
    for (std::int32_t nb : adj[v])
      if (nb != parent) children.emplace_back(ahu_string(nb, v, adj), nb);
    std::sort(children.begin(), children.end());
    for (const auto& [unused, child] : children) {
      out.push_back({label[v], next_label, 0});
      self(self, child, v);
    }
  };
  rec(rec, root, -1);
  return out;
}

void colorings_rec(std::int32_t edge_count, std::int32_t t, std::vector<std::int32_t>& current,
                   std::int32_t max_used, std::vector<std::vector<std::int32_t>>& out) {
  if (static_cast<std::int32_t>(current.size()) == edge_count) {
    out.push_back(current);
    return;
  }
  const std::int32_t limit = std::min(max_used + 1, t - 1);
  for (std::int32_t c = 0; c <= limit; ++c) {
    current.push_back(c);
    colorings_rec(edge_count, t, current, std::max(max_used, c), out);
    current.pop_back();
  }
}

}  // namespace

std::vector<ColoredTree> enumerate_colored_trees(std::int32_t n_max, std::int32_t t,
                                                 const Caps& caps) {
  if (n_max < 1) throw usage_error("n_max must be >= 1");
  if (static_cast<std::uint32_t>(n_max) > caps.max_tree_enum_vertices)
    throw cap_error("n_max exceeds max_tree_enum_vertices = " +
                    std::to_string(caps.max_tree_enum_vertices));
  if (t < 1) throw usage_error("t must be >= 1");

  static constexpr std::int32_t kFreeTreeCounts[8] = {1, 1, 1, 2, 3, 6, 11, 23};

  std::vector<ColoredTree> result;
  for (std::int32_t n = 1; n <= n_max; ++n) {
    std::map<std::string, std::vector<std::array<std::int32_t, 3>>> classes;
    if (n == 1) {
      classes.emplace("()", std::vector<std::array<std::int32_t, 3>>{});
    } else if (n == 2) {
      classes.emplace("(())", std::vector<std::array<std::int32_t, 3>>{{0, 1, 0}});
    } else {
      std::vector<std::int32_t> seq(n - 2, 0);
      while (true) {
        const EdgeList edges = prufer_decode(seq, n);
        const auto adj = edges_to_adj(edges, n);
        const auto centers = tree_centers(adj);
        std::string best_string = ahu_string(centers[0], -1, adj);
        std::int32_t best_root = centers[0];
        if (centers.size() == 2) {
          const std::string other = ahu_string(centers[1], -1, adj);
          if (other < best_string) {
            best_string = other;
            best_root = centers[1];
          }
        }
        classes.emplace(best_string, canonical_edges(adj, best_root));

        std::int32_t pos = n - 3;
        while (pos >= 0 && seq[pos] == n - 1) --pos;
        if (pos < 0) break;
        ++seq[pos];
        for (std::int32_t i = pos + 1; i < n - 2; ++i) seq[i] = 0;
      }
    }
    if (static_cast<std::int32_t>(classes.size()) != kFreeTreeCounts[n - 1])
      throw internal_error("free tree count mismatch at n = " + std::to_string(n));

    for (const auto& [unused, edges] : classes) {
      std::vector<std::vector<std::int32_t>> colorings;
      if (edges.empty()) {
        colorings.push_back({});
      } else {
        std::vector<std::int32_t> current;
        colorings_rec(static_cast<std::int32_t>(edges.size()), t, current, -1, colorings);
      }
      for (const auto& coloring : colorings) {
        auto colored = edges;
        for (std::size_t i = 0; i < coloring.size(); ++i) colored[i][2] = coloring[i];
        result.push_back(ColoredTree::from_edges(n, std::move(colored), t));
      }
    }
  }
  return result;
}

}  // namespace fqdist
