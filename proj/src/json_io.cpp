#include "fqdist/json_io.hpp"

#include <cstdio>
#include <fstream>

#include "fqdist/error.hpp"

namespace fqdist {

Json element_to_json(const FieldSpec& f, elem_t a) {
  if (!f.is_valid(a)) throw usage_error("element code out of range");
  if (f.ext_degree() == 1) return a;
  return Json(f.coeffs(a));
}

elem_t element_from_json(const FieldSpec& f, const Json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    const std::int64_t v = j.get<std::int64_t>();
    if (v < 0 || v >= f.q()) throw usage_error("element encoding out of range");
    if (f.ext_degree() > 1 && v >= f.p())
      throw usage_error("bare-integer element encoding must lie in the prime subfield");
    return static_cast<elem_t>(v);
  }
  if (j.is_array()) {
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : j) {
      const std::int64_t v = c.get<std::int64_t>();
      if (v < 0 || v >= f.p()) throw usage_error("element coefficient out of range");
      coeffs.push_back(static_cast<std::uint32_t>(v));
    }
    return f.from_coeffs(coeffs);
  }
  throw usage_error("element encoding must be an integer or a coefficient list");
}

Json point_to_json(const FieldSpec& f, const Point& x) {
  Json out = Json::array();
  for (elem_t c : x) out.push_back(element_to_json(f, c));
  return out;
}

Point point_from_json(const FieldSpec& f, const Json& j) {
  if (!j.is_array()) throw usage_error("point encoding must be a list");
  Point x;
  for (const auto& c : j) x.push_back(element_from_json(f, c));
  return x;
}

namespace {

void check_field_header(const DistanceGraphFamily& geometry, const Json& j) {
  if (j.at("p").get<std::uint32_t>() != geometry.field().p() ||
      j.at("ext_degree").get<std::uint32_t>() != geometry.field().ext_degree() ||
      j.at("d").get<std::uint32_t>() != geometry.dimension())
    throw usage_error("file field parameters do not match the configured geometry");
}

Json field_header(const DistanceGraphFamily& geometry) {
  Json j;
  j["p"] = geometry.field().p();
  j["ext_degree"] = geometry.field().ext_degree();
  j["q"] = geometry.field().q();
  j["d"] = geometry.dimension();
  return j;
}

}  // namespace

Json point_set_to_json(const DistanceGraphFamily& geometry,
                       const std::vector<std::uint32_t>& points) {
  Json j = field_header(geometry);
  Json list = Json::array();
  for (std::uint32_t pt : points) list.push_back(point_to_json(geometry.field(), geometry.decode(pt)));
  j["points"] = std::move(list);
  return j;
}

std::vector<std::uint32_t> point_set_from_json(const DistanceGraphFamily& geometry, const Json& j) {
  check_field_header(geometry, j);
  std::vector<std::uint32_t> out;
  for (const auto& p : j.at("points"))
    out.push_back(geometry.encode(point_from_json(geometry.field(), p)));
  return out;
}

Json sphere_set_to_json(const DistanceGraphFamily& geometry, const SphereSet& spheres) {
  Json j = field_header(geometry);
  Json list = Json::array();
  for (const SphereRef& s : spheres) {
    Json entry;
    entry["center"] = point_to_json(geometry.field(), geometry.decode(s.center));
    entry["radius"] = element_to_json(geometry.field(), s.radius);
    list.push_back(std::move(entry));
  }
  j["spheres"] = std::move(list);
  return j;
}

SphereSet sphere_set_from_json(const DistanceGraphFamily& geometry, const Json& j) {
  check_field_header(geometry, j);
  SphereSet out;
  for (const auto& entry : j.at("spheres")) {
    SphereRef s;
    s.center = geometry.encode(point_from_json(geometry.field(), entry.at("center")));
    s.radius = element_from_json(geometry.field(), entry.at("radius"));
    out.push_back(s);
  }
  validate_sphere_set(out);
  return out;
}

Json tree_to_json(const ColoredTree& tree) {
  Json j;
  j["vertices"] = tree.vertex_count();
  Json edges = Json::array();
  for (const auto& [u, v, c] : tree.edges()) edges.push_back(Json::array({u, v, c}));
  j["edges"] = std::move(edges);
  return j;
}

ColoredTree tree_from_json(const Json& j, std::int32_t t) {
  const std::int32_t n = j.at("vertices").get<std::int32_t>();
  std::vector<std::array<std::int32_t, 3>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw usage_error("tree edge must be [u, v, color]");
    edges.push_back({e[0].get<std::int32_t>(), e[1].get<std::int32_t>(), e[2].get<std::int32_t>()});
  }
  return ColoredTree::from_edges(n, std::move(edges), t);
}

Json family_to_json(const ColoredFamily& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  j["colors"] = g.color_count();
  Json edges = Json::array();
  for (std::int32_t c = 0; c < g.color_count(); ++c)
    for (std::int32_t v = 0; v < g.vertex_count(); ++v)
      for (std::int32_t nb : g.neighbors(v, c))
        if (v < nb) edges.push_back(Json::array({v, nb, c}));
  j["edges"] = std::move(edges);
  return j;
}

ColoredFamily family_from_json(const Json& j) {
  const std::int32_t n = j.at("vertices").get<std::int32_t>();
  const std::int32_t t = j.at("colors").get<std::int32_t>();
  if (n < 1 || t < 1) throw usage_error("family needs vertices >= 1 and colors >= 1");
  std::vector<std::vector<std::vector<std::int32_t>>> adj(
      t, std::vector<std::vector<std::int32_t>>(n));
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw usage_error("family edge must be [u, v, color]");
    const std::int32_t u = e[0].get<std::int32_t>();
    const std::int32_t v = e[1].get<std::int32_t>();
    const std::int32_t c = e[2].get<std::int32_t>();
    if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw usage_error("invalid family edge");
    if (c < 0 || c >= t) throw usage_error("family edge color outside [0, t)");
    adj[c][u].push_back(v);
    adj[c][v].push_back(u);
  }
  for (auto& color_adj : adj)
    for (auto& nb : color_adj) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  return ColoredFamily::from_adjacency(std::move(adj));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw usage_error("cannot open file for writing: " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw usage_error("cannot move report into place: " + path);
}

}  // namespace fqdist
