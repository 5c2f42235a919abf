#include "fqdist/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "fqdist/constructions.hpp"
#include "fqdist/dfs_path.hpp"
#include "fqdist/error.hpp"
#include "fqdist/parallel.hpp"
#include "fqdist/rng.hpp"

namespace fqdist {

namespace {

Json check_to_json(const CheckEntry& c) {
  Json j;
  j["id"] = c.id;
  j["params"] = c.params;
  j["bound"] = c.bound ? Json(*c.bound) : Json(nullptr);
  j["observed"] = c.observed ? Json(*c.observed) : Json(nullptr);
  j["verdict"] = c.verdict;
  return j;
}

CheckEntry make_check(std::string id, Json params, std::optional<double> bound,
                      std::optional<double> observed, bool pass) {
  return CheckEntry{std::move(id), std::move(params), bound, observed, pass ? "pass" : "fail"};
}

CheckEntry make_vacuous(std::string id, Json params, const std::string& reason) {
  params["reason"] = reason;
  return CheckEntry{std::move(id), std::move(params), std::nullopt, std::nullopt, "vacuous"};
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["config"] = config;
  Json list = Json::array();
  for (const auto& c : checks) list.push_back(check_to_json(c));
  j["checks"] = std::move(list);
  j["payload"] = payload;
  return j;
}

int RunReport::exit_code() const {
  for (const auto& c : checks)
    if (c.verdict == "fail") return 2;
  return 0;
}

void factor_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& ext_degree) {
  if (q < 3) throw usage_error("q must be an odd prime power >= 3");
  std::uint32_t base = 0;
  for (std::uint32_t cand = 2; static_cast<std::uint64_t>(cand) * cand <= q; ++cand) {
    if (q % cand == 0) {
      base = cand;
      break;
    }
  }
  if (base == 0) base = q;  // prime
  std::uint32_t k = 0;
  std::uint32_t rest = q;
  while (rest % base == 0) {
    rest /= base;
    ++k;
  }
  if (rest != 1) throw usage_error("q = " + std::to_string(q) + " is not a prime power");
  if (base == 2) throw usage_error("q must be odd");
  p = base;
  ext_degree = k;
}

std::vector<elem_t> parse_radii(const FieldSpec& f, const std::string& text) {
  if (text == "all") {
    std::vector<elem_t> r;
    for (elem_t a = 1; a < f.q(); ++a) r.push_back(a);
    return r;
  }
  std::vector<elem_t> r;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const long v = std::stol(token);
    if (v <= 0 || static_cast<std::uint64_t>(v) >= f.q())
      throw usage_error("radius out of range: " + token);
    r.push_back(static_cast<elem_t>(v));
  }
  if (r.empty()) throw usage_error("empty distance set");
  return r;
}

namespace {

std::shared_ptr<const DistanceGraphFamily> make_geometry(std::uint32_t q, std::uint32_t d,
                                                         const std::string& radii_text,
                                                         FieldSpec* spec_out = nullptr) {
  std::uint32_t p = 0, k = 0;
  factor_prime_power(q, p, k);
  FieldSpec spec = FieldSpec::build(p, k);
  if (spec_out) *spec_out = spec;
  std::vector<elem_t> radii = parse_radii(spec, radii_text);
  return std::make_shared<DistanceGraphFamily>(std::move(spec), d, std::move(radii));
}

Json field_config(const DistanceGraphFamily& geometry) {
  Json j;
  j["q"] = geometry.field().q();
  j["p"] = geometry.field().p();
  j["ext_degree"] = geometry.field().ext_degree();
  j["d"] = geometry.dimension();
  Json radii = Json::array();
  for (elem_t r : geometry.radii()) radii.push_back(r);
  j["radii"] = std::move(radii);
  return j;
}

// --set full | random:SIZE:SEED | file:PATH
std::vector<std::uint32_t> parse_set_source(const DistanceGraphFamily& geometry,
                                            const std::string& text) {
  if (text == "full") {
    std::vector<std::uint32_t> s(geometry.vertex_count());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint32_t>(i);
    return s;
  }
  if (text.rfind("random:", 0) == 0) {
    const std::string rest = text.substr(7);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw usage_error("random set source needs random:SIZE:SEED");
    const std::uint64_t size = std::stoull(rest.substr(0, colon));
    const std::uint64_t seed = std::stoull(rest.substr(colon + 1));
    if (size == 0 || size > geometry.vertex_count())
      throw usage_error("random set size out of range");
    Rng rng(derive_seed(seed, 0x5e7));
    return rng.sample(geometry.vertex_count(), size);
  }
  if (text.rfind("file:", 0) == 0)
    return point_set_from_json(geometry, load_json_file(text.substr(5)));
  throw usage_error("unknown set source: " + text);
}

// Spectrum results keyed by (p, k, d, r), optionally persisted under the
// directory named by FQDIST_CACHE.
SpectrumResult cached_spectrum(const DistanceGraphFamily& geometry, elem_t r, unsigned workers) {
  const char* dir = std::getenv("FQDIST_CACHE");
  std::filesystem::path path;
  if (dir != nullptr) {
    path = std::filesystem::path(dir) /
           ("spectrum_p" + std::to_string(geometry.field().p()) + "_k" +
            std::to_string(geometry.field().ext_degree()) + "_d" +
            std::to_string(geometry.dimension()) + "_r" + std::to_string(r) + ".json");
    if (std::filesystem::exists(path)) {
      const Json j = load_json_file(path.string());
      SpectrumResult result;
      result.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
      result.max_imag_residue = j.at("max_imag_residue").get<double>();
      result.certificate.n = j.at("n").get<std::uint64_t>();
      result.certificate.degree = j.at("degree").get<std::uint32_t>();
      result.certificate.lambda = j.at("lambda").get<double>();
      result.certificate.claimed_bound = j.at("claimed_bound").get<double>();
      return result;
    }
  }
  SpectrumResult result = geometry.spectrum_character(r, workers);
  if (dir != nullptr) {
    std::filesystem::create_directories(path.parent_path());
    Json j;
    j["eigenvalues"] = result.eigenvalues;
    j["max_imag_residue"] = result.max_imag_residue;
    j["n"] = result.certificate.n;
    j["degree"] = result.certificate.degree;
    j["lambda"] = result.certificate.lambda;
    j["claimed_bound"] = result.certificate.claimed_bound;
    write_json_file(path.string(), j);
  }
  return result;
}

void attach_ambient_certificates(ColoredFamily& family, const DistanceGraphFamily& geometry,
                                 unsigned workers) {
  for (std::size_t c = 0; c < geometry.radii().size(); ++c)
    family.set_certificate(static_cast<std::int32_t>(c),
                           cached_spectrum(geometry, geometry.radii()[c], workers).certificate);
}

Json point_list_json(const ColoredFamily& family, const std::vector<std::int32_t>& vertices) {
  Json out = Json::array();
  if (family.has_distance_backing()) {
    const auto& geom = *family.backing().geometry;
    for (std::int32_t v : vertices)
      out.push_back(point_to_json(geom.field(), geom.decode(family.label(v))));
  } else {
    for (std::int32_t v : vertices) out.push_back(v);
  }
  return out;
}

}  // namespace

RunReport run_spectrum(const SpectrumConfig& cfg) {
  RunReport report;
  report.command = "spectrum";
  auto geometry = make_geometry(cfg.q, cfg.d, cfg.radii);
  report.config = field_config(*geometry);
  report.config["dense_check"] = cfg.dense_check;

  const Caps caps;
  const bool dense_in_cap = geometry->vertex_count() <= caps.max_dense_spectrum_n;

  bool all_lambda = true, all_offset = true, all_sandwich = true;
  double worst_lambda_margin = -std::numeric_limits<double>::infinity();
  double worst_agreement = 0.0;
  Json records = Json::array();
  std::ofstream csv;
  if (!cfg.eigen_csv.empty()) {
    csv.open(cfg.eigen_csv, std::ios::trunc);
    if (!csv) throw usage_error("cannot open CSV path: " + cfg.eigen_csv);
    csv << "q,d,r,m,eigenvalue\n";
  }

  for (elem_t r : geometry->radii()) {
    const SpectrumResult spectrum = cached_spectrum(*geometry, r, cfg.workers);
    const NdlReport ndl = geometry->verify_ndl(r, spectrum.certificate);
    all_lambda = all_lambda && ndl.lambda_ok;
    all_offset = all_offset && ndl.degree_offset_ok;
    all_sandwich = all_sandwich && ndl.sandwich_ok;
    worst_lambda_margin = std::max(worst_lambda_margin, ndl.lambda - ndl.lambda_bound);

    Json record;
    record["q"] = ndl.q;
    record["d"] = ndl.d;
    record["r"] = ndl.r;
    record["n"] = ndl.n;
    record["D"] = ndl.degree;
    record["lambda"] = ndl.lambda;
    record["bound"] = ndl.lambda_bound;
    record["pass"] = ndl.lambda_ok && ndl.degree_offset_ok && ndl.sandwich_ok;
    record["degree_offset"] = ndl.degree_offset;
    records.push_back(std::move(record));

    if (csv.is_open())
      for (std::size_t m = 0; m < spectrum.eigenvalues.size(); ++m)
        csv << cfg.q << ',' << cfg.d << ',' << r << ',' << m << ',' << spectrum.eigenvalues[m]
            << '\n';

    if (cfg.dense_check && dense_in_cap) {
      std::vector<double> char_sorted = spectrum.eigenvalues;
      std::sort(char_sorted.begin(), char_sorted.end());
      const std::vector<double> dense = geometry->spectrum_dense(r);
      for (std::size_t i = 0; i < dense.size(); ++i)
        worst_agreement = std::max(worst_agreement, std::abs(char_sorted[i] - dense[i]));
    }
  }
  report.payload["records"] = std::move(records);

  report.checks.push_back(make_check("spectrum-gap", {{"matrix", "all radii"}}, 0.0,
                                     worst_lambda_margin, all_lambda));
  report.checks.push_back(
      make_check("degree-offset", Json::object(), std::nullopt, std::nullopt, all_offset));
  report.checks.push_back(
      make_check("degree-sandwich", Json::object(), std::nullopt, std::nullopt, all_sandwich));
  if (cfg.dense_check && dense_in_cap) {
    report.checks.push_back(make_check("spectrum-oracle-agreement", Json::object(), 1e-6,
                                       worst_agreement, worst_agreement <= 1e-6));
  } else if (cfg.dense_check) {
    report.checks.push_back(make_vacuous("spectrum-oracle-agreement", Json::object(),
                                         "vertex count exceeds the dense eigensolver cap"));
  }
  return report;
}

RunReport run_mixing(const MixingConfig& cfg) {
  RunReport report;
  report.command = "mixing";
  auto geometry = make_geometry(cfg.q, cfg.d, cfg.radii);
  ColoredFamily family = ColoredFamily::from_distance(geometry, cfg.workers);
  report.config = field_config(*geometry);
  report.config["trials"] = cfg.trials;
  report.config["seed"] = cfg.seed;

  struct TrialRow {
    elem_t r;
    std::uint32_t trial;
    std::size_t x_size, y_size;
    std::int64_t edges;
    double lhs, rhs, slack;
    bool pass;
  };
  std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials) * geometry->radii().size());

  const std::int32_t n = family.vertex_count();
  for (std::size_t c = 0; c < geometry->radii().size(); ++c) {
    const std::uint64_t color_seed = derive_seed(cfg.seed, geometry->radii()[c]);
    parallel_for(cfg.trials, cfg.workers, [&, c](std::uint64_t begin, std::uint64_t end) {
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        Rng rng(derive_seed(color_seed, trial));
        const std::uint64_t sx = 1 + rng.below(n);
        const std::uint64_t sy = 1 + rng.below(n);
        std::vector<std::int32_t> xs, ys;
        for (std::uint32_t v : rng.sample(n, sx)) xs.push_back(static_cast<std::int32_t>(v));
        for (std::uint32_t v : rng.sample(n, sy)) ys.push_back(static_cast<std::int32_t>(v));
        const VertexSet x(std::move(xs)), y(std::move(ys));
        const MixingReport m = mixing_check(family, static_cast<std::int32_t>(c), x, y);
        rows[c * cfg.trials + trial] = {geometry->radii()[c], static_cast<std::uint32_t>(trial),
                                        x.size(), y.size(), m.edges, m.lhs, m.rhs, m.slack, m.pass};
      }
    });
  }

  std::uint64_t failures = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const TrialRow& row : rows) {
    if (!row.pass) ++failures;
    min_slack = std::min(min_slack, row.slack);
  }

  if (!cfg.csv.empty()) {
    std::ofstream csv(cfg.csv, std::ios::trunc);
    if (!csv) throw usage_error("cannot open CSV path: " + cfg.csv);
    csv << "r,trial,x_size,y_size,edges,lhs,rhs,slack,pass\n";
    for (const TrialRow& row : rows)
      csv << row.r << ',' << row.trial << ',' << row.x_size << ',' << row.y_size << ','
          << row.edges << ',' << row.lhs << ',' << row.rhs << ',' << row.slack << ','
          << (row.pass ? 1 : 0) << '\n';
  }

  report.payload["trials_total"] = rows.size();
  report.payload["min_slack"] = min_slack;
  report.checks.push_back(make_check("mixing", {{"trials", rows.size()}}, 0.0,
                                     static_cast<double>(failures), failures == 0));
  return report;
}

RunReport run_peel(const PeelConfig& cfg) {
  RunReport report;
  report.command = "peel";
  auto geometry = make_geometry(cfg.q, cfg.d, cfg.radii);
  const std::vector<std::uint32_t> points = parse_set_source(*geometry, cfg.set_source);
  ColoredFamily family = ColoredFamily::from_distance_subset(geometry, points, cfg.workers);
  attach_ambient_certificates(family, *geometry, cfg.workers);

  report.config = field_config(*geometry);
  report.config["set_source"] = cfg.set_source;
  report.config["C"] = cfg.c_param;

  const VertexSet s = VertexSet::full(family.vertex_count());
  const bool auto_c = cfg.c_param <= 0.0;
  const double c_param = auto_c ? implied_c(family, s.size()) : cfg.c_param;
  const PeelReport peeled = peel(family, s, c_param);
  const StarReport star = star_report(family, peeled.survivors, s.size());

  Json payload;
  payload["set_size"] = s.size();
  payload["C"] = c_param;
  payload["auto_C"] = auto_c;
  payload["implied_C"] = peeled.implied_c;
  payload["lambda_used"] = peeled.lambda_used;
  payload["tau"] = peeled.tau;
  payload["survivor_count"] = peeled.survivors.size();
  payload["removed_count"] = peeled.removals.size();
  payload["min_surviving_degree"] = peeled.min_surviving_degree;
  Json removals = Json::array();
  for (const PeelRemoval& rm : peeled.removals) {
    Json entry;
    entry["vertex"] = point_list_json(family, {rm.vertex})[0];
    entry["witness_color"] = rm.witness_color;
    entry["degree"] = rm.degree_at_removal;
    removals.push_back(std::move(entry));
  }
  payload["removals"] = std::move(removals);
  payload["survivors"] = point_list_json(family, peeled.survivors.indices());
  Json star_json = Json::array();
  for (const StarColorReport& sc : star.per_color) {
    Json entry;
    entry["color"] = sc.color;
    entry["min_degree"] = sc.min_degree;
    entry["threshold"] = sc.threshold;
    entry["pass"] = sc.pass;
    star_json.push_back(std::move(entry));
  }
  payload["star"] = std::move(star_json);
  report.payload = std::move(payload);

  Json peel_params;
  peel_params["C"] = c_param;
  peel_params["implied_C"] = peeled.implied_c;
  peel_params["t"] = family.color_count();
  peel_params["tau"] = peeled.tau;
  if (peeled.theorem_applies) {
    report.checks.push_back(make_check("peel-bound", peel_params, peeled.removed_bound,
                                       static_cast<double>(peeled.removals.size()),
                                       peeled.removed_bound_ok));
  } else {
    report.checks.push_back(
        make_vacuous("peel-bound", peel_params, "requires C >= 4 sqrt(t) and |S| >= C n lambda / D"));
  }

  const double q = geometry->field().q();
  const double star_gate =
      12.0 * std::sqrt(static_cast<double>(family.color_count())) *
      std::pow(q, (geometry->dimension() + 1) / 2.0);
  Json star_params;
  star_params["size_gate"] = star_gate;
  star_params["set_size"] = s.size();
  if (auto_c && static_cast<double>(s.size()) >= star_gate) {
    double q_pow = std::pow(q, static_cast<double>(geometry->dimension() + 1));
    const double removal_bound = 80.0 * family.color_count() * q_pow / static_cast<double>(s.size());
    const double degree_threshold = static_cast<double>(s.size()) / (6.0 * q);
    bool degrees_ok = true;
    std::int32_t min_degree = 0;
    bool first = true;
    for (const StarColorReport& sc : star.per_color) {
      degrees_ok = degrees_ok && sc.pass;
      if (first || sc.min_degree < min_degree) min_degree = sc.min_degree;
      first = false;
    }
    const bool removed_ok = static_cast<double>(peeled.removals.size()) <= removal_bound + 1e-9;
    star_params["removal_bound"] = removal_bound;
    star_params["removed"] = peeled.removals.size();
    report.checks.push_back(make_check("star-threshold", star_params, degree_threshold,
                                       static_cast<double>(min_degree),
                                       degrees_ok && removed_ok));
  } else {
    report.checks.push_back(make_vacuous(
        "star-threshold", star_params,
        auto_c ? "requires |S| >= 12 sqrt(t) q^((d+1)/2)" : "requires the auto (implied) C"));
  }
  return report;
}

RunReport run_embed_path(const EmbedPathConfig& cfg) {
  RunReport report;
  report.command = "embed-path";
  auto geometry = make_geometry(cfg.q, cfg.d, cfg.radii);
  const std::vector<std::uint32_t> points = parse_set_source(*geometry, cfg.set_source);
  ColoredFamily family = ColoredFamily::from_distance_subset(geometry, points, cfg.workers);

  report.config = field_config(*geometry);
  report.config["set_source"] = cfg.set_source;
  report.config["length"] = cfg.length;
  report.config["colors"] = cfg.colors;

  const std::int32_t t = family.color_count();
  ColoredPath path;
  if (cfg.colors == "cyclic") {
    path = ColoredPath::cyclic(cfg.length, t);
  } else if (cfg.colors.rfind("random:", 0) == 0) {
    path = ColoredPath::random(cfg.length, t, std::stoull(cfg.colors.substr(7)));
  } else {
    path.length = cfg.length;
    std::stringstream ss(cfg.colors);
    std::string token;
    while (std::getline(ss, token, ',')) path.colors.push_back(std::stoi(token));
    if (static_cast<std::int32_t>(path.colors.size()) != cfg.length - 1)
      throw usage_error("explicit color sequence must have length-1 entries");
  }

  // Theorem-level guarantee from the ambient certificates.
  double rho = 0.0;  // max over colors of lambda_r / D_r
  for (elem_t r : geometry->radii()) {
    const SpectralCertificate cert = cached_spectrum(*geometry, r, cfg.workers).certificate;
    rho = std::max(rho, cert.lambda / cert.degree);
  }
  const double guarantee =
      static_cast<double>(points.size()) -
      2.0 * static_cast<double>(geometry->vertex_count()) * rho * std::sqrt(static_cast<double>(t));

  // Optional discard-budget audit at the first |A| crossing.
  const double budget = std::pow(static_cast<double>(geometry->field().q()),
                                 (geometry->dimension() + 2) / 2.0);
  std::optional<IncidenceCertReport> crossing;
  PathEmbedOptions opts;
  opts.validate_each_step = cfg.validate_each_step;
  if (cfg.incidence_audit) {
    opts.snapshot = [&](const DfsState& state) {
      if (!crossing && static_cast<double>(state.a_count) < 1.0 + budget)
        crossing = incidence_certificate(state, family);
    };
  }

  const VertexSet s = VertexSet::full(family.vertex_count());
  const PathEmbedResult result = embed_path(family, s, path, opts);

  report.payload["success"] = result.success;
  report.payload["steps"] = result.steps;
  report.payload["max_u_reached"] = result.max_u_reached;
  report.payload["b_census"] = result.b_census;
  if (result.success) {
    report.payload["embedding"] = point_list_json(family, result.embedding);
  }

  Json params;
  params["set_size"] = points.size();
  params["length"] = cfg.length;
  params["rho"] = rho;
  params["t"] = t;
  if (static_cast<double>(cfg.length) <= guarantee) {
    report.checks.push_back(make_check("path-embed", params, guarantee,
                                       static_cast<double>(cfg.length), result.success));
  } else {
    report.checks.push_back(make_vacuous(
        "path-embed", params, "length exceeds |S| - 2 n (lambda/D) sqrt(t); no guarantee"));
  }

  if (cfg.incidence_audit) {
    Json budget_params;
    budget_params["budget"] = budget;
    if (crossing) {
      budget_params["a_size"] = crossing->a_size;
      budget_params["incidences"] = crossing->incidences;
      report.checks.push_back(make_check("path-discard-budget", budget_params, budget,
                                         static_cast<double>(crossing->b_total),
                                         crossing->incidences_zero &&
                                             static_cast<double>(crossing->b_total) <= budget));
    } else {
      report.checks.push_back(make_vacuous("path-discard-budget", budget_params,
                                           "|A| never dropped below 1 + q^((d+2)/2)"));
    }
  }
  return report;
}

RunReport run_embed_tree(const EmbedTreeConfig& cfg) {
  RunReport report;
  report.command = "embed-tree";

  std::optional<ColoredFamily> family;
  std::shared_ptr<const DistanceGraphFamily> geometry;
  std::size_t set_size = 0;
  if (!cfg.host_family_file.empty()) {
    family = family_from_json(load_json_file(cfg.host_family_file));
    set_size = static_cast<std::size_t>(family->vertex_count());
    report.config["host_family_file"] = cfg.host_family_file;
  } else {
    geometry = make_geometry(cfg.q, cfg.d, cfg.radii);
    const std::vector<std::uint32_t> points = parse_set_source(*geometry, cfg.set_source);
    set_size = points.size();
    family = ColoredFamily::from_distance_subset(geometry, points, cfg.workers);
    report.config = field_config(*geometry);
    report.config["set_source"] = cfg.set_source;
  }
  report.config["tree_file"] = cfg.tree_file;
  report.config["strategy"] = cfg.strategy;
  report.config["delta"] = cfg.delta;
  report.config["m"] = cfg.m;
  report.config["s_cap"] = cfg.s_cap;

  const ColoredTree tree = tree_from_json(load_json_file(cfg.tree_file), family->color_count());

  EmbedStrategy strategy;
  if (cfg.strategy == "exact-good") {
    strategy = EmbedStrategy::kExactGood;
  } else if (cfg.strategy == "greedy") {
    strategy = EmbedStrategy::kGreedy;
  } else if (cfg.strategy == "backtrack") {
    strategy = EmbedStrategy::kBacktrack;
  } else {
    throw usage_error("unknown strategy: " + cfg.strategy);
  }

  GoodnessParams params;
  params.delta = cfg.delta;
  params.m = cfg.m;
  params.s_cap = cfg.s_cap;
  params.tree_bound_k = tree.vertex_count();

  const TreeEmbedResult result = embed_tree(*family, tree, params, strategy);

  report.payload["success"] = result.ok;
  if (result.ok) {
    report.payload["embedding"] = point_list_json(*family, result.embedding);
  } else {
    report.payload["failed_tree_vertex"] = result.failed_tree_vertex;
    report.payload["reason"] = result.reason;
  }

  // Host expansion hypotheses at (delta, m, k = |T|).
  const HypothesesReport hyp = check_hypotheses(*family, cfg.delta, cfg.m, tree.vertex_count());
  Json hyp_params;
  hyp_params["delta"] = cfg.delta;
  hyp_params["m"] = cfg.m;
  hyp_params["k"] = tree.vertex_count();
  if (hyp.capped) {
    report.checks.push_back(make_vacuous("colorful-tree-embed", hyp_params,
                                         "hypothesis enumeration exceeds the subset cap"));
  } else if (!hyp.pass()) {
    report.checks.push_back(
        make_vacuous("colorful-tree-embed", hyp_params, "host fails the expansion hypotheses"));
  } else {
    report.checks.push_back(make_check("colorful-tree-embed", hyp_params, std::nullopt,
                                       std::nullopt, result.ok));
  }

  if (geometry) {
    double lambda_max = 0.0;
    std::uint32_t degree_min = 0;
    bool first = true;
    for (elem_t r : geometry->radii()) {
      const SpectralCertificate cert = cached_spectrum(*geometry, r, cfg.workers).certificate;
      lambda_max = std::max(lambda_max, cert.lambda);
      degree_min = first ? cert.degree : std::min(degree_min, cert.degree);
      first = false;
    }
    const double t = geometry->radii().size();
    const double nl_over_d =
        static_cast<double>(geometry->vertex_count()) * lambda_max / degree_min;
    const double k_param =
        static_cast<double>(set_size) - 10.0 * std::sqrt(t * cfg.delta) * nl_over_d;
    const double m_param = std::sqrt(t / cfg.delta) * nl_over_d;
    Json induced;
    induced["k"] = k_param;
    induced["m"] = m_param;
    induced["t"] = t;
    induced["delta"] = cfg.delta;
    if (k_param >= tree.vertex_count()) {
      report.checks.push_back(
          make_check("induced-tree-params", induced, k_param,
                     static_cast<double>(tree.vertex_count()), result.ok));
    } else {
      report.checks.push_back(make_vacuous(
          "induced-tree-params", induced,
          "|S| - 10 sqrt(t delta) n lambda / D is below the tree size at this scale"));
    }
  }
  return report;
}

RunReport run_construct(const ConstructConfig& cfg) {
  RunReport report;
  report.command = "construct";
  auto geometry = make_geometry(cfg.q, cfg.d, "all");
  report.config = field_config(*geometry);
  report.config.erase("radii");
  report.config["kind"] = cfg.kind;
  report.config["slab_k"] = cfg.slab_k;
  report.config["r"] = cfg.r;

  ConstructionOutput out;
  if (cfg.kind == "avoiding") {
    if (cfg.r == 0) throw usage_error("avoiding construction requires an explicit nonzero r");
    out = construct_avoiding(*geometry, cfg.slab_k, cfg.r);
  } else if (cfg.kind == "saturating") {
    out = construct_saturating(*geometry, cfg.slab_k, cfg.r);
  } else if (cfg.kind == "paired-diagonal") {
    out = construct_paired_diagonal(*geometry);
  } else {
    throw usage_error("unknown construction kind: " + cfg.kind);
  }

  const ConstructionReport verification = verify_construction(*geometry, out);
  for (const ConstructionCheck& check : verification.checks) {
    report.checks.push_back(make_check("construct-" + check.name,
                                       {{"kind", out.kind}, {"slab_k", out.slab_k}},
                                       static_cast<double>(check.expected),
                                       static_cast<double>(check.observed), check.pass));
  }

  report.payload["kind"] = out.kind;
  report.payload["tail_coeff"] = element_to_json(geometry->field(), out.tail_coeff);
  report.payload["target_radius"] = element_to_json(geometry->field(), out.target_radius);
  report.payload["x_size"] = out.x_points.size();
  report.payload["y_size"] = out.y_points.size();
  if (verification.pair_count >= 0) report.payload["pair_count"] = verification.pair_count;
  // Product window against the mixing-derived ceiling 4 q^(d+1) for avoiding sets.
  if (out.kind == "avoiding") {
    const double product =
        static_cast<double>(out.x_points.size()) * static_cast<double>(out.y_points.size());
    const double window = 4.0 * std::pow(static_cast<double>(cfg.q), cfg.d + 1.0);
    report.payload["xy_product"] = product;
    report.payload["xy_product_ceiling"] = window;
    report.payload["xy_product_ratio"] = product / window;
  }
  if (!cfg.out_x.empty()) write_json_file(cfg.out_x, point_set_to_json(*geometry, out.x_points));
  if (!cfg.out_y.empty()) write_json_file(cfg.out_y, point_set_to_json(*geometry, out.y_points));
  return report;
}

RunReport run_incidence(const IncidenceConfig& cfg) {
  RunReport report;
  report.command = "incidence";
  auto geometry = make_geometry(cfg.q, cfg.d, "all");
  report.config = field_config(*geometry);
  report.config.erase("radii");
  report.config["points_file"] = cfg.points_file;
  report.config["spheres_file"] = cfg.spheres_file;

  const std::vector<std::uint32_t> points =
      point_set_from_json(*geometry, load_json_file(cfg.points_file));
  const SphereSet spheres = sphere_set_from_json(*geometry, load_json_file(cfg.spheres_file));

  const std::int64_t by_pairs =
      count_incidences(*geometry, points, spheres, IncidenceStrategy::kPairs);
  const std::int64_t by_translate =
      count_incidences(*geometry, points, spheres, IncidenceStrategy::kTranslate);
  report.checks.push_back(make_check("incidence-strategy-agreement", Json::object(),
                                     static_cast<double>(by_pairs),
                                     static_cast<double>(by_translate), by_pairs == by_translate));

  const IncidenceBoundReport bound = bound_check_general(*geometry, points, spheres);
  Json params;
  params["x_size"] = points.size();
  params["y_size"] = spheres.size();
  report.checks.push_back(
      make_check("point-sphere-bound", params, bound.rhs, bound.lhs, bound.pass));

  report.payload["incidences"] = bound.incidences;
  report.payload["expected"] = bound.expected;
  report.payload["slack"] = bound.slack;

  if (cfg.exponent_override >= 0.0) {
    const IncidenceBoundReport probe =
        bound_check_general(*geometry, points, spheres, cfg.exponent_override);
    Json probe_json;
    probe_json["exponent"] = probe.exponent;
    probe_json["lhs"] = probe.lhs;
    probe_json["rhs"] = probe.rhs;
    probe_json["within"] = probe.pass;
    report.payload["exponent_probe"] = std::move(probe_json);  // observational only
  }
  return report;
}

RunReport run_probe(const ProbeConfig& cfg) {
  RunReport report;
  report.command = "probe-conjecture";
  auto geometry = make_geometry(cfg.q, cfg.d, "all");
  report.config = field_config(*geometry);
  report.config["C"] = cfg.c_param;
  report.config["seed"] = cfg.seed;

  std::uint64_t size = cfg.size;
  if (size == 0) {
    size = static_cast<std::uint64_t>(
        std::ceil(cfg.c_param * std::pow(static_cast<double>(cfg.q), (cfg.d + 1) / 2.0)));
  }
  size = std::min<std::uint64_t>(size, geometry->vertex_count());
  if (size == 0) throw usage_error("probe set size must be positive");
  report.config["size"] = size;

  Rng rng(derive_seed(cfg.seed, 0x5e7));
  const std::vector<std::uint32_t> points = rng.sample(geometry->vertex_count(), size);
  ColoredFamily family = ColoredFamily::from_distance_subset(geometry, points, cfg.workers);
  const ConjectureProbeReport probe = probe_min_degree_conjecture(
      family, VertexSet::full(family.vertex_count()), cfg.c_param);

  report.payload["tau"] = probe.tau;
  report.payload["set_size"] = probe.s_size;
  report.payload["removed"] = probe.removed;
  report.payload["conjectured_removals"] = probe.conjectured_removals;
  report.payload["ratio"] = probe.ratio;
  report.payload["min_surviving_degree"] = probe.min_surviving_degree;
  report.payload["note"] = "observational probe; no verdict is asserted";
  return report;
}

RunReport run_audit(const AuditConfig& cfg) {
  RunReport report;
  report.command = "audit";
  Json inputs = Json::array();
  for (const auto& path : cfg.inputs) inputs.push_back(path);
  report.config["inputs"] = std::move(inputs);

  struct Row {
    std::uint64_t pass = 0, fail = 0, vacuous = 0;
    std::vector<std::string> vacuous_reasons;
  };
  std::map<std::string, Row> table;
  for (const auto& path : cfg.inputs) {
    const Json j = load_json_file(path);
    for (const auto& check : j.at("checks")) {
      Row& row = table[check.at("id").get<std::string>()];
      const std::string verdict = check.at("verdict").get<std::string>();
      if (verdict == "pass") {
        ++row.pass;
      } else if (verdict == "fail") {
        ++row.fail;
      } else {
        ++row.vacuous;
        if (check.at("params").contains("reason")) {
          const std::string reason = check.at("params").at("reason").get<std::string>();
          if (std::find(row.vacuous_reasons.begin(), row.vacuous_reasons.end(), reason) ==
              row.vacuous_reasons.end())
            row.vacuous_reasons.push_back(reason);
        }
      }
    }
  }

  std::uint64_t total_fail = 0;
  Json table_json = Json::array();
  for (const auto& [id, row] : table) {
    Json entry;
    entry["id"] = id;
    entry["pass"] = row.pass;
    entry["fail"] = row.fail;
    entry["vacuous"] = row.vacuous;
    entry["vacuous_reasons"] = row.vacuous_reasons;
    table_json.push_back(std::move(entry));
    total_fail += row.fail;
  }
  report.payload["table"] = std::move(table_json);

  if (!cfg.csv.empty()) {
    std::ofstream csv(cfg.csv, std::ios::trunc);
    if (!csv) throw usage_error("cannot open CSV path: " + cfg.csv);
    csv << "id,pass,fail,vacuous\n";
    for (const auto& [id, row] : table)
      csv << id << ',' << row.pass << ',' << row.fail << ',' << row.vacuous << '\n';
  }

  report.checks.push_back(make_check("audit-zero-failures", {{"reports", cfg.inputs.size()}}, 0.0,
                                     static_cast<double>(total_fail), total_fail == 0));
  return report;
}

}  // namespace fqdist
