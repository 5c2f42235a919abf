#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqdist/json_io.hpp"

namespace fqdist {

// One verdict row in a run report. Every bound a command audits lands here as
// pass, fail, or vacuous (hypotheses not satisfiable at this scale); nothing
// is silently skipped. Observational probe output goes to the payload
// instead, because it asserts nothing.
struct CheckEntry {
  std::string id;
  Json params = Json::object();
  std::optional<double> bound;
  std::optional<double> observed;
  std::string verdict;  // "pass" | "fail" | "vacuous"
};

struct RunReport {
  std::string command;
  Json config = Json::object();
  std::vector<CheckEntry> checks;
  Json payload = Json::object();

  Json to_json() const;
  // 0 when every check passes or is vacuous, 2 otherwise.
  int exit_code() const;
};

// Factors an odd prime power; errors otherwise.
void factor_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& ext_degree);

// Parses "1,2,5" or "all" into family radii.
std::vector<elem_t> parse_radii(const FieldSpec& f, const std::string& text);

// ---- command configs --------------------------------------------------------

struct SpectrumConfig {
  std::uint32_t q = 3, d = 2;
  std::string radii = "all";
  std::string eigen_csv;  // optional CSV of all eigenvalues
  bool dense_check = true;  // cross-check against the dense eigensolver when in cap
  unsigned workers = 1;
};

struct MixingConfig {
  std::uint32_t q = 3, d = 2;
  std::string radii = "all";
  std::uint32_t trials = 1000;
  std::uint64_t seed = 1;
  std::string csv;  // optional per-trial CSV
  unsigned workers = 1;
};

struct PeelConfig {
  std::uint32_t q = 3, d = 2;
  std::string radii = "all";
  double c_param = 0.0;  // <= 0 means "auto": the implied C at this set size
  std::string set_source = "full";  // full | random:SIZE:SEED | file:PATH
  unsigned workers = 1;
};

struct EmbedPathConfig {
  std::uint32_t q = 3, d = 2;
  std::string radii = "1";
  std::int32_t length = 2;
  std::string colors = "cyclic";  // cyclic | random:SEED | explicit 0,1,...
  std::string set_source = "full";
  bool validate_each_step = false;
  bool incidence_audit = false;  // track the discard budget at the |A| crossing
  unsigned workers = 1;
};

struct EmbedTreeConfig {
  std::string tree_file;
  std::int32_t tree_colors = 1;
  // host: either a synthetic family file, or a distance family
  std::string host_family_file;
  std::uint32_t q = 3, d = 2;
  std::string radii = "all";
  std::string set_source = "full";
  std::string strategy = "exact-good";  // exact-good | greedy | backtrack
  std::int32_t delta = 2;
  std::int32_t m = 1;
  std::int32_t s_cap = 2;
  unsigned workers = 1;
};

struct ConstructConfig {
  std::string kind = "avoiding";  // avoiding | saturating | paired-diagonal
  std::uint32_t q = 3, d = 3;
  std::uint32_t slab_k = 1;
  elem_t r = 0;  // 0 = canonical choice (avoiding requires explicit nonzero r)
  std::string out_x, out_y;  // optional point-list files
};

struct IncidenceConfig {
  std::uint32_t q = 3, d = 2;
  std::string points_file;
  std::string spheres_file;
  double exponent_override = -1.0;  // observational probe when >= 0
};

struct ProbeConfig {
  std::uint32_t q = 7, d = 3;
  double c_param = 2.0;
  std::uint64_t size = 0;  // 0 = ceil(C q^((d+1)/2)), clamped to q^d
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct AuditConfig {
  std::vector<std::string> inputs;
  std::string csv;  // optional summary CSV
};

RunReport run_spectrum(const SpectrumConfig& cfg);
RunReport run_mixing(const MixingConfig& cfg);
RunReport run_peel(const PeelConfig& cfg);
RunReport run_embed_path(const EmbedPathConfig& cfg);
RunReport run_embed_tree(const EmbedTreeConfig& cfg);
RunReport run_construct(const ConstructConfig& cfg);
RunReport run_incidence(const IncidenceConfig& cfg);
RunReport run_probe(const ProbeConfig& cfg);
RunReport run_audit(const AuditConfig& cfg);

}  // namespace fqdist
