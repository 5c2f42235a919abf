#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fqdist/experiments.hpp"

namespace {

// Timing goes to stderr only, so reports re-run byte-identically.
int finish(const fqdist::RunReport& report, const std::string& output,
           std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  if (output.empty()) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    fqdist::write_json_file(output, report.to_json());
  }
  std::cerr << report.command << ": " << elapsed << " ms, exit " << report.exit_code() << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance-graph embedding toolkit over F_q^d"};
  app.require_subcommand(1);

  std::string output;
  unsigned workers = 1;
  app.add_option("--output", output, "write the JSON report to this path (default: stdout)");
  app.add_option("--workers", workers, "worker threads for parallel sweeps")->capture_default_str();

  fqdist::SpectrumConfig spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "distance graph eigenvalues and gap checks");
  spectrum_cmd->add_option("--q", spectrum.q, "odd prime power")->required();
  spectrum_cmd->add_option("--d", spectrum.d, "dimension")->required();
  spectrum_cmd->add_option("--r", spectrum.radii, "radii list (comma separated) or 'all'")
      ->capture_default_str();
  spectrum_cmd->add_option("--eigen-csv", spectrum.eigen_csv, "write all eigenvalues as CSV");
  spectrum_cmd->add_flag("!--no-dense", spectrum.dense_check,
                         "skip the dense eigensolver cross-check");

  fqdist::MixingConfig mixing;
  auto* mixing_cmd = app.add_subcommand("mixing", "randomized edge-discrepancy checks");
  mixing_cmd->add_option("--q", mixing.q)->required();
  mixing_cmd->add_option("--d", mixing.d)->required();
  mixing_cmd->add_option("--r", mixing.radii)->capture_default_str();
  mixing_cmd->add_option("--trials", mixing.trials)->capture_default_str();
  mixing_cmd->add_option("--seed", mixing.seed)->capture_default_str();
  mixing_cmd->add_option("--csv", mixing.csv, "write per-trial rows as CSV");

  fqdist::PeelConfig peel;
  double peel_c = 0.0;
  auto* peel_cmd = app.add_subcommand("peel", "min-degree peeling with star report");
  peel_cmd->add_option("--q", peel.q)->required();
  peel_cmd->add_option("--d", peel.d)->required();
  peel_cmd->add_option("--r", peel.radii)->capture_default_str();
  peel_cmd->add_option("--C", peel_c, "peel parameter; omit for the implied C at this set size");
  peel_cmd->add_option("--set", peel.set_source, "full | random:SIZE:SEED | file:PATH")
      ->capture_default_str();

  fqdist::EmbedPathConfig path;
  auto* path_cmd = app.add_subcommand("embed-path", "one-pass colored path embedding");
  path_cmd->add_option("--q", path.q)->required();
  path_cmd->add_option("--d", path.d)->required();
  path_cmd->add_option("--r", path.radii)->capture_default_str();
  path_cmd->add_option("--len", path.length, "path vertex count")->required();
  path_cmd->add_option("--colors", path.colors, "cyclic | random:SEED | explicit 0,1,...")
      ->capture_default_str();
  path_cmd->add_option("--set", path.set_source)->capture_default_str();
  path_cmd->add_flag("--validate", path.validate_each_step, "check invariants after every step");
  path_cmd->add_flag("--incidence-audit", path.incidence_audit,
                     "track the discard budget at the |A| crossing");

  fqdist::EmbedTreeConfig tree;
  auto* tree_cmd = app.add_subcommand("embed-tree", "colored tree embedding");
  tree_cmd->add_option("--tree", tree.tree_file, "tree JSON file")->required();
  tree_cmd->add_option("--host-family", tree.host_family_file, "synthetic family JSON file");
  tree_cmd->add_option("--q", tree.q);
  tree_cmd->add_option("--d", tree.d);
  tree_cmd->add_option("--r", tree.radii)->capture_default_str();
  tree_cmd->add_option("--set", tree.set_source)->capture_default_str();
  tree_cmd->add_option("--strategy", tree.strategy, "exact-good | greedy | backtrack")
      ->capture_default_str();
  tree_cmd->add_option("--delta", tree.delta)->capture_default_str();
  tree_cmd->add_option("--m", tree.m)->capture_default_str();
  tree_cmd->add_option("--s-cap", tree.s_cap)->capture_default_str();

  fqdist::ConstructConfig construct;
  auto* construct_cmd = app.add_subcommand("construct", "extremal pair-set constructions");
  construct_cmd->add_option("--kind", construct.kind, "avoiding | saturating | paired-diagonal")
      ->capture_default_str();
  construct_cmd->add_option("--q", construct.q)->required();
  construct_cmd->add_option("--d", construct.d)->required();
  construct_cmd->add_option("--slab-k", construct.slab_k)->capture_default_str();
  construct_cmd->add_option("--r", construct.r, "target radius (0 = canonical where allowed)");
  construct_cmd->add_option("--out-x", construct.out_x, "write X as a point-list file");
  construct_cmd->add_option("--out-y", construct.out_y, "write Y as a point-list file");

  fqdist::IncidenceConfig incidence;
  auto* incidence_cmd = app.add_subcommand("incidence", "point-sphere incidence bound check");
  incidence_cmd->add_option("--q", incidence.q)->required();
  incidence_cmd->add_option("--d", incidence.d)->required();
  incidence_cmd->add_option("--points", incidence.points_file)->required();
  incidence_cmd->add_option("--spheres", incidence.spheres_file)->required();
  incidence_cmd->add_option("--exponent", incidence.exponent_override,
                            "observational alternate bound exponent");

  fqdist::ProbeConfig probe;
  auto* probe_cmd = app.add_subcommand("probe-conjecture", "empirical min-degree probe");
  probe_cmd->add_option("--q", probe.q)->required();
  probe_cmd->add_option("--d", probe.d)->required();
  probe_cmd->add_option("--C", probe.c_param)->capture_default_str();
  probe_cmd->add_option("--size", probe.size, "set size (0 = ceil(C q^((d+1)/2)), clamped)");
  probe_cmd->add_option("--seed", probe.seed)->capture_default_str();

  fqdist::AuditConfig audit;
  auto* audit_cmd = app.add_subcommand("audit", "aggregate verdicts across report files");
  audit_cmd->add_option("--inputs", audit.inputs, "report JSON files")->required();
  audit_cmd->add_option("--csv", audit.csv, "write the summary table as CSV");

  CLI11_PARSE(app, argc, argv);
  const auto start = std::chrono::steady_clock::now();

  try {
    if (*spectrum_cmd) {
      spectrum.workers = workers;
      return finish(fqdist::run_spectrum(spectrum), output, start);
    }
    if (*mixing_cmd) {
      mixing.workers = workers;
      return finish(fqdist::run_mixing(mixing), output, start);
    }
    if (*peel_cmd) {
      peel.workers = workers;
      peel.c_param = peel_c;
      return finish(fqdist::run_peel(peel), output, start);
    }
    if (*path_cmd) {
      path.workers = workers;
      return finish(fqdist::run_embed_path(path), output, start);
    }
    if (*tree_cmd) {
      tree.workers = workers;
      return finish(fqdist::run_embed_tree(tree), output, start);
    }
    if (*construct_cmd) return finish(fqdist::run_construct(construct), output, start);
    if (*incidence_cmd) return finish(fqdist::run_incidence(incidence), output, start);
    if (*probe_cmd) {
      probe.workers = workers;
      return finish(fqdist::run_probe(probe), output, start);
    }
    if (*audit_cmd) return finish(fqdist::run_audit(audit), output, start);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
