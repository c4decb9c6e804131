// Command-line driver: equilibrium, spectrum, critical numbers, bifurcation invariants and modes.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "octa/bifurcation.hpp"
#include "octa/config.hpp"
#include "octa/errors.hpp"
#include "octa/modes.hpp"

using namespace octa;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  bool json_out = false;
  double max = 0.0;
  std::string j;
  int k = 1;
  double eps = 0.0;
  int samples = 0;
  std::string out;
  std::string source = "tabulated";
};

void emit(const Options& o, const json& doc, const std::string& text) {
  if (o.json_out) {
    std::cout << dump_json(doc) << "\n";
  } else {
    std::cout << text;
  }
}

json params_json(const PotentialParams& p) { return {{"sigma1", p.sigma1}, {"sigma2", p.sigma2}, {"sigma3", p.sigma3}}; }

void cmd_equilibrium(const Options& o, const RunConfig& c) {
  Equilibrium eq = find_equilibrium(c.params);
  json doc = {{"params", params_json(c.params)},
              {"r0", eq.r0},
              {"residual", eq.residual},
              {"slope", eq.slope},
              {"curvature", eq.curvature}};
  emit(o, doc,
       fmt::format("r0={:.17g}\nresidual={:.3e}\ncurvature={:.17g}\n", eq.r0, eq.residual, eq.curvature));
}

void cmd_spectrum(const Options& o, const RunConfig& c) {
  Equilibrium eq = find_equilibrium(c.params);
  StiffnessCoefficients k = StiffnessCoefficients::at_radius(c.params, eq.r0);
  SpectrumReport closed = closed_form_spectrum(k);
  SpectrumReport numeric = assign_eigenspaces(numeric_spectrum(block_hessian(k)), octahedral_actions());
  json doc = to_json(numeric);
  json cf = json::array();
  std::string text = fmt::format("{:<4} {:>22} {:>22} {:>4}\n", "j", "alpha^2 closed", "alpha^2 numeric", "dim");
  for (const auto& e : closed.spaces) {
    const Eigenspace& n = numeric.find(e.j);
    cf.push_back({{"j", e.j}, {"alpha_sq", e.alpha_sq}, {"multiplicity", e.multiplicity}});
    text += fmt::format("{:<4} {:>22.17g} {:>22.17g} {:>4}\n", e.j, e.alpha_sq, n.alpha_sq, e.multiplicity);
  }
  doc["closed_form"] = cf;
  ResonanceCheck rc = check_isotypic_nonresonance(closed);
  doc["nonresonant"] = rc.ok;
  if (!rc.ok) text += "resonance between W_" + rc.first + " and W_" + rc.second + "\n";
  emit(o, doc, text);
}

void cmd_critical(const Options& o, const RunConfig& c) {
  double lmax = o.max > 0.0 ? o.max : c.lambda_max;
  auto alphas = reference_alphas(c.params);
  auto set = critical_set(alphas, lmax);
  json list = json::array();
  std::string text;
  for (const auto& x : set) {
    list.push_back({{"j", x.j}, {"l", x.l}, {"lambda", x.lambda}});
    text += fmt::format("lambda_{{{},{}}} = {:.17g}\n", x.j, x.l, x.lambda);
  }
  json ties = json::array();
  for (const auto& [a, b] : critical_ties(set)) {
    ties.push_back({{"first", a.j + "," + std::to_string(a.l)}, {"second", b.j + "," + std::to_string(b.l)}});
    text += fmt::format("tie: lambda_{{{},{}}} and lambda_{{{},{}}}\n", a.j, a.l, b.j, b.l);
  }
  emit(o, {{"lambda_max", lmax}, {"critical", list}, {"ties", ties}}, text);
}

void cmd_invariant(const Options& o, const RunConfig& c) {
  if (o.j.empty()) throw DomainError("invariant needs --j");
  InvariantOptions opt;
  if (o.source == "computed") {
    opt.source = DegreeSource::computed;
  } else if (o.source != "tabulated") {
    throw DomainError("unknown degree source '" + o.source + "'");
  }
  opt.alphas = reference_alphas(c.params);
  BifurcationReport r = bifurcation_invariant(o.j, opt);
  json doc;
  doc["j"] = o.j;
  doc["source"] = o.source;
  doc["lambda"] = r.target.lambda;
  doc["factors"] = r.factors.size();
  std::string text;
  if (r.invariant) {
    doc["invariant"] = to_json(*r.invariant);
    text += format(*r.invariant) + "\n";
  } else {
    text += fmt::format("full product skipped ({} factors)\n", r.factors.size());
  }
  json table = json::array();
  text += fmt::format("{:>6} {:>4}  {}\n", "coeff", "|W|", "maximal type");
  for (const auto& t : r.maximal_types) {
    table.push_back({{"label", t.label}, {"coeff", t.coeff}, {"weyl", t.weyl}});
    text += fmt::format("{:>6} {:>4}  ({})\n", t.coeff, t.weyl, t.label);
  }
  doc["maximal_types"] = table;
  doc["paths_agree"] = r.paths_agree;
  if (!r.paths_agree) throw ConsistencyPanic("full product and local coefficients disagree for j = " + o.j);
  emit(o, doc, text);
}

void cmd_modes(const Options& o, const RunConfig& c) {
  if (o.j.empty()) throw DomainError("modes needs --j");
  double eps = o.eps > 0.0 ? o.eps : c.epsilon;
  int n = o.samples > 0 ? o.samples : c.n_samples;
  std::string dir = o.out.empty() ? c.output_dir : o.out;
  ModeTrajectory tr = build_mode(o.j, o.k, eps, n, c.params);
  SymmetryReport rep = verify_symmetry(tr, tr.symmetry);
  std::filesystem::create_directories(dir);
  std::string stem = fmt::format("{}/mode_j{}_k{}", dir, o.j == "7*" ? std::string("7s") : o.j, o.k);
  export_trajectory(tr, stem + ".csv");
  json manifest = mode_manifest(tr, rep);
  {
    std::ofstream f(stem + ".json");
    if (!f) throw std::runtime_error("cannot open " + stem + ".json for writing");
    f << dump_json(manifest) << "\n";
  }
  std::string text = fmt::format("symmetry={}\nverified={}\nmax_residual={:.3e}\ncsv={}.csv\nmanifest={}.json\n",
                                 tr.symmetry, rep.pass ? "true" : "false", rep.max_residual, stem, stem);
  emit(o, manifest, text);
}

json catalog_dump() {
  json s4 = json::array();
  for (const auto& cl : SubgroupCatalog::get().classes()) {
    s4.push_back({{"label", cl.label},
                  {"order", cl.order},
                  {"generators", cl.words},
                  {"normalizer_order", cl.normalizer_order},
                  {"weyl_order", cl.weyl_order}});
  }
  for (const auto& j : spectral_labels()) {
    if (j != "6") computed_basic_degree(j, 1);
  }
  auto& cat = O2Catalog::shared();
  json o2 = json::array();
  for (int h = 1; h < cat.size(); ++h) {
    json gens = json::array();
    for (const auto& x : cat.rep(h).generators()) {
      gens.push_back({{"kappa", x.flip},
                      {"angle", fmt::format("{}/{}", x.angle.numerator(), x.angle.denominator())},
                      {"spatial", format_cycles({OctahedralGroup::get().perm(x.g).begin(),
                                                 OctahedralGroup::get().perm(x.g).end()})}});
    }
    o2.push_back({{"label", cat.label(h)}, {"order", cat.order(h)}, {"weyl_order", cat.weyl(h)}, {"generators", gens}});
  }
  return {{"s4p", s4}, {"o2", o2}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric vibrations of an octahedral molecule"};
  Options o;
  bool dump = false;
  app.add_option("--config", o.config_path, "key=value configuration file");
  app.add_flag("--json", o.json_out, "print JSON instead of text");
  app.add_flag("--catalog-dump", dump, "print the subgroup catalogs as JSON");
  app.require_subcommand(0, 1);
  auto* eq = app.add_subcommand("equilibrium", "octahedral equilibrium radius");
  auto* sp = app.add_subcommand("spectrum", "Hessian spectrum at the equilibrium");
  auto* cr = app.add_subcommand("critical", "critical numbers in ascending order");
  cr->add_option("--max", o.max, "largest lambda");
  auto* inv = app.add_subcommand("invariant", "bifurcation invariant at lambda_{j,1}");
  inv->add_option("--j", o.j, "irreducible label")->required();
  inv->add_option("--source", o.source, "degree source: tabulated or computed");
  auto* md = app.add_subcommand("modes", "linearized mode, CSV trajectory and manifest");
  md->add_option("--j", o.j, "irreducible label")->required();
  md->add_option("--k", o.k, "mode index within the eigenspace");
  md->add_option("--eps", o.eps, "amplitude");
  md->add_option("--samples", o.samples, "samples per period");
  md->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (dump) {
      std::cout << dump_json(catalog_dump()) << "\n";
      if (app.get_subcommands().empty()) return 0;
    }
    if (*eq) cmd_equilibrium(o, c);
    else if (*sp) cmd_spectrum(o, c);
    else if (*cr) cmd_critical(o, c);
    else if (*inv) cmd_invariant(o, c);
    else if (*md) cmd_modes(o, c);
    else if (!dump) std::cout << app.help();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyPanic& e) {
    std::cerr << "consistency panic: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
