// Acceptance checks, one PASS/FAIL line per criterion. The first argument is the path of the
// octa executable, used by the determinism check.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <unistd.h>

#include "octa/bifurcation.hpp"
#include "octa/burnside.hpp"
#include "octa/modes.hpp"

using namespace octa;

namespace {

// Tolerances.
constexpr double kRadiusTol = 1e-3;
constexpr double kRadiusMs = 10.0;
constexpr double kAlphaTol = 1e-3;
constexpr double kNumericRel = 1e-8;
constexpr double kSpectrumMs = 100.0;
constexpr double kCatalogSeconds = 60.0;
constexpr double kSymmetryRel = 1e-9;
constexpr double kRatioLow = 80.0;
constexpr double kRatioHigh = 120.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

Outcome equilibrium() {
  Outcome o;
  auto t0 = Clock::now();
  Equilibrium eq = find_equilibrium(kReferenceParams);
  double ms = ms_since(t0);
  o.require(std::abs(eq.r0 - 1.4128) <= kRadiusTol, fmt::format("r0 = {}", eq.r0));
  o.require(ms < kRadiusMs, fmt::format("{:.2f} ms", ms));
  if (o.pass) o.detail = fmt::format("r0 = {:.10f} in {:.3f} ms", eq.r0, ms);
  return o;
}

Outcome spectrum() {
  Outcome o;
  const std::array<std::string, 6> labels = {"0", "4", "7", "7*", "8", "9"};
  const std::array<double, 6> printed = {0.7867, 0.5123, 0.2532, 0.5882, 0.1829, 0.01173};
  const std::map<std::string, int> mult = {{"0", 1}, {"4", 2}, {"6", 3}, {"7", 3}, {"7*", 3}, {"8", 3}, {"9", 3}};
  auto t0 = Clock::now();
  StiffnessCoefficients k = StiffnessCoefficients::at_radius(kReferenceParams, find_equilibrium(kReferenceParams).r0);
  SpectrumReport closed = closed_form_spectrum(k);
  SpectrumReport numeric = assign_eigenspaces(numeric_spectrum(block_hessian(k)), octahedral_actions());
  double ms = ms_since(t0);
  for (int i = 0; i < 6; ++i) {
    double a = closed.find(labels[i]).alpha_sq;
    o.require(std::abs(a - printed[i]) <= kAlphaTol, fmt::format("alpha^2_{} = {}", labels[i], a));
  }
  double worst = 0.0;
  for (const auto& [j, m] : mult) {
    o.require(closed.find(j).multiplicity == m && numeric.find(j).multiplicity == m, "multiplicity of " + j);
    if (j == "6") {
      o.require(closed.find(j).alpha_sq == 0.0 && std::abs(numeric.find(j).alpha_sq) < 1e-12, "zero eigenvalue");
      continue;
    }
    double c = closed.find(j).alpha_sq;
    worst = std::max(worst, std::abs(numeric.find(j).alpha_sq - c) / std::abs(c));
  }
  o.require(worst <= kNumericRel, fmt::format("numeric relative gap {:.2e}", worst));
  o.require(ms < kSpectrumMs, fmt::format("{:.1f} ms", ms));
  if (o.pass) o.detail = fmt::format("six values within {}, numeric gap {:.1e}, {:.2f} ms", kAlphaTol, worst, ms);
  return o;
}

Outcome decomposition() {
  Outcome o;
  Character chi{};
  auto actions = octahedral_actions();
  const auto& G = OctahedralGroup::get();
  for (int g = 0; g < OctahedralGroup::kOrder; ++g) chi[G.class_of(g)] = actions[g].trace();
  const std::array<double, 10> want_chi = {18, 0, 0, 2, -2, 4, 0, 0, 2, 0};
  for (int c = 0; c < 10; ++c) o.require(std::abs(chi[c] - want_chi[c]) < 1e-12, fmt::format("chi[{}] = {}", c, chi[c]));
  auto m = isotypic_multiplicities(chi);
  const std::array<int, 10> want = {1, 0, 0, 0, 1, 0, 1, 2, 1, 1};
  o.require(m == want, "multiplicities");
  if (o.pass) o.detail = "W_0 + W_4 + W_6 + 2 W_7 + W_8 + W_9";
  return o;
}

Outcome catalog() {
  Outcome o;
  auto t0 = Clock::now();
  const auto& cat = SubgroupCatalog::get();
  const std::vector<std::string> labels = {
      "Z_1",   "Z_2",   "Z_3",   "V_4",   "A_4",   "D_4",   "Z_4",   "D_3",   "D_2",   "D_1",   "S_4",
      "Z_1^p", "D_1^p", "D_1^z", "Z_2^p", "Z_2^-", "D_2^p", "D_2^z", "D_2^d", "Z_4^d", "V_4^-", "V_4^p",
      "D_4^z", "D_4^d", "D_4^{\\tilde d}", "D_4^p", "Z_3^p", "D_3^z", "D_3^p", "A_4^p", "S_4^-", "S_4^p", "Z_4^p"};
  o.require(cat.size() == 33, fmt::format("{} classes", cat.size()));
  std::size_t enumerated = 0;
  for (const auto& cl : cat.classes()) enumerated += cl.conjugates.size();
  o.require(enumerated == enumerate_subgroups().size(), "enumeration does not match the classes");
  for (const auto& l : labels) {
    bool found = false;
    for (const auto& cl : cat.classes()) found = found || cl.label == l;
    o.require(found, "missing " + l);
  }
  const RingCatalog* ring = &OctahedralRing::get();
  int mismatches = 0;
  for (int h = 0; h < cat.size(); ++h) {
    for (int k = 0; k < cat.size(); ++k) mismatches += !(multiply_generators(ring, h, k) == census_product(h, k));
  }
  double s = ms_since(t0) / 1000.0;
  o.require(mismatches == 0, fmt::format("{} product mismatches", mismatches));
  o.require(s < kCatalogSeconds, fmt::format("{:.1f} s", s));
  if (o.pass) o.detail = fmt::format("33 classes, 1089 products equal the census, {:.3f} s", s);
  return o;
}

Outcome involution() {
  Outcome o;
  const RingCatalog* ring = &OctahedralRing::get();
  const auto& cat = SubgroupCatalog::get();
  auto one = BurnsideElement::unit(ring);
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    auto d = octahedral_basic_degree(i);
    o.require(multiply(d, d) == one, fmt::format("degree {} is not an involution", i));
    if (i == 0) continue;  // the trivial representation has no proper orbit types
    for (int h : octahedral_maximal_types(i)) {
      long long w = cat.at(h).weyl_order, c = d.coeff(h);
      bool law = (w == 1 && c == -2) || (w == 2 && c == -1);
      o.require(law, fmt::format("coefficient {} with |W| = {} at {}", c, w, cat.at(h).label));
      ++checked;
    }
  }
  if (o.pass) o.detail = fmt::format("10 involutions, {} leading coefficients", checked);
  return o;
}

Outcome ordering() {
  Outcome o;
  auto set = critical_set(reference_alphas(), 3.0);
  const std::vector<std::string> want = {"0,1", "7*,1", "4,1", "7,1", "0,2", "8,1", "7*,2", "4,2"};
  std::string got;
  for (std::size_t i = 0; i < want.size() && i < set.size(); ++i) {
    std::string x = set[i].j + "," + std::to_string(set[i].l);
    got += (i ? " < " : "") + x;
    o.require(x == want[i], fmt::format("position {} holds {}", i + 1, x));
  }
  o.require(set.size() >= want.size(), "fewer than eight critical numbers");
  if (o.pass) o.detail = got;
  return o;
}

// Each printed label must match exactly one maximal class, with the printed coefficient.
void match_display(Outcome& o, const BifurcationReport& r, const std::vector<std::pair<std::string, long long>>& display,
                   const std::string& j) {
  auto& cat = O2Catalog::shared();
  o.require(r.maximal_types.size() == display.size(), fmt::format("j = {}: {} maximal types", j, r.maximal_types.size()));
  for (const auto& [label, c] : display) {
    auto t = OrbitTypeO2::parse(label);
    int hits = 0;
    for (const auto& m : r.maximal_types) {
      if (!t.matches(cat.rep(m.cls), 1)) continue;
      ++hits;
      o.require(m.coeff == c, fmt::format("j = {}: {} has {}", j, label, m.coeff));
    }
    o.require(hits == 1, fmt::format("j = {}: {} matched {} classes", j, label, hits));
  }
  for (const auto& m : r.maximal_types) o.require(std::abs(m.coeff) == 1 || std::abs(m.coeff) == 2, "coefficient range");
  o.require(r.invariant.has_value() && r.paths_agree, "j = " + j + ": full product disagrees with the local path");
}

Outcome invariants() {
  Outcome o;
  auto r0 = bifurcation_invariant("0");
  o.require(r0.invariant && format(*r0.invariant) == "-(D_1 x S_4^p)", "j = 0 invariant");
  o.require(r0.paths_agree, "j = 0 paths");
  match_display(o, bifurcation_invariant("4"),
                {{"D_2^{D_1} x^{V_4^p} D_4^p", -1}, {"D_1 x D_4^p", 1}, {"D_3^{Z_1} x^{V_4^p}_{D_3} S_4^p", -2}}, "4");
  match_display(o, bifurcation_invariant("7*"),
                {{"D_6^{Z_1} x_{D_3^p} D_3^p", -2},
                 {"D_4^{Z_1} x^{Z_2^-} D_4^p", -2},
                 {"D_2^{D_1} x^{D_2^d} D_2^p", -1},
                 {"D_2^{D_1} x^{D_3^z} D_3^p", -1},
                 {"D_2^{D_1} x^{D_4^z} D_4^p", -1}},
                "7*");
  Census c = maximal_symmetry_census();
  o.require(c.distinct_labels.size() == 16, fmt::format("census has {} types", c.distinct_labels.size()));
  std::set<std::string> modes;
  for (const auto& t : mode_types()) modes.insert(shape_label(describe(t.group())));
  o.require(modes == std::set<std::string>(c.distinct_labels.begin(), c.distinct_labels.end()),
            "census differs from the mode types");
  if (o.pass) o.detail = "j = 0, 4, 7* as displayed, 16 maximal types, full product = local path";
  return o;
}

Outcome modes() {
  Outcome o;
  const double eps = 0.05;
  int brakes = 0;
  double lo = 1e300, hi = 0.0;
  for (const auto& t : mode_types()) {
    auto tr = build_mode(t, eps);
    auto own = verify_symmetry(tr, t);
    o.require(own.pass && own.max_residual < kSymmetryRel * eps, t.label + " fails its own symmetry");
    bool other_fails = false;
    for (const auto& u : mode_types()) {
      if (&u != &t && !verify_symmetry(tr, u).pass) other_fails = true;
    }
    o.require(other_fails, t.label + " passes every other type");
    double r2 = nonlinear_residual(build_mode(t, 1e-2));
    double r3 = nonlinear_residual(build_mode(t, 1e-3));
    double r4 = nonlinear_residual(build_mode(t, 1e-4));
    for (double ratio : {r2 / r3, r3 / r4}) {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      o.require(ratio >= kRatioLow && ratio <= kRatioHigh, fmt::format("{} residual ratio {:.1f}", t.label, ratio));
    }
    if (t.brake) {
      ++brakes;
      o.require(brake_check(tr).pass, t.label + " brake check");
    }
  }
  if (o.pass) o.detail = fmt::format("16 types, ratios in [{:.1f}, {:.1f}], {} brake modes", lo, hi, brakes);
  return o;
}

std::string run(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  if (status != 0) out += fmt::format("\n<exit status {}>", status);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& exe) {
  Outcome o;
  if (exe.empty()) {
    o.require(false, "no executable given");
    return o;
  }
  const std::vector<std::string> commands = {"--json equilibrium", "--json spectrum", "--json critical --max 3",
                                             "--json invariant --j 4", "invariant --j 7*", "--catalog-dump"};
  for (const auto& c : commands) {
    std::string a = run("'" + exe + "' " + c), b = run("'" + exe + "' " + c);
    o.require(!a.empty() && a == b, "output of '" + c + "' differs");
  }
  auto base = std::filesystem::temp_directory_path() / fmt::format("octa_acceptance_{}", ::getpid());
  std::array<std::string, 2> stdout_runs;
  for (int i = 0; i < 2; ++i) {
    auto dir = base / std::to_string(i);
    stdout_runs[i] = run("'" + exe + "' modes --j 9 --k 4 --out '" + dir.string() + "'");
  }
  for (const auto& name : {"mode_j9_k4.csv", "mode_j9_k4.json"}) {
    std::string a = slurp(base / "0" / name), b = slurp(base / "1" / name);
    o.require(!a.empty() && a == b, std::string(name) + " differs");
  }
  std::filesystem::remove_all(base);
  if (o.pass) o.detail = fmt::format("{} commands and two mode files byte-identical", commands.size());
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"equilibrium", equilibrium},
      {"spectrum", spectrum},
      {"isotypic decomposition", decomposition},
      {"subgroup catalog and products", catalog},
      {"involution and leading coefficients", involution},
      {"critical ordering", ordering},
      {"bifurcation invariants", invariants},
      {"modes", modes},
      {"determinism", [&] { return determinism(exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
