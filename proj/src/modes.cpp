#include "octa/modes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "octa/errors.hpp"
#include "octa/group.hpp"

namespace octa {

namespace {

std::string angle_text(const Angle& a) {
  if (a.numerator() == 0) return "";
  Angle h = a * Angle(2);  // multiples of pi
  std::string num = h.numerator() == 1 ? "" : std::to_string(h.numerator());
  std::string out = "e^{i " + num + "pi";
  if (h.denominator() != 1) out += "/" + std::to_string(h.denominator());
  return out + "}";
}

std::string squeeze_label(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 6, "\\times") == 0) {
      out += 'x';
      i += 5;
    } else if (s[i] != ' ') {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

SymmetryRelation make_relation(bool flip, Angle angle, const std::string& vertex_word) {
  const auto& G = OctahedralGroup::get();
  int g = G.from_vertex_word(vertex_word);
  GElement x{flip, reduce_angle(angle), g};
  std::string time = flip ? "kappa" : "";
  std::string rot = angle_text(x.angle);
  if (!rot.empty()) time += time.empty() ? rot : " " + rot;
  if (time.empty()) time = "1";
  std::string space = g == G.identity() ? "1" : format_cycles(std::vector<std::uint8_t>(G.perm(g).begin(), G.perm(g).end()));
  return {x, "(" + time + ", " + space + ")"};
}

ConcreteSubgroupO2 ModeType::group() const {
  std::vector<GElement> gens;
  for (const auto& r : generators) gens.push_back(r.element);
  return ConcreteSubgroupO2::generated(gens);
}

const std::vector<ModeType>& mode_types() {
  static const std::vector<ModeType> types = [] {
    const Angle zero(0), half(1, 2), third(1, 3), quarter(1, 4), sixth(1, 6);
    auto kappa = [&] { return make_relation(true, zero, "()"); };
    auto space = [&](const char* w) { return make_relation(false, zero, w); };
    auto shift = [&](Angle a, const char* w) { return make_relation(false, a, w); };
    auto flip = [&](const char* w) { return make_relation(true, zero, w); };
    std::vector<ModeType> t = {
        {"D_1 x S_4^p", "0", {kappa(), space("(1234)"), space("(146)(253)"), space("(13)(24)(56)")}, true},
        {"D_1 x D_3^p", "8", {kappa(), space("(346)(125)"), space("(14)(23)(56)"), space("(13)(24)(56)")}, true},
        {"D_1 x D_4^p", "4", {kappa(), space("(1234)"), space("(14)(23)(56)"), space("(13)(24)(56)")}, true},
        {"D_2^{D_1} x^{D_2^d} D_2^p", "9",
         {kappa(), space("(14)(23)(56)"), space("(56)"), shift(half, "(12)(34)(56)")}, true},
        {"D_2^{D_1} x^{D_1^p} D_2^p", "8",
         {kappa(), space("(14)(23)(56)"), space("(13)(24)(56)"), shift(half, "(13)(24)")}, true},
        {"D_2^{D_1} x^{D_3^z} D_3^p", "7*",
         {kappa(), space("(346)(125)"), space("(12)(34)"), shift(half, "(13)(24)(56)")}, true},
        {"D_2^{D_1} x^{D_3} D_3^p", "9",
         {kappa(), space("(346)(125)"), space("(14)(23)(56)"), shift(half, "(13)(24)(56)")}, true},
        {"D_2^{D_1} x^{D_4^z} D_4^p", "7*", {kappa(), space("(12)(34)"), space("(1234)"), shift(half, "(13)(56)")}, true},
        {"D_2^{D_1} x^{V_4^p} D_4^p", "4",
         {kappa(), space("(24)(56)"), space("(13)(56)"), space("(13)(24)(56)"), shift(half, "(14)(23)(56)")}, true},
        {"D_2^{D_1} x^{D_4^d} D_4^p", "9",
         {kappa(), space("(14)(23)(56)"), space("(24)"), space("(13)(24)"), shift(half, "(13)(56)")}, true},
        {"D_2^{D_1} x^{D_2^p} D_4^p", "8",
         {kappa(), space("(14)(23)(56)"), space("(13)(24)"), space("(13)(24)(56)"), shift(half, "(13)(56)")}, true},
        {"D_6^{Z_1} x_{D_3^p} D_3^p", "9", {shift(sixth, "(145326)"), flip("(14)(23)(56)")}, false},
        {"D_4^{Z_1} x^{Z_2^-} D_4^p", "9", {shift(quarter, "(1234)"), flip("(14)(23)(56)"), space("(56)")}, false},
        {"D_3^{Z_1} x_{D_3}^{V_4^p} S_4^p", "4",
         {shift(third, "(346)(125)"), flip("(14)(23)(56)"), space("(24)(56)"), space("(13)(56)"),
          space("(13)(24)(56)")},
         false},
        {"D_3^{Z_1} x_{D_3} D_3^p", "8", {shift(third, "(346)(125)"), flip("(14)(23)(56)"), space("(13)(24)(56)")},
         false},
        {"D_4^{Z_1} x_{D_4} D_4^p", "8", {shift(quarter, "(1234)"), flip("(14)(23)(56)"), space("(13)(24)(56)")},
         false},
    };
    return t;
  }();
  return types;
}

const ModeType& mode_type(const std::string& label) {
  std::string key = squeeze_label(label);
  for (const auto& t : mode_types()) {
    if (squeeze_label(t.label) == key) return t;
  }
  auto& cat = O2Catalog::shared();
  for (const auto& t : mode_types()) {
    if (squeeze_label(cat.label(cat.find(t.group()))) == key) return t;
  }
  throw DomainError("unknown mode type '" + label + "'");
}

namespace {

// Classes of the mode groups, computed once.
const std::vector<int>& mode_classes() {
  static const std::vector<int> classes = [] {
    std::vector<int> c;
    for (const auto& t : mode_types()) c.push_back(O2Catalog::shared().find(t.group()));
    return c;
  }();
  return classes;
}

}  // namespace

std::vector<const ModeType*> mode_types_for(const std::string& j) {
  if (j == "6") return {};
  std::vector<int> maximal = computed_maximal_types(j, 1);
  std::vector<const ModeType*> out;
  const auto& classes = mode_classes();
  for (std::size_t i = 0; i < mode_types().size(); ++i) {
    if (std::find(maximal.begin(), maximal.end(), classes[i]) != maximal.end()) out.push_back(&mode_types()[i]);
  }
  return out;
}

ModalSpectrum modal_spectrum(const PotentialParams& p) {
  ModalSpectrum m;
  m.equilibrium = find_equilibrium(p);
  m.hessian = hessian(p, m.equilibrium.v0);
  m.spaces = assign_eigenspaces(numeric_spectrum(m.hessian), octahedral_actions());
  return m;
}

Config ModeTrajectory::at(double time) const { return v0 + epsilon * (std::cos(time) * a + std::sin(time) * b); }

Config ModeTrajectory::acceleration(double time) const {
  return -epsilon * (std::cos(time) * a + std::sin(time) * b);
}

Eigen::MatrixXd fixed_coordinates(const Eigen::MatrixXd& q, const std::vector<GElement>& gens) {
  int d = static_cast<int>(q.cols());
  Eigen::MatrixXd stack(2 * d * static_cast<int>(gens.size()), 2 * d);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    stack.middleRows(2 * d * i, 2 * d) = mode_matrix(q, 1, gens[i]) - Eigen::MatrixXd::Identity(2 * d, 2 * d);
  }
  if (gens.empty()) return Eigen::MatrixXd::Identity(2 * d, 2 * d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) rank += s(i) > 1e-9;
  return svd.matrixV().rightCols(2 * d - rank);
}

namespace {

// Each atom moves by at most eps * reach, so no pair, and no atom and the center, can meet
// while 2 eps reach stays below the smallest gap at v0.
double smallest_gap(const Config& v) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    gap = std::min(gap, atom(v, i).norm());
    for (int k = i + 1; k < 6; ++k) gap = std::min(gap, (atom(v, i) - atom(v, k)).norm());
  }
  return gap;
}

double safe_amplitude(const Config& v0, const Config& a, const Config& b) {
  double gap = smallest_gap(v0);
  double reach = 0.0;
  for (int i = 0; i < 6; ++i) reach = std::max(reach, std::hypot(atom(a, i).norm(), atom(b, i).norm()));
  return reach > 0.0 ? gap / (2.0 * reach) : std::numeric_limits<double>::infinity();
}

int type_rank(const std::string& j, const ModeType& type) {
  auto list = mode_types_for(j);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == &type) return static_cast<int>(i) + 1;
  }
  return 0;
}

ModeTrajectory build_in(const std::string& j, const ModeType& type, int k, double epsilon, int n_samples,
                        const PotentialParams& p) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (n_samples < 8) throw DomainError("at least 8 samples are required");
  ModalSpectrum m = modal_spectrum(p);
  const Eigenspace& e = m.spaces.find(j);
  if (!(e.alpha_sq > 0.0)) throw DomainError("eigenspace " + j + " has no positive eigenvalue");
  std::vector<GElement> gens;
  for (const auto& r : type.generators) gens.push_back(r.element);
  Eigen::MatrixXd fix = fixed_coordinates(e.basis, gens);
  if (fix.cols() == 0) throw DomainError("type " + type.label + " fixes no vector of W_" + j);
  Eigen::VectorXd c = fix.col(0);
  Eigen::Index top = 0;
  c.cwiseAbs().maxCoeff(&top);
  if (c(top) < 0) c = -c;
  c.normalize();
  int d = e.multiplicity;

  ModeTrajectory tr;
  tr.j = j;
  tr.k = k;
  tr.symmetry = type.label;
  tr.epsilon = epsilon;
  tr.mu = e.alpha_sq;
  tr.lambda = 1.0 / std::sqrt(e.alpha_sq);
  tr.v0 = m.equilibrium.v0;
  tr.a = e.basis * c.head(d);
  tr.b = e.basis * c.tail(d);
  tr.safe_epsilon = safe_amplitude(tr.v0, tr.a, tr.b);
  const double gap0 = smallest_gap(tr.v0);
  for (int i = 0; i < n_samples; ++i) {
    double time = 2.0 * M_PI * i / n_samples;
    Config u = tr.at(time);
    // Gaps at rounding level of the equilibrium gap count as collisions.
    if (smallest_gap(u) <= 1e-9 * gap0)
      throw AmplitudeError("epsilon " + fmt::format("{:.6g}", epsilon) + " collides at t = " + fmt::format("{:.6g}", time));
    tr.t.push_back(time);
    tr.samples.push_back(u);
  }
  return tr;
}

}  // namespace

ModeTrajectory build_mode(const std::string& j, int k, double epsilon, int n_samples, const PotentialParams& p) {
  auto list = mode_types_for(j);
  if (k < 1 || k > static_cast<int>(list.size()))
    throw DomainError("no mode " + std::to_string(k) + " for W_" + j + " (" + std::to_string(list.size()) +
                      " available)");
  return build_in(j, *list[k - 1], k, epsilon, n_samples, p);
}

ModeTrajectory build_mode(const ModeType& type, double epsilon, int n_samples, const PotentialParams& p) {
  return build_in(type.j, type, type_rank(type.j, type), epsilon, n_samples, p);
}

SymmetryReport verify_symmetry(const ModeTrajectory& traj, const ModeType& type) {
  const auto& G = OctahedralGroup::get();
  int n = static_cast<int>(traj.samples.size());
  SymmetryReport rep;
  rep.label = type.label;
  rep.pass = true;
  for (const auto& r : type.generators) {
    Angle steps = r.element.angle * Angle(n);
    if (steps.denominator() != 1)
      throw SamplingError("shift of " + r.text + " does not land on the " + std::to_string(n) + "-point grid");
    long long s = steps.numerator();
    Mat18 m = G.action(r.element.g);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      long long src = ((r.element.flip ? -i : i) + s) % n;
      if (src < 0) src += n;
      worst = std::max(worst, (traj.samples[i] - m * traj.samples[src]).norm());
    }
    bool ok = worst <= 1e-9 * traj.epsilon;
    rep.generators.push_back({r.text, worst, ok});
    rep.max_residual = std::max(rep.max_residual, worst);
    rep.pass = rep.pass && ok;
  }
  return rep;
}

SymmetryReport verify_symmetry(const ModeTrajectory& traj, const std::string& label) {
  return verify_symmetry(traj, mode_type(label));
}

BrakeCheck brake_check(const ModeTrajectory& traj) {
  int n = static_cast<int>(traj.samples.size());
  if (n % 2 != 0) throw SamplingError("t = pi is not a sample point");
  double h = 2.0 * M_PI / n;
  auto velocity = [&](int i) {
    const Config& next = traj.samples[(i + 1) % n];
    const Config& prev = traj.samples[(i + n - 1) % n];
    return ((next - prev) / (2.0 * h)).norm();
  };
  BrakeCheck c;
  c.velocity_0 = velocity(0);
  c.velocity_pi = velocity(n / 2);
  c.pass = std::max(c.velocity_0, c.velocity_pi) <= 1e-9 * traj.epsilon;
  return c;
}

double nonlinear_residual(const ModeTrajectory& traj, const PotentialParams& p) {
  double worst = 0.0;
  double l2 = traj.lambda * traj.lambda;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    Config r = traj.acceleration(traj.t[i]) + l2 * gradient(p, traj.samples[i]);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

void export_trajectory(const ModeTrajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "t";
  for (int i = 1; i <= 6; ++i) out << ",x" << i << ",y" << i << ",z" << i;
  out << "\n";
  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    out << fmt::format("{:.17g}", traj.t[s]);
    for (int c = 0; c < 18; ++c) out << fmt::format(",{:.17g}", traj.samples[s](c));
    out << "\n";
  }
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

TrajectorySamples import_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  TrajectorySamples out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 19) throw std::runtime_error(path + ":" + std::to_string(row) + ": expected 19 columns");
    out.t.push_back(vals[0]);
    Config u;
    for (int c = 0; c < 18; ++c) u(c) = vals[c + 1];
    out.samples.push_back(u);
  }
  return out;
}

nlohmann::json mode_manifest(const ModeTrajectory& traj, const SymmetryReport& report) {
  nlohmann::json j;
  j["j"] = traj.j;
  j["k"] = traj.k;
  j["alpha"] = std::sqrt(traj.mu);
  j["lambda"] = traj.lambda;
  j["epsilon"] = traj.epsilon;
  j["safe_epsilon"] = traj.safe_epsilon;
  j["samples"] = traj.samples.size();
  j["symmetry"] = traj.symmetry;
  j["verified"] = report.pass;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : report.generators) {
    if (g.pass) gens.push_back(g.text);
  }
  j["verified_generators"] = gens;
  j["max_residual"] = report.max_residual;
  return j;
}

namespace {

struct PrintedVector {
  const char* j;
  int k;
  std::array<double, 18> v;
};

// Eigenvectors at 1.41278 p0 as printed, 3 to 4 significant digits.
const std::vector<PrintedVector>& printed_vectors() {
  static const std::vector<PrintedVector> t = {
      {"0", 1, {0.408, 0, 0, 0, 0.408, 0, -0.408, 0, 0, 0, -0.408, 0, 0, 0, 0.408, 0, 0, -0.408}},
      {"4", 1, {0.2887, 0, 0, 0, 0.2887, 0, -0.2887, 0, 0, 0, -0.2887, 0, 0, 0, -0.577, 0, 0, 0.577}},
      {"4", 2, {0.5, 0, 0, 0, -0.5, 0, -0.5, 0, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0}},
      {"7", 1, {0.0182, -0.0376, -0.485, -0.0919, 0.0074, -0.485, 0.0182, -0.0376, -0.485, -0.0919, 0.0074, -0.485,
                -0.0919, -0.0376, 0.0959, -0.0919, -0.0376, 0.0959}},
      {"7", 2, {0.006791, -0.492, 0.0446, -0.0343, 0.0973, 0.0446, 0.006791, -0.492, 0.0446, -0.0343, 0.0973, 0.0446,
                -0.0343, -0.492, -0.0088, -0.0343, -0.492, -0.0088}},
      {"7", 3, {0.096, 0.0419, 0.0888, -0.485, -0.0083, 0.0888, 0.096, 0.0419, 0.0888, -0.485, -0.0083, 0.0888,
                -0.485, 0.0419, -0.0176, -0.485, 0.0419, -0.0176}},
      {"7*", 1, {0.00739, 0.00042, 0.0693, 0.000731, 0.00427, 0.0693, 0.00739, 0.00042, 0.0693, 0.000731, 0.00427,
                 0.0693, 0.000731, 0.00042, 0.7002, 0.000731, 0.00042, 0.7002}},
      {"7*", 2, {-0.599, -0.0358, 0.00084, -0.0593, -0.362, 0.00084, -0.599, -0.0358, 0.00084, -0.0593, -0.362,
                 0.00084, -0.0593, -0.0358, 0.0085, -0.0593, -0.0358, 0.00854}},
      {"7*", 3, {0.362, -0.0593, -0.000016, 0.0358, -0.599, -0.000016, 0.362, -0.0593, -0.000016, 0.0358, -0.599,
                 -0.000016, 0.0358, -0.0593, -0.000167, 0.0358, -0.0593, -0.000167}},
      {"8", 1, {0, 0.4068, 0.166, 0.4068, 0, -0.239, 0, -0.4068, -0.166, -0.4068, 0, 0.239, 0.166, -0.239, 0, -0.166,
                0.239, 0}},
      {"8", 2, {0, 0.291, -0.222, 0.291, 0, 0.341, 0, -0.291, 0.222, -0.291, 0, -0.341, -0.222, 0.341, 0, 0.222,
                -0.341, 0}},
      {"8", 3, {0, -0.00699, 0.416, -0.00699, 0, 0.2772, 0, 0.00699, -0.416, 0.00699, 0, -0.2772, 0.416, 0.2772, 0,
                -0.416, -0.2772, 0}},
      {"9", 1, {0, -0.1726, 0.266, -0.3865, 0, -0.266, 0, -0.1726, 0.266, -0.3865, 0, -0.266, 0.3865, 0.1726, 0,
                0.3865, 0.1726, 0}},
      {"9", 2, {0, 0.06195, 0.4212, 0.2622, 0, -0.4212, 0, 0.06195, 0.4212, 0.2622, 0, -0.4212, -0.2622, -0.06195, 0,
                -0.2622, -0.06195, 0}},
      {"9", 3, {0, -0.465, -0.0426, 0.1784, 0, 0.0426, 0, -0.465, -0.0426, 0.1784, 0, 0.0426, -0.1784, 0.465, 0,
                -0.1784, 0.465, 0}},
  };
  return t;
}

}  // namespace

std::vector<TableOverlap> table_overlaps(const PotentialParams& p) {
  ModalSpectrum m = modal_spectrum(p);
  std::vector<TableOverlap> out;
  std::map<std::string, std::vector<Config>> groups;
  for (const auto& pv : printed_vectors()) {
    Config v = Eigen::Map<const Config>(pv.v.data());
    groups[pv.j].push_back(v);
    TableOverlap o;
    o.j = pv.j;
    o.k = pv.k;
    double best = -1.0;
    for (const auto& e : m.spaces.spaces) {
      double ov = (e.basis.transpose() * v).norm() / v.norm();
      if (e.j == o.j) o.overlap = ov;
      if (ov > best) {
        best = ov;
        o.best = e.j;
      }
    }
    out.push_back(o);
  }
  // Residuals after Gram-Schmidt within each printed group.
  for (auto& [j, vs] : groups) {
    Eigen::MatrixXd a(18, vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) a.col(i) = vs[i];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(18, vs.size());
    for (auto& o : out) {
      if (o.j != j) continue;
      Config w = q.col(o.k - 1);
      o.residual = (m.hessian * w - w.dot(m.hessian * w) * w).norm();
    }
  }
  return out;
}

}  // namespace octa
