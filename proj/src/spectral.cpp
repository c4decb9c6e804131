#include "octa/spectral.hpp"

#include <cmath>

#include "octa/errors.hpp"

namespace octa {

StiffnessCoefficients StiffnessCoefficients::at_radius(const PotentialParams& p, double r) {
  double q = r * r;
  return {d2u1(p, 2.0 * q), d2u1(p, 4.0 * q), d2u2(q), du1(p, 4.0 * q), du1(p, 2.0 * q)};
}

double StiffnessCoefficients::rho() const {
  double s = 36 * a * a + 4 * a * c + c * c + 36 * a * e + 2 * c * e + 9 * e * e;
  if (s < 0.0) throw DomainError("negative radicand in rho; coefficients are not from an equilibrium");
  return std::sqrt(s);
}

const Eigenspace& SpectrumReport::find(const std::string& j) const {
  for (const auto& s : spaces) {
    if (s.j == j) return s;
  }
  throw DomainError("no eigenspace labeled " + j);
}

int SpectrumReport::total_multiplicity() const {
  int n = 0;
  for (const auto& s : spaces) n += s.multiplicity;
  return n;
}

const std::vector<std::string>& spectral_labels() {
  static const std::vector<std::string> labels = {"0", "4", "6", "7", "7*", "8", "9"};
  return labels;
}

SpectrumReport closed_form_spectrum(const StiffnessCoefficients& k) {
  double rho = k.rho();
  double base = 6 * k.a + k.c - 2 * k.d - k.e;
  SpectrumReport r;
  r.spaces = {
      {"0", 2 * (8 * k.a + 8 * k.b + k.c), 1, {}},
      {"4", 2 * (2 * k.a + 8 * k.b + k.c), 2, {}},
      {"6", 0.0, 3, {}},
      {"7", base - rho, 3, {}},
      {"7*", base + rho, 3, {}},
      {"8", 8 * k.a, 3, {}},
      {"9", 2 * (2 * k.a - k.d + k.e), 3, {}},
  };
  return r;
}

Mat18 block_hessian(const StiffnessCoefficients& k) {
  const auto& p = octahedron_vertices();
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  Mat18 m = Mat18::Zero();
  for (int j = 0; j < 6; ++j) {
    Eigen::Matrix3d diag = 2 * k.c * p[j] * p[j].transpose() - k.d * id;
    for (int l = 0; l < 6; ++l) {
      if (l == j) continue;
      Vec3 x = p[j] - p[l];
      Eigen::Matrix3d mjl = x * x.transpose();
      bool opposite = (p[j] + p[l]).squaredNorm() == 0.0;
      if (opposite) {
        m.block<3, 3>(3 * j, 3 * l) = -2 * k.b * mjl - k.d * id;
        diag += 2 * k.b * mjl;
      } else {
        m.block<3, 3>(3 * j, 3 * l) = -2 * k.a * mjl - k.e * id;
        diag += 2 * k.a * mjl;
      }
    }
    m.block<3, 3>(3 * j, 3 * j) = diag;
  }
  return m;
}

SpectrumReport numeric_spectrum(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw ShapeError("matrix is not square");
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) throw ShapeError("matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
  const Eigen::VectorXd& w = es.eigenvalues();
  const Eigen::MatrixXd& v = es.eigenvectors();
  double top = std::max(w.cwiseAbs().maxCoeff(), 1e-300);
  SpectrumReport r;
  int n = static_cast<int>(w.size());
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && w(j) - w(j - 1) <= 1e-6 * top) ++j;
    Eigenspace s;
    s.alpha_sq = w.segment(i, j - i).mean();
    s.multiplicity = j - i;
    s.basis = v.middleCols(i, j - i);
    r.spaces.push_back(std::move(s));
    i = j;
  }
  return r;
}

const std::array<std::array<int, OctahedralGroup::kClasses>, 10>& character_table() {
  static const std::array<std::array<int, OctahedralGroup::kClasses>, 10> t = {{
      {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {1, -1, 1, -1, 1, -1, 1, -1, 1, -1},
      {1, 1, -1, -1, 1, 1, 1, 1, -1, -1},
      {1, -1, -1, 1, 1, -1, 1, -1, -1, 1},
      {2, 2, 0, 0, 2, 2, -1, -1, 0, 0},
      {2, -2, 0, 0, 2, -2, -1, 1, 0, 0},
      {3, 3, -1, -1, -1, -1, 0, 0, 1, 1},
      {3, -3, -1, 1, -1, 1, 0, 0, 1, -1},
      {3, 3, 1, 1, -1, -1, 0, 0, -1, -1},
      {3, -3, 1, -1, -1, 1, 0, 0, -1, 1},
  }};
  return t;
}

std::array<int, 10> isotypic_multiplicities(const Character& chi) {
  const auto& sizes = OctahedralGroup::class_sizes();
  int total = 0;
  for (int s : sizes) total += s;
  if (total != OctahedralGroup::kOrder) throw ConsistencyPanic("class sizes do not sum to the group order");
  std::array<int, 10> m{};
  for (int j = 0; j < 10; ++j) {
    double s = 0.0;
    for (int c = 0; c < OctahedralGroup::kClasses; ++c) s += sizes[c] * chi[c] * character_table()[j][c];
    s /= total;
    long r = std::lround(s);
    if (std::abs(s - r) > 1e-9 || r < 0)
      throw InvalidCharacter("multiplicity of W_" + std::to_string(j) + " is " + std::to_string(s));
    m[j] = static_cast<int>(r);
  }
  return m;
}

Character restricted_character(const Eigen::MatrixXd& q, const std::vector<Mat18>& action) {
  const auto& G = OctahedralGroup::get();
  Character chi{};
  for (int c = 0; c < OctahedralGroup::kClasses; ++c) {
    const Mat18& a = action[G.class_representative(c)];
    chi[c] = (q.transpose() * a * q).trace();
  }
  return chi;
}

SpectrumReport assign_eigenspaces(const SpectrumReport& s, const std::vector<Mat18>& action) {
  SpectrumReport out = s;
  bool seen7 = false;
  for (auto& e : out.spaces) {
    Character chi = restricted_character(e.basis, action);
    int match = -1;
    for (int j = 0; j < 10 && match < 0; ++j) {
      bool ok = true;
      for (int c = 0; c < OctahedralGroup::kClasses; ++c) ok = ok && std::abs(chi[c] - character_table()[j][c]) < 1e-6;
      if (ok) match = j;
    }
    if (match < 0)
      throw LabelingError("eigenspace at alpha^2 = " + std::to_string(e.alpha_sq) +
                          " carries no irreducible character");
    e.j = std::to_string(match);
    if (match == 7) {
      if (seen7) e.j = "7*";
      seen7 = true;
    }
  }
  return out;
}

Eigen::Matrix<double, 18, 3> tangent_basis() {
  Eigen::Matrix3d j1, j2, j3;
  j1 << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  j2 << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  j3 << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  const Eigen::Matrix3d* js[3] = {&j1, &j2, &j3};
  Eigen::Matrix<double, 18, 3> t;
  const auto& p = octahedron_vertices();
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 6; ++k) t.block<3, 1>(3 * k, i) = (*js[i]) * p[k];
  }
  return t;
}

std::vector<Mat18> octahedral_actions() {
  const auto& G = OctahedralGroup::get();
  std::vector<Mat18> a;
  for (int g = 0; g < OctahedralGroup::kOrder; ++g) a.push_back(G.action(g));
  return a;
}

nlohmann::json to_json(const SpectrumReport& s) {
  nlohmann::json ev = nlohmann::json::array();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& e : s.spaces) {
    ev.push_back({{"j", e.j}, {"alpha_sq", e.alpha_sq}, {"multiplicity", e.multiplicity}});
    for (int c = 0; c < e.basis.cols(); ++c) {
      nlohmann::json col = nlohmann::json::array();
      for (int r = 0; r < e.basis.rows(); ++r) col.push_back(e.basis(r, c));
      basis.push_back(col);
    }
  }
  return {{"eigenvalues", ev}, {"basis", basis}};
}

}  // namespace octa
