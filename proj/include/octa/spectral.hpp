#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "octa/force_field.hpp"
#include "octa/group.hpp"

namespace octa {

// Derivatives of the pair and bond potentials at the octahedral radius:
// a = U1''(2r^2), b = U1''(4r^2), c = U2''(r^2), d = U1'(4r^2), e = U1'(2r^2).
struct StiffnessCoefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;

  static StiffnessCoefficients at_radius(const PotentialParams& p, double r);
  // Throws DomainError on a negative radicand.
  double rho() const;
};

struct Eigenspace {
  std::string j;  // irreducible label: "0","4","6","7","7*","8","9"; empty before labeling
  double alpha_sq = 0.0;
  int multiplicity = 0;
  Eigen::MatrixXd basis;  // 18 x multiplicity, orthonormal columns; empty for closed forms
};

struct SpectrumReport {
  std::vector<Eigenspace> spaces;

  const Eigenspace& find(const std::string& j) const;
  int total_multiplicity() const;
};

// Irreducible labels of the slice and tangent blocks, in table order.
const std::vector<std::string>& spectral_labels();

// Closed forms of the seven eigenvalues of the block matrix.
SpectrumReport closed_form_spectrum(const StiffnessCoefficients& k);

// The 6x6 block matrix with P_jk = -2a m_jk - e Id (adjacent), -2b m_jk - d Id (opposite) and the
// diagonal 2a sum m + 2b m + 2c m_j0 - d Id, where m_jk = (p_j - p_k)(p_j - p_k)^T on unit vertices.
Mat18 block_hessian(const StiffnessCoefficients& k);

// Ascending eigenvalues grouped into clusters with relative gap 1e-6.
SpectrumReport numeric_spectrum(const Eigen::MatrixXd& h);

using Character = std::array<double, OctahedralGroup::kClasses>;

// Rows chi_0..chi_9 on the classes in OctahedralGroup::class_of order.
const std::array<std::array<int, OctahedralGroup::kClasses>, 10>& character_table();

// m_j = <chi, chi_j>; throws InvalidCharacter when a multiplicity is not a nonnegative integer.
std::array<int, 10> isotypic_multiplicities(const Character& chi);

// Character of the action restricted to the column span of q (action indexed by group element).
Character restricted_character(const Eigen::MatrixXd& q, const std::vector<Mat18>& action);

// Labels each eigenspace by the irreducible its character matches. Two spaces of type 7 become
// "7" (lower eigenvalue) and "7*". Throws LabelingError when a character matches no row.
SpectrumReport assign_eigenspaces(const SpectrumReport& s, const std::vector<Mat18>& action);

// The three rotation generators applied to the unit octahedron.
Eigen::Matrix<double, 18, 3> tangent_basis();

std::vector<Mat18> octahedral_actions();

nlohmann::json to_json(const SpectrumReport& s);

}  // namespace octa
