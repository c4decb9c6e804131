#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "octa/force_field.hpp"
#include "octa/orbit_o2.hpp"
#include "octa/spectral.hpp"

namespace octa {

// A generator of a symmetry group of a mode, written as (temporal part, vertex permutation).
struct SymmetryRelation {
  GElement element;
  std::string text;  // e.g. "(e^{i pi/3}, (145326))"
};

// kappa^flip e^{2 pi i angle} together with an octahedral vertex word such as "(14)(23)(56)".
SymmetryRelation make_relation(bool flip, Angle angle, const std::string& vertex_word);

// An isotropy type of the linearized modes with explicit generators.
struct ModeType {
  std::string label;  // family label in the grammar of OrbitTypeO2::parse
  std::string j;      // eigenspace the mode is drawn from
  std::vector<SymmetryRelation> generators;
  bool brake = false;  // (kappa, 1) is one of the generators

  ConcreteSubgroupO2 group() const;
};

// The sixteen maximal types of the linearized modes.
const std::vector<ModeType>& mode_types();
// Lookup by printed or catalog label; spacing and "\times" are ignored. Throws DomainError when unknown.
const ModeType& mode_type(const std::string& label);
// Types carried by the eigenspace j, in the order of mode_types(); the same list serves 7 and 7*.
std::vector<const ModeType*> mode_types_for(const std::string& j);

// Eigenspaces of the Hessian at the octahedral equilibrium, labeled by irreducible type.
struct ModalSpectrum {
  Equilibrium equilibrium;
  Mat18 hessian;
  SpectrumReport spaces;
};
ModalSpectrum modal_spectrum(const PotentialParams& p = kReferenceParams);

// u(t) = v0 + epsilon (cos t a + sin t b) with (a, b) a unit vector of Fix(H) in E_j x E_j and
// E_j the Hessian eigenspace of eigenvalue mu; the true period is 2 pi lambda with lambda = 1/sqrt(mu).
struct ModeTrajectory {
  std::string j;
  int k = 1;
  std::string symmetry;
  double epsilon = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  Config v0 = Config::Zero();
  Config a = Config::Zero();
  Config b = Config::Zero();
  // Below this amplitude no two atoms, and no atom and the center, can meet.
  double safe_epsilon = 0.0;
  std::vector<double> t;
  std::vector<Config> samples;

  Config at(double time) const;
  Config acceleration(double time) const;
};

// Mode k (1-based) of mode_types_for(j). Throws DomainError on an unknown (j, k), a negative
// epsilon or fewer than 8 samples, and AmplitudeError when a sample collides.
ModeTrajectory build_mode(const std::string& j, int k, double epsilon, int n_samples = 120,
                          const PotentialParams& p = kReferenceParams);
ModeTrajectory build_mode(const ModeType& type, double epsilon, int n_samples = 120,
                          const PotentialParams& p = kReferenceParams);

// Basis of Fix(H) inside E x E for the stacked coordinates (a, b) of the columns of q.
Eigen::MatrixXd fixed_coordinates(const Eigen::MatrixXd& q, const std::vector<GElement>& gens);

struct GeneratorResidual {
  std::string text;
  double residual = 0.0;
  bool pass = false;
};

struct SymmetryReport {
  std::string label;
  std::vector<GeneratorResidual> generators;
  double max_residual = 0.0;
  bool pass = false;
};

// max over samples of |u(t) - g u(psi(t))| for each generator; pass iff every value is <= 1e-9 epsilon.
// Throws SamplingError when a time shift does not map the sample grid onto itself.
SymmetryReport verify_symmetry(const ModeTrajectory& traj, const ModeType& type);
SymmetryReport verify_symmetry(const ModeTrajectory& traj, const std::string& label);

// Central-difference velocities at t = 0 and t = pi.
struct BrakeCheck {
  double velocity_0 = 0.0;
  double velocity_pi = 0.0;
  bool pass = false;
};
BrakeCheck brake_check(const ModeTrajectory& traj);

// max over samples of |u'' + lambda^2 grad U(u)|.
double nonlinear_residual(const ModeTrajectory& traj, const PotentialParams& p = kReferenceParams);

// CSV with header t,x1,y1,z1,...,x6,y6,z6 at 17 significant digits; I/O failures raise
// std::runtime_error naming the path.
void export_trajectory(const ModeTrajectory& traj, const std::string& path);
struct TrajectorySamples {
  std::vector<double> t;
  std::vector<Config> samples;
};
TrajectorySamples import_trajectory(const std::string& path);

nlohmann::json mode_manifest(const ModeTrajectory& traj, const SymmetryReport& report);

// A printed eigenvector of the Hessian at the equilibrium, compared with the recomputed spaces.
struct TableOverlap {
  std::string j;
  int k = 1;
  std::string best;       // recomputed eigenspace with the largest overlap
  double overlap = 0.0;   // |P v| / |v| for the projector P onto eigenspace j
  double residual = 0.0;  // |H w - w^T H w w| for w the re-orthonormalized printed vector
};
std::vector<TableOverlap> table_overlaps(const PotentialParams& p = kReferenceParams);

}  // namespace octa
