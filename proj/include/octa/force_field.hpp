#pragma once

#include <array>

#include <Eigen/Dense>

namespace octa {

struct PotentialParams {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
};

// Reference parameters of the SF6 model.
inline constexpr PotentialParams kReferenceParams{0.0618, 0.0618, 1.0};

using Vec3 = Eigen::Vector3d;
using Config = Eigen::Matrix<double, 18, 1>;
using Mat18 = Eigen::Matrix<double, 18, 18>;

// Unit vertices p1..p6: p1=-p3=x, p2=-p4=y, p5=-p6=z.
const std::array<Vec3, 6>& octahedron_vertices();

// r * (p1,...,p6).
Config octahedron(double r);

inline Vec3 atom(const Config& v, int j) { return v.segment<3>(3 * j); }

// Pair potential U1 and bond potential U2, both as functions of squared distance.
double u1(const PotentialParams& p, double q);
double du1(const PotentialParams& p, double q);
double d2u1(const PotentialParams& p, double q);
double u2(double q);
double du2(double q);
double d2u2(double q);

// Throws DomainError naming the first coincident pair or an atom at the center.
void check_admissible(const Config& v);

double potential(const PotentialParams& p, const Config& v);
Config gradient(const PotentialParams& p, const Config& v);
Mat18 hessian(const PotentialParams& p, const Config& v);

// Energy of r*p0 and its derivatives in r.
double radial_energy(const PotentialParams& p, double r);
double radial_slope(const PotentialParams& p, double r);
double radial_curvature(const PotentialParams& p, double r);

// 4U1'(2r^2) + 2U1'(4r^2) + U2'(r^2); zero at the octahedral critical radius.
double critical_radius_residual(const PotentialParams& p, double r);

struct Equilibrium {
  double r0 = 0.0;
  Config v0 = Config::Zero();
  double slope = 0.0;
  double curvature = 0.0;
  double residual = 0.0;
};

// Minimizer of radial_energy on (1e-3, 1e3). Throws SearchFailure when no sign change of the slope exists.
Equilibrium find_equilibrium(const PotentialParams& p);

}  // namespace octa
