#include "octa/force_field.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "octa/errors.hpp"

namespace octa {

const std::array<Vec3, 6>& octahedron_vertices() {
  static const std::array<Vec3, 6> p = {Vec3(1, 0, 0),  Vec3(0, 1, 0), Vec3(-1, 0, 0),
                                        Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
  return p;
}

Config octahedron(double r) {
  Config v;
  const auto& p = octahedron_vertices();
  for (int j = 0; j < 6; ++j) v.segment<3>(3 * j) = r * p[j];
  return v;
}

double u1(const PotentialParams& p, double q) {
  return p.sigma1 * std::pow(q, -6.0) - p.sigma2 * std::pow(q, -3.0) + p.sigma3 / std::sqrt(q);
}

double du1(const PotentialParams& p, double q) {
  return -6.0 * p.sigma1 * std::pow(q, -7.0) + 3.0 * p.sigma2 * std::pow(q, -4.0) -
         0.5 * p.sigma3 * std::pow(q, -1.5);
}

double d2u1(const PotentialParams& p, double q) {
  return 42.0 * p.sigma1 * std::pow(q, -8.0) - 12.0 * p.sigma2 * std::pow(q, -5.0) +
         0.75 * p.sigma3 * std::pow(q, -2.5);
}

double u2(double q) {
  double s = std::sqrt(q) - 1.0;
  return s * s;
}

double du2(double q) { return 1.0 - 1.0 / std::sqrt(q); }

double d2u2(double q) { return 0.5 * std::pow(q, -1.5); }

void check_admissible(const Config& v) {
  for (int j = 0; j < 6; ++j) {
    if (atom(v, j).squaredNorm() == 0.0)
      throw DomainError("atom " + std::to_string(j + 1) + " sits at the central atom");
    for (int k = j + 1; k < 6; ++k) {
      if ((atom(v, j) - atom(v, k)).squaredNorm() == 0.0)
        throw DomainError("collision between atoms " + std::to_string(j + 1) + " and " +
                          std::to_string(k + 1));
    }
  }
}

double potential(const PotentialParams& p, const Config& v) {
  check_admissible(v);
  double e = 0.0;
  for (int j = 0; j < 6; ++j) {
    for (int k = j + 1; k < 6; ++k) e += u1(p, (atom(v, j) - atom(v, k)).squaredNorm());
    e += u2(atom(v, j).squaredNorm());
  }
  return e;
}

Config gradient(const PotentialParams& p, const Config& v) {
  check_admissible(v);
  Config g = Config::Zero();
  for (int j = 0; j < 6; ++j) {
    for (int k = j + 1; k < 6; ++k) {
      Vec3 x = atom(v, j) - atom(v, k);
      Vec3 f = 2.0 * du1(p, x.squaredNorm()) * x;
      g.segment<3>(3 * j) += f;
      g.segment<3>(3 * k) -= f;
    }
    Vec3 x = atom(v, j);
    g.segment<3>(3 * j) += 2.0 * du2(x.squaredNorm()) * x;
  }
  return g;
}

Mat18 hessian(const PotentialParams& p, const Config& v) {
  check_admissible(v);
  Mat18 h = Mat18::Zero();
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  for (int j = 0; j < 6; ++j) {
    for (int k = j + 1; k < 6; ++k) {
      Vec3 x = atom(v, j) - atom(v, k);
      double q = x.squaredNorm();
      Eigen::Matrix3d b = 2.0 * du1(p, q) * id + 4.0 * d2u1(p, q) * x * x.transpose();
      h.block<3, 3>(3 * j, 3 * j) += b;
      h.block<3, 3>(3 * k, 3 * k) += b;
      h.block<3, 3>(3 * j, 3 * k) -= b;
      h.block<3, 3>(3 * k, 3 * j) -= b;
    }
    Vec3 x = atom(v, j);
    double q = x.squaredNorm();
    h.block<3, 3>(3 * j, 3 * j) += 2.0 * du2(q) * id + 4.0 * d2u2(q) * x * x.transpose();
  }
  return h;
}

double radial_energy(const PotentialParams& p, double r) {
  double q = r * r;
  return 12.0 * u1(p, 2.0 * q) + 3.0 * u1(p, 4.0 * q) + 6.0 * u2(q);
}

double critical_radius_residual(const PotentialParams& p, double r) {
  double q = r * r;
  return 4.0 * du1(p, 2.0 * q) + 2.0 * du1(p, 4.0 * q) + du2(q);
}

double radial_slope(const PotentialParams& p, double r) {
  return 12.0 * r * critical_radius_residual(p, r);
}

double radial_curvature(const PotentialParams& p, double r) {
  double q = r * r;
  double s = critical_radius_residual(p, r);
  double ds = 2.0 * r * (8.0 * d2u1(p, 2.0 * q) + 8.0 * d2u1(p, 4.0 * q) + d2u2(q));
  return 12.0 * s + 12.0 * r * ds;
}

Equilibrium find_equilibrium(const PotentialParams& p) {
  constexpr double lo = 1e-3, hi = 1e3;
  constexpr int n = 4000;
  const double step = std::log(hi / lo) / n;

  // Every descending-to-ascending crossing of the slope brackets a local minimum; keep the lowest.
  double best_a = 0.0, best_b = 0.0, best_e = std::numeric_limits<double>::infinity();
  double ra = lo, sa = radial_slope(p, lo);
  for (int i = 1; i <= n; ++i) {
    double rb = lo * std::exp(step * i);
    double sb = radial_slope(p, rb);
    if (sa < 0.0 && sb >= 0.0) {
      double e = radial_energy(p, rb);
      if (e < best_e) {
        best_e = e;
        best_a = ra;
        best_b = rb;
      }
    }
    ra = rb;
    sa = sb;
  }
  if (!std::isfinite(best_e)) throw SearchFailure("no minimizer of the radial energy in (1e-3, 1e3)");

  double a = best_a, b = best_b;
  while (b - a > 1e-12 * b) {
    double m = 0.5 * (a + b);
    if (radial_slope(p, m) < 0.0)
      a = m;
    else
      b = m;
  }
  double r = 0.5 * (a + b);
  double curv = radial_curvature(p, r);
  if (curv > 0.0) {
    double polished = r - radial_slope(p, r) / curv;
    if (polished > a - (b - a) && polished < b + (b - a)) r = polished;
  }

  Equilibrium eq;
  eq.r0 = r;
  eq.v0 = octahedron(r);
  eq.slope = radial_slope(p, r);
  eq.curvature = radial_curvature(p, r);
  eq.residual = critical_radius_residual(p, r);
  return eq;
}

}  // namespace octa
