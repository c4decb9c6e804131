#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "octa/errors.hpp"
#include "octa/modes.hpp"

using namespace octa;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("octa_test_" + name)).string();
}

}  // namespace

TEST_CASE("sixteen mode types, each carried by its eigenspace") {
  const auto& types = mode_types();
  CHECK(types.size() == 16);
  std::set<std::string> labels;
  for (const auto& t : types) labels.insert(t.label);
  CHECK(labels.size() == 16);
  CHECK(mode_types_for("0").size() == 1);
  CHECK(mode_types_for("4").size() == 3);
  CHECK(mode_types_for("7").size() == 5);
  CHECK(mode_types_for("7*").size() == 5);
  CHECK(mode_types_for("8").size() == 5);
  CHECK(mode_types_for("9").size() == 5);
  CHECK(&mode_type("D_1 \\times S_4^p") == &mode_type("D_1 x S_4^p"));
  CHECK_THROWS_AS(mode_type("D_7 x S_4^p"), DomainError);
}

TEST_CASE("the generators of each type close to its catalog class") {
  auto& cat = O2Catalog::shared();
  for (const auto& t : mode_types()) {
    auto g = t.group();
    CHECK_MESSAGE(OrbitTypeO2::parse(t.label).matches(g, 1), t.label);
    CHECK(cat.label(cat.find(g)) == shape_label(describe(g)));
  }
}

TEST_CASE("breathing mode") {
  auto tr = build_mode("0", 1, 0.05);
  REQUIRE(tr.samples.size() == 120);
  for (const auto& u : tr.samples) {
    double r = u.segment<3>(0).norm();
    for (int i = 1; i < 6; ++i) CHECK(u.segment<3>(3 * i).norm() == doctest::Approx(r).epsilon(1e-13));
  }
  CHECK(verify_symmetry(tr, "D_1 x S_4^p").pass);
  CHECK(brake_check(tr).pass);
}

TEST_CASE("zero amplitude gives the equilibrium at every sample") {
  auto tr = build_mode("8", 2, 0.0);
  for (const auto& u : tr.samples) CHECK((u - tr.v0).norm() == 0.0);
}

TEST_CASE("the mode is a unit vector of Fix(H) in the Hessian eigenspace") {
  for (const auto& t : mode_types()) {
    auto tr = build_mode(t, 0.01);
    CHECK(std::hypot(tr.a.norm(), tr.b.norm()) == doctest::Approx(1.0).epsilon(1e-12));
    ModalSpectrum m = modal_spectrum();
    CHECK((m.hessian * tr.a - tr.mu * tr.a).norm() < 1e-9);
    CHECK((m.hessian * tr.b - tr.mu * tr.b).norm() < 1e-9);
    CHECK(tr.lambda == doctest::Approx(1.0 / std::sqrt(tr.mu)));
    CHECK((tr.acceleration(0.7) + (tr.at(0.7) - tr.v0)).norm() < 1e-12);
  }
}

TEST_CASE("nonlinear residual scales quadratically") {
  double r2 = nonlinear_residual(build_mode("8", 1, 1e-2));
  double r3 = nonlinear_residual(build_mode("8", 1, 1e-3));
  double r4 = nonlinear_residual(build_mode("8", 1, 1e-4));
  CHECK(r2 / r3 >= 80.0);
  CHECK(r2 / r3 <= 120.0);
  CHECK(r3 / r4 >= 80.0);
  CHECK(r3 / r4 <= 120.0);
}

TEST_CASE("each mode has its own symmetry and not the others") {
  for (const auto& t : mode_types()) {
    auto tr = build_mode(t, 0.05);
    auto own = verify_symmetry(tr, t);
    CHECK_MESSAGE(own.pass, t.label);
    CHECK(own.max_residual <= 1e-9 * 0.05);
    int failed = 0;
    for (const auto& other : mode_types()) {
      if (&other != &t) failed += !verify_symmetry(tr, other).pass;
    }
    CHECK(failed >= 1);
    CHECK(brake_check(tr).pass == t.brake);
  }
  auto r = verify_symmetry(build_mode("8", 1, 0.05), "D_1 x S_4^p");
  CHECK_FALSE(r.pass);
  CHECK(r.max_residual > 1e-3);
}

TEST_CASE("the identity generator has residual zero") {
  ModeType id{"Z_1", "8", {make_relation(false, Angle(0), "()")}, false};
  auto r = verify_symmetry(build_mode("8", 3, 0.05), id);
  REQUIRE(r.generators.size() == 1);
  CHECK(r.generators[0].residual == 0.0);
  CHECK(r.pass);
}

TEST_CASE("time shifts must land on the sample grid") {
  const auto& t = mode_type("D_6^{Z_1} x_{D_3^p} D_3^p");
  CHECK_THROWS_AS(verify_symmetry(build_mode(t, 0.05, 16), t), SamplingError);
  CHECK_NOTHROW(verify_symmetry(build_mode(t, 0.05, 24), t));
  CHECK_THROWS_AS(brake_check(build_mode("0", 1, 0.05, 9)), SamplingError);
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(build_mode("0", 2, 0.05), DomainError);
  CHECK_THROWS_AS(build_mode("0", 0, 0.05), DomainError);
  CHECK_THROWS_AS(build_mode("5", 1, 0.05), DomainError);
  CHECK_THROWS_AS(build_mode("0", 1, -0.1), DomainError);
  CHECK_THROWS_AS(build_mode("0", 1, 0.05, 7), DomainError);
}

TEST_CASE("amplitude limits") {
  auto tr = build_mode("0", 1, 0.05);
  CHECK(tr.safe_epsilon > 0.05);
  // The breathing mode drives every atom through the center at t = pi for this amplitude.
  double through = std::sqrt(6.0) * tr.v0.segment<3>(0).norm();
  CHECK_THROWS_AS(build_mode("0", 1, through), AmplitudeError);
  CHECK_NOTHROW(build_mode("0", 1, 0.99 * tr.safe_epsilon));
}

TEST_CASE("CSV export round trip") {
  auto tr = build_mode("9", 4, 0.05, 60);
  std::string path = temp_path("mode.csv");
  export_trajectory(tr, path);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,x1,y1,z1,x2,y2,z2,x3,y3,z3,x4,y4,z4,x5,y5,z5,x6,y6,z6");
  int rows = 0;
  for (std::string line; std::getline(f, line);) rows += !line.empty();
  CHECK(rows == 60);
  auto back = import_trajectory(path);
  REQUIRE(back.samples.size() == tr.samples.size());
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    CHECK(back.t[i] == tr.t[i]);
    CHECK(back.samples[i] == tr.samples[i]);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(export_trajectory(tr, "/nonexistent/dir/mode.csv"), std::runtime_error);
  CHECK_THROWS_AS(import_trajectory("/nonexistent/mode.csv"), std::runtime_error);
}

TEST_CASE("manifest") {
  auto tr = build_mode("7*", 2, 0.05);
  auto rep = verify_symmetry(tr, tr.symmetry);
  auto m = mode_manifest(tr, rep);
  for (const auto& key : {"j", "k", "alpha", "lambda", "epsilon", "safe_epsilon", "samples", "symmetry", "verified",
                          "verified_generators", "max_residual"})
    CHECK_MESSAGE(m.contains(key), key);
  CHECK(m["j"] == "7*");
  CHECK(m["verified"] == true);
  CHECK(m["alpha"].get<double>() == doctest::Approx(std::sqrt(tr.mu)));
}

TEST_CASE("the Hessian at the equilibrium is twice the block matrix with r^2-scaled a, b, c") {
  ModalSpectrum m = modal_spectrum();
  double r2 = m.equilibrium.r0 * m.equilibrium.r0;
  StiffnessCoefficients k = StiffnessCoefficients::at_radius(kReferenceParams, m.equilibrium.r0);
  k.a *= r2;
  k.b *= r2;
  k.c *= r2;
  CHECK((m.hessian - 2.0 * block_hessian(k)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("printed eigenvectors against the recomputed eigenspaces") {
  for (const auto& o : table_overlaps()) {
    CHECK(o.best == o.j);
    if (o.j == "7" || o.j == "7*") {
      // The printed vectors of the two type-7 spaces are only approximate.
      CHECK(o.overlap > 0.96);
      CHECK(o.residual < 0.4);
    } else if (o.j == "4" && o.k == 1) {
      CHECK(o.overlap > 1 - 1e-6);
      CHECK(o.residual < 1e-3);
    } else {
      CHECK(o.overlap > 1 - 1e-9);
      CHECK(o.residual < 1e-9);
    }
  }
}
