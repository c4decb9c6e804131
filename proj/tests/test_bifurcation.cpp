#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "octa/bifurcation.hpp"
#include "octa/errors.hpp"

using namespace octa;

namespace {

std::vector<std::string> order_of(const std::vector<CriticalNumber>& set) {
  std::vector<std::string> out;
  for (const auto& c : set) out.push_back(c.j + "," + std::to_string(c.l));
  return out;
}

// The maximal types of W_j with nonzero coefficient, tested against printed family labels.
bool census_matches(const Census& c, const std::string& j, const std::vector<std::string>& printed) {
  auto& cat = O2Catalog::shared();
  std::vector<int> classes;
  for (const auto& e : c.entries) {
    if (e.j != j) continue;
    for (int h = 1; h < cat.size(); ++h) {
      if (cat.label(h) == e.label) classes.push_back(h);
    }
  }
  if (classes.size() != printed.size()) return false;
  for (const auto& p : printed) {
    auto t = OrbitTypeO2::parse(p);
    int hits = 0;
    for (int h : classes) hits += t.matches(cat.rep(h), 1);
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("critical numbers in ascending order") {
  auto set = critical_set(reference_alphas(), 3.0);
  auto o = order_of(set);
  REQUIRE(o.size() >= 8);
  const std::vector<std::string> prefix = {"0,1", "7*,1", "4,1", "7,1", "0,2", "8,1", "7*,2", "4,2"};
  CHECK(std::vector<std::string>(o.begin(), o.begin() + 8) == prefix);
  for (std::size_t i = 1; i < set.size(); ++i) CHECK(set[i - 1].lambda <= set[i].lambda);
  auto alphas = reference_alphas();
  for (const auto& c : set) CHECK(c.lambda == doctest::Approx(c.l / alphas.at(c.j)).epsilon(1e-15));
  CHECK(critical_ties(set).empty());
  // lambda_{9,1} is the 29th value.
  auto full = critical_set(alphas, 1.0 / alphas.at("9"));
  CHECK(full.size() == 29);
  CHECK(order_of(full).back() == "9,1");
}

TEST_CASE("a single alpha = 1 gives lambda_l = l") {
  auto set = critical_set({{"0", 1.0}}, 5.0);
  REQUIRE(set.size() == 5);
  for (int l = 1; l <= 5; ++l) CHECK(set[l - 1].lambda == l);
  CHECK_THROWS_AS(critical_set({{"0", 0.0}}, 1.0), DomainError);
}

TEST_CASE("ties are reported, not broken") {
  auto set = critical_set({{"4", 1.0}, {"8", 2.0}}, 1.0);
  auto ties = critical_ties(set);
  REQUIRE(ties.size() == 1);
  CHECK(ties[0].first.j == "4");
  CHECK(ties[0].second.j == "8");
  CHECK_THROWS_AS(factors_below("4", {{"4", 1.0}, {"8", 2.0}}), DomainError);
}

TEST_CASE("isotypic nonresonance") {
  Equilibrium eq = find_equilibrium(kReferenceParams);
  SpectrumReport s = closed_form_spectrum(StiffnessCoefficients::at_radius(kReferenceParams, eq.r0));
  CHECK(check_isotypic_nonresonance(s).ok);
  SpectrumReport forced = s;
  double a8 = 0.0;
  for (const auto& e : forced.spaces) {
    if (e.j == "8") a8 = e.alpha_sq;
  }
  for (auto& e : forced.spaces) {
    if (e.j == "4") e.alpha_sq = a8;
  }
  auto r = check_isotypic_nonresonance(forced);
  CHECK_FALSE(r.ok);
  CHECK(std::set<std::string>{r.first, r.second} == std::set<std::string>{"4", "8"});

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    PotentialParams p{u(rng), u(rng), u(rng)};
    SpectrumReport sp = closed_form_spectrum(StiffnessCoefficients::at_radius(p, find_equilibrium(p).r0));
    bool distinct = true;
    for (const auto& a : sp.spaces) {
      for (const auto& b : sp.spaces) {
        if (&a == &b || a.j == "6" || b.j == "6") continue;
        if (std::abs(a.alpha_sq - b.alpha_sq) <= 1e-9 * std::max(std::abs(a.alpha_sq), std::abs(b.alpha_sq))) distinct = false;
      }
    }
    CHECK(check_isotypic_nonresonance(sp).ok == distinct);
  }
}

TEST_CASE("the breathing invariant") {
  auto r = bifurcation_invariant("0");
  REQUIRE(r.invariant.has_value());
  CHECK(format(*r.invariant) == "-(D_1 x S_4^p)");
  CHECK(r.factors.empty());
  CHECK(r.paths_agree);
}

TEST_CASE("the invariant at lambda_{4,1}") {
  auto r = bifurcation_invariant("4");
  REQUIRE(r.invariant.has_value());
  CHECK(r.paths_agree);
  CHECK(order_of(r.factors) == std::vector<std::string>{"0,1", "7*,1"});
  std::map<std::string, long long> want = {{"D_2^{D_1} x^{V_4^p} D_4^p", -1},
                                           {"D_1 x D_4^p", 1},
                                           {"D_3^{Z_1} x_{D_3}^{V_4^p} S_4^p", -2}};
  REQUIRE(r.maximal_types.size() == 3);
  for (const auto& t : r.maximal_types) CHECK(want.at(t.label) == t.coeff);
}

TEST_CASE("the invariant at lambda_{7*,1}") {
  auto r = bifurcation_invariant("7*");
  REQUIRE(r.invariant.has_value());
  CHECK(r.paths_agree);
  auto& cat = O2Catalog::shared();
  std::vector<std::pair<std::string, long long>> printed = {{"D_6^{Z_1} x_{D_3^p} D_3^p", -2},
                                                            {"D_4^{Z_1} x^{Z_2^-} D_4^p", -2},
                                                            {"D_2^{D_1} x^{D_2^d} D_2^p", -1},
                                                            {"D_2^{D_1} x^{D_3^z} D_3^p", -1},
                                                            {"D_2^{D_1} x^{D_4^z} D_4^p", -1}};
  REQUIRE(r.maximal_types.size() == printed.size());
  for (const auto& [label, c] : printed) {
    auto t = OrbitTypeO2::parse(label);
    int hits = 0;
    for (const auto& m : r.maximal_types) {
      if (t.matches(cat.rep(m.cls), 1)) {
        ++hits;
        CHECK(m.coeff == c);
      }
    }
    CHECK_MESSAGE(hits == 1, label);
  }
}

TEST_CASE("maximal symmetry census") {
  Census c = maximal_symmetry_census();
  CHECK(c.complete());
  CHECK(c.distinct_labels.size() == 16);
  CHECK(census_matches(c, "0", {"D_1 x S_4^p"}));
  CHECK(census_matches(c, "8", {"D_3^{Z_1} x_{D_3} D_3^p", "D_4^{Z_1} x_{D_4} D_4^p", "D_2^{D_1} x^{D_1^p} D_2^p",
                                "D_2^{D_1} x^{D_2^p} D_4^p", "D_1 x D_3^p"}));
  Census computed = maximal_symmetry_census({DegreeSource::computed});
  CHECK(computed.distinct_labels == c.distinct_labels);
}

TEST_CASE("maximal coefficients from computed degrees obey the +-1 / +-2 law") {
  InvariantOptions opt;
  opt.source = DegreeSource::computed;
  opt.full_product_limit = -1;
  for (const auto& j : {"0", "4", "7", "7*", "8", "9"}) {
    auto r = bifurcation_invariant(j, opt);
    CHECK(!r.maximal_types.empty());
    for (const auto& t : r.maximal_types) {
      long long a = std::abs(t.coeff);
      CHECK((a == 1 || a == 2));
      CHECK((t.weyl == 2) == (a == 1));
    }
  }
}

TEST_CASE("local coefficients agree with the full product") {
  for (auto source : {DegreeSource::tabulated, DegreeSource::computed}) {
    InvariantOptions opt;
    opt.source = source;
    for (const auto& j : {"0", "7*", "4"}) {
      auto r = bifurcation_invariant(j, opt);
      REQUIRE(r.invariant.has_value());
      CHECK(r.paths_agree);
      for (const auto& t : r.maximal_types) CHECK(r.invariant->coeff(t.cls) == t.coeff);
    }
  }
}

TEST_CASE("enlarging lambda_max keeps earlier critical numbers and invariants") {
  auto alphas = reference_alphas();
  auto small = critical_set(alphas, 1.5), large = critical_set(alphas, 3.0);
  REQUIRE(small.size() <= large.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].j == large[i].j);
    CHECK(small[i].l == large[i].l);
  }
  // Moving a critical number that lies above lambda_{7*,1} leaves its invariant alone.
  InvariantOptions moved;
  moved.alphas = alphas;
  moved.alphas["9"] *= 0.5;
  auto a = bifurcation_invariant("7*");
  auto b = bifurcation_invariant("7*", moved);
  CHECK(*a.invariant == *b.invariant);
}
