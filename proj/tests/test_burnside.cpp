#include <set>

#include "doctest.h"
#include "octa/burnside.hpp"
#include "octa/errors.hpp"
#include "octa/group.hpp"
#include "octa/orbit_o2.hpp"
#include "octa/spectral.hpp"

using namespace octa;

namespace {

const RingCatalog* ring() { return &OctahedralRing::get(); }

BurnsideElement gen(int h) { return BurnsideElement::generator(ring(), h); }

int index_of(const std::string& label) {
  const auto& c = SubgroupCatalog::get();
  for (int i = 0; i < c.size(); ++i) {
    if (c.at(i).label == label) return i;
  }
  FAIL("no class " << label);
  return -1;
}

}  // namespace

TEST_CASE("the whole group is the unit") {
  auto one = BurnsideElement::unit(ring());
  for (int h = 0; h < ring()->size(); ++h) {
    CHECK(multiply(one, gen(h)) == gen(h));
    CHECK(multiply(gen(h), one) == gen(h));
  }
}

TEST_CASE("the recurrence agrees with the orbit census of G/H x G/K") {
  for (int h = 0; h < ring()->size(); ++h) {
    for (int k = 0; k < ring()->size(); ++k) {
      CHECK_MESSAGE(multiply_generators(ring(), h, k) == census_product(h, k), ring()->label(h), " * ", ring()->label(k));
    }
  }
}

TEST_CASE("(H)(H) has leading coefficient |W(H)|") {
  for (int h = 0; h < ring()->size(); ++h) CHECK(multiply_generators(ring(), h, h).coeff(h) == ring()->weyl(h));
}

TEST_CASE("commutativity and associativity on generators") {
  const int n = ring()->size();
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < n; ++k) CHECK(multiply_generators(ring(), h, k) == multiply_generators(ring(), k, h));
  }
  for (int h = 0; h < n; h += 3) {
    for (int k = 1; k < n; k += 4) {
      for (int l = 2; l < n; l += 5) CHECK(multiply(multiply(gen(h), gen(k)), gen(l)) == multiply(gen(h), multiply(gen(k), gen(l))));
    }
  }
}

TEST_CASE("the trivial representation has degree -(G)") {
  auto d = octahedral_basic_degree(0);
  CHECK(d == BurnsideElement::generator(ring(), ring()->unit(), -1));
  CHECK(format(d) == "-(S_4^p)");
}

TEST_CASE("basic degrees are involutions") {
  auto one = BurnsideElement::unit(ring());
  for (int i = 0; i < 10; ++i) CHECK_MESSAGE(multiply(octahedral_basic_degree(i), octahedral_basic_degree(i)) == one, i);
  CHECK_THROWS_AS(octahedral_basic_degree(10), DomainError);
}

TEST_CASE("maximal coefficients are -2 / |W| for odd fixed dimension") {
  // The trivial representation is skipped: its whole space is fixed.
  const auto& c = SubgroupCatalog::get();
  for (int i = 1; i < 10; ++i) {
    auto d = octahedral_basic_degree(i);
    Character chi{};
    for (int k = 0; k < OctahedralGroup::kClasses; ++k) chi[k] = character_table()[i][k];
    for (int h : octahedral_maximal_types(i)) {
      long long w = c.at(h).weyl_order;
      long long want = c.fixed_dim(h, chi) % 2 == 1 ? -2 / w : 0;
      CHECK(d.coeff(h) * w == (c.fixed_dim(h, chi) % 2 == 1 ? -2 : 0));
      CHECK(d.coeff(h) == want);
      if (d.coeff(h) != 0) CHECK((d.coeff(h) == -1) == (w == 2));
    }
  }
}

TEST_CASE("the standard representation of the rotations has the familiar maximal types") {
  // chi_8 is the rotation representation on R^3 twisted so that the inversion acts trivially.
  std::set<std::string> labels;
  for (int h : octahedral_maximal_types(8)) labels.insert(SubgroupCatalog::get().at(h).label);
  CHECK(!labels.empty());
  for (const auto& l : labels) CHECK(SubgroupCatalog::get().at(index_of(l)).order < 48);
}

TEST_CASE("brouwer_degree requires the whole group") {
  CHECK_THROWS_AS(brouwer_degree(ring(), {{0, 1}}), DomainError);
  auto d = brouwer_degree(ring(), {{ring()->unit(), 0}});
  CHECK(d == BurnsideElement::unit(ring()));
}

namespace {

// Two classes: the unit with a continuum Weyl group and a point class with |W| = 2.
struct TwoClassRing : RingCatalog {
  int size() const override { return 2; }
  int unit() const override { return 0; }
  long long order(int h) const override { return h == 0 ? 0 : 2; }
  long long weyl(int h) const override { return h == 0 ? 0 : 2; }
  long long n_count(int, int) const override { return 1; }
  std::vector<int> common_subclasses(int, int) const override { return {1}; }
  std::string label(int h) const override { return h == 0 ? "SO_2" : "Z_2"; }
};

}  // namespace

TEST_CASE("pi0 truncation drops classes with infinite Weyl group") {
  CHECK(pi0_truncate(octahedral_basic_degree(7)) == octahedral_basic_degree(7));
  TwoClassRing r;
  BurnsideElement x = BurnsideElement::generator(&r, 0, 3) + BurnsideElement::generator(&r, 1, -1);
  BurnsideElement t = pi0_truncate(x);
  CHECK(t.coeff(0) == 0);
  CHECK(t.coeff(1) == -1);
  auto& cat = O2Catalog::shared();
  BurnsideElement d = pi0_truncate(basic_degree_o2("4", 1));
  for (const auto& [h, c] : d.terms()) CHECK(cat.weyl(h) != 0);
}

TEST_CASE("formatting and JSON") {
  int z1 = index_of("Z_1");
  BurnsideElement x = gen(ring()->unit()) - BurnsideElement::generator(ring(), z1, 2);
  CHECK(format(x) == "(S_4^p) - 2(Z_1)");
  CHECK(format(-x) == "-(S_4^p) + 2(Z_1)");
  CHECK(format(BurnsideElement(ring())) == "0");
  CHECK(to_json(x).dump() == R"j({"(S_4^p)":1,"(Z_1)":-2})j");
  BurnsideElement y = x + (-x);
  CHECK(y.empty());
}
