#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "octa/force_field.hpp"

namespace octa {

// Images of 0..5; composition (a*b)(i) = a(b(i)).
using Perm6 = std::array<std::uint8_t, 6>;
using Perm4 = std::array<std::uint8_t, 4>;

// Parses 1-based cycle notation such as "(146)(253)" or "()" on n points.
std::vector<std::uint8_t> parse_cycles(std::string_view word, int n);
std::string format_cycles(const std::vector<std::uint8_t>& images);

// Subgroups of the order-48 group as bit masks over element indices.
using Mask = std::uint64_t;

inline int mask_size(Mask m) { return __builtin_popcountll(m); }
inline bool mask_has(Mask m, int g) { return (m >> g) & 1u; }

// The octahedral group S4 x Z2 stored through its faithful action on the six vertices.
class OctahedralGroup {
public:
  static constexpr int kOrder = 48;
  static constexpr int kClasses = 10;

  static const OctahedralGroup& get();

  int identity() const { return identity_; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul_[mul_[g][x]][inv_[g]]; }
  int element_order(int g) const;

  const Perm6& perm(int g) const { return perms_[g]; }
  // Index of a vertex permutation, or -1 when it is not an octahedral symmetry.
  int index(const Perm6& p) const;

  // The pair (sigma, z) in S4 x Z2 with z = 1 for the central inversion factor.
  std::pair<Perm4, int> s4_view(int g) const { return s4_[g]; }
  int from_s4(const Perm4& s, int z) const;

  // Word in vertex notation, e.g. "(146)(253)".
  int from_vertex_word(std::string_view word) const;
  // Word in S4 x S2 notation, where the transposition (56) stands for the inversion factor.
  int from_product_word(std::string_view word) const;

  // 3x3 matrix sending p_j to p_{g(j)}.
  const Eigen::Matrix3d& matrix(int g) const { return mats_[g]; }
  // 18x18 action: component j of g.v is M v_{g^{-1}(j)}.
  Mat18 action(int g) const;

  // Column of the character table the element belongs to, in the order
  // ((1),1) ((1),-1) ((12),1) ((12),-1) ((12)(34),1) ((12)(34),-1) ((123),1) ((123),-1) ((1234),1) ((1234),-1).
  int class_of(int g) const { return class_[g]; }
  static const std::array<int, kClasses>& class_sizes();
  int class_representative(int c) const { return class_rep_[c]; }

  Mask closure(const std::vector<int>& gens) const;
  Mask conjugate(Mask m, int g) const;
  Mask normalizer(Mask m) const;
  std::vector<int> elements(Mask m) const;

private:
  OctahedralGroup();

  std::vector<Perm6> perms_;
  std::vector<std::pair<Perm4, int>> s4_;
  std::vector<Eigen::Matrix3d> mats_;
  std::array<std::array<int, kOrder>, kOrder> mul_{};
  std::array<int, kOrder> inv_{};
  std::array<int, kOrder> class_{};
  std::array<int, kClasses> class_rep_{};
  int identity_ = 0;
};

// Vertex permutations of the five generators of S4 x Z2 together with their S4 x Z2 names,
// as the embedding is built from. The rotation ((1432),1) maps to the 4-cycle (1234).
struct EmbeddingPair {
  std::string s4;
  int z;
  std::string vertex;
};
const std::vector<EmbeddingPair>& embedding_generators();

// True when the assignment generator -> vertex permutation extends to a homomorphism S4 x Z2 -> S6.
bool extends_to_homomorphism(const std::vector<EmbeddingPair>& pairs);

struct SubgroupClass {
  std::string label;
  std::vector<std::string> words;  // generators in S4 x S2 notation
  Mask rep = 0;
  int order = 0;
  int normalizer_order = 0;
  int weyl_order = 0;
  std::vector<Mask> conjugates;
};

// The 33 conjugacy classes of subgroups of S4 x Z2.
class SubgroupCatalog {
public:
  static const SubgroupCatalog& get();

  int size() const { return static_cast<int>(classes_.size()); }
  const SubgroupClass& at(int i) const { return classes_[i]; }
  const std::vector<SubgroupClass>& classes() const { return classes_; }

  int index_of(std::string_view label) const;
  // Class of an arbitrary subgroup mask (-1 if the mask is not a subgroup listed).
  int class_of(Mask m) const;
  int whole() const { return whole_; }
  int trivial() const { return trivial_; }

  // n(L,H): number of conjugates of H containing the representative of L.
  int n_count(int l, int h) const { return n_[l][h]; }
  bool subconjugate(int l, int h) const { return n_[l][h] > 0; }

  // dim V^K for a representation with the given character on the 10 classes.
  int fixed_dim(int k, const std::array<double, OctahedralGroup::kClasses>& chi) const;

private:
  SubgroupCatalog();

  std::vector<SubgroupClass> classes_;
  std::vector<std::vector<int>> n_;
  int whole_ = 0;
  int trivial_ = 0;
};

// Every subgroup of S4 x Z2, by cyclic extension.
std::vector<Mask> enumerate_subgroups();

}  // namespace octa
