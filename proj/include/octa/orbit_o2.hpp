#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>
#include <Eigen/Dense>

#include "octa/burnside.hpp"
#include "octa/group.hpp"

namespace octa {

// Angles are measured in full turns and kept reduced to [0, 1).
using Angle = boost::rational<long long>;

Angle reduce_angle(Angle a);

// kappa^flip e^{2 pi i angle} paired with an element of S4 x Z2. The time map of the element is
// t -> (flip ? -t : t) + 2 pi angle, and (x.u)(t) = g.u(time map(t)).
struct GElement {
  bool flip = false;
  Angle angle{0};
  int g = 0;

  bool operator==(const GElement& o) const { return flip == o.flip && angle == o.angle && g == o.g; }
  bool operator<(const GElement& o) const;
};

GElement g_identity();
GElement g_mul(const GElement& a, const GElement& b);
GElement g_inv(const GElement& a);
GElement g_conj(const GElement& by, const GElement& x);

// A finite subgroup of O(2) x S4^p as a sorted element list plus a small generating set.
class ConcreteSubgroupO2 {
public:
  ConcreteSubgroupO2() = default;
  static ConcreteSubgroupO2 generated(const std::vector<GElement>& gens);

  const std::vector<GElement>& elements() const { return elems_; }
  const std::vector<GElement>& generators() const { return gens_; }
  int size() const { return static_cast<int>(elems_.size()); }
  bool contains(const GElement& x) const;
  bool contains(const ConcreteSubgroupO2& other) const;
  bool has_reflection() const;
  // n for the projection D_n or Z_n to O(2).
  int rotation_count() const;

  ConcreteSubgroupO2 conjugated(const GElement& by) const;
  ConcreteSubgroupO2 intersect(const ConcreteSubgroupO2& other) const;

  bool operator==(const ConcreteSubgroupO2& o) const { return elems_ == o.elems_; }
  bool operator<(const ConcreteSubgroupO2& o) const { return elems_ < o.elems_; }

private:
  std::vector<GElement> elems_;
  std::vector<GElement> gens_;
};

// Rotates a reflection of the projection onto angle 0.
ConcreteSubgroupO2 standardize(const ConcreteSubgroupO2& a);

// Finite set of conjugating elements that suffice for a standardized group with projection of n
// rotations: D_{2n} x S4^p when reflections are present, {1, kappa} x S4^p otherwise.
std::vector<GElement> conjugators(int n, bool dihedral);

bool conjugate_test(const ConcreteSubgroupO2& a, const ConcreteSubgroupO2& b);

// |N(A)/A|, or std::nullopt for a continuum of normalizing rotations.
std::optional<long long> weyl_order_o2(const ConcreteSubgroupO2& a);
// |N(A) n (D_M x S4^p)| / |A| for A standardized inside D_M x S4^p.
long long weyl_order_truncated(const ConcreteSubgroupO2& a, int m);

// Number of conjugates of H containing L, both with reflections.
long long o2_n_count(const ConcreteSubgroupO2& l, const ConcreteSubgroupO2& h);

// Preimage under the l-fold covering e^{i t} -> e^{i l t}.
ConcreteSubgroupO2 pullback(const ConcreteSubgroupO2& a, int l);

// Every subgroup of A that contains a reflection.
std::vector<ConcreteSubgroupO2> reflection_subgroups(const ConcreteSubgroupO2& a);

// Structural description of a concrete subgroup: projection H, kernel H_o = H x {e} part,
// spatial projection K and spatial kernel K_o = {e} x K part.
struct O2Shape {
  bool dihedral = true;
  int n = 1;
  bool kernel_dihedral = true;
  int m = 1;
  int spatial = 0;
  int spatial_kernel = 0;
  int order = 1;
  // Class of the spatial parts paired with rotations; -1 when unspecified.
  int rotation_spatial = -1;

  bool operator<(const O2Shape& o) const;
  bool operator==(const O2Shape& o) const;
};

O2Shape describe(const ConcreteSubgroupO2& a);
// "D_2^{D_1} x^{D_2^d} D_2^p", "D_1 x S_4^p", "D_6^{Z_1} x_{D_3^p} D_3^p".
std::string shape_label(const O2Shape& s);

// A family of amalgamated subgroups in one Fourier mode l: projection X_{mult l} with kernel
// Y_{kernel_mult l}, spatial K with kernel K_o and the printed quotient.
struct OrbitTypeO2 {
  bool dihedral = true;
  int mult = 1;
  bool kernel_dihedral = true;
  int kernel_mult = 1;
  bool scaled = true;  // multipliers written with l
  std::string spatial;
  std::string spatial_kernel;
  std::string quotient;  // informational; may be empty

  bool direct() const { return dihedral == kernel_dihedral && mult == kernel_mult && spatial == spatial_kernel; }
  // Accepts "D_{2l}^{D_l} x^{V_4^p} D_4^p", "D_l x S_4^p", "D_6^{Z_1} x_{D_3^p} D_3^p"; "\times" and
  // "\mathbb Z" are tolerated. Throws DomainError on a malformed label.
  static OrbitTypeO2 parse(std::string_view text);
  std::string format(int l) const;
  O2Shape shape(int l) const;
  bool matches(const ConcreteSubgroupO2& a, int l) const;
};

// All conjugacy-distinct amalgams realizing the family in mode l. Throws DomainError when the
// quotients differ in order or admit no isomorphism.
std::vector<ConcreteSubgroupO2> instantiate_all(const OrbitTypeO2& t, int l);
// The unique realization; DomainError when there are several.
ConcreteSubgroupO2 instantiate(const OrbitTypeO2& t, int l);

// Irreducible S4 x Z2 subspace of R^18 of type j in {"0","4","7","8","9"}; "6" is the tangent type.
Eigen::MatrixXd irreducible_basis(const std::string& j);

// Matrix of x on W_{j,l} = {cos(l t) a + sin(l t) b : a, b in E}, E spanned by q, in the stacked basis (a, b).
Eigen::MatrixXd mode_matrix(const Eigen::MatrixXd& q, int l, const GElement& x);

struct OrbitTypeDim {
  ConcreteSubgroupO2 group;
  int fixed_dim = 0;
};
// Isotropy groups with reflections of nonzero vectors in W_{j,l}, one per conjugacy class, found
// through the fixed-subspace lattice of D_{12 l} x S4^p.
std::vector<OrbitTypeDim> isotropy_lattice(const Eigen::MatrixXd& q, int l);

// Conjugacy classes of finite subgroups met so far, with O(2) x S4^p as the unit.
class O2Catalog : public RingCatalog {
public:
  static O2Catalog& shared();

  // Class of the subgroup, registering it when new. Requires a reflection.
  int find(const ConcreteSubgroupO2& a);
  std::optional<int> lookup(const ConcreteSubgroupO2& a) const;
  const ConcreteSubgroupO2& rep(int h) const;
  const O2Shape& shape(int h) const;

  int size() const override;
  int unit() const override { return 0; }
  long long order(int h) const override;
  long long weyl(int h) const override;
  long long n_count(int l, int h) const override;
  std::vector<int> common_subclasses(int h, int k) const override;
  std::string label(int h) const override;

  // Classes of subgroups with reflections inside rep(h).
  std::vector<int> subclasses(int h) const;

private:
  O2Catalog();
  int find_locked(const ConcreteSubgroupO2& a);
  std::optional<int> lookup_locked(const ConcreteSubgroupO2& a) const;

  struct Entry {
    ConcreteSubgroupO2 rep;
    O2Shape shape;
    long long weyl = 0;
    std::string label;
  };
  mutable std::recursive_mutex lock_;
  std::vector<Entry> entries_;
  std::map<O2Shape, std::vector<int>> buckets_;
  mutable std::map<std::pair<int, int>, long long> n_cache_;
  mutable std::map<int, std::vector<int>> sub_cache_;
};

struct DegreeTerm {
  long long coeff = 0;
  std::string label;  // family label in the grammar of OrbitTypeO2::parse
  bool maximal = false;
};

// Irreducible index used by the degree tables: "7*" shares the "7" expansion.
std::string degree_irrep(const std::string& j);

// The l-parametrized basic degree expansions, excluding the unit term (coefficient +1).
const std::vector<DegreeTerm>& tabulated_degree_terms(const std::string& j);

// Realization of a family inside W_{j,1}: the isotropy class of W_{j,1} matching the label,
// pulled back to mode l. Throws CatalogError when no class or several classes match.
int resolve_type(const std::string& j, const std::string& label, int l);

// Tabulated basic degree of W_{j,l} as a ring element.
BurnsideElement basic_degree_o2(const std::string& j, int l);
// Basic degree recomputed from the fixed-point dimensions of the isotropy lattice of W_{j,l}.
BurnsideElement computed_basic_degree(const std::string& j, int l);
// Classes flagged maximal in the tabulated expansion, realized in mode l.
std::vector<int> tabulated_maximal_types(const std::string& j, int l);
// Maximal isotropy classes of W_{j,l} found from the lattice.
std::vector<int> computed_maximal_types(const std::string& j, int l);

BurnsideElement o2_multiply(const BurnsideElement& x, const BurnsideElement& y);

}  // namespace octa
