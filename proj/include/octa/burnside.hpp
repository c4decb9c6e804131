#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "octa/group.hpp"

namespace octa {

// Conjugacy classes of subgroups of an ambient group together with the data the ring structure needs.
class RingCatalog {
public:
  virtual ~RingCatalog() = default;

  virtual int size() const = 0;
  virtual int unit() const = 0;
  virtual long long order(int h) const = 0;
  // 0 stands for an infinite Weyl group.
  virtual long long weyl(int h) const = 0;
  // Number of conjugates of H containing a fixed representative of L.
  virtual long long n_count(int l, int h) const = 0;
  // Classes L with finite Weyl group that are subconjugate to both H and K.
  virtual std::vector<int> common_subclasses(int h, int k) const = 0;
  virtual std::string label(int h) const = 0;
};

class BurnsideElement {
public:
  explicit BurnsideElement(const RingCatalog* cat) : cat_(cat) {}

  static BurnsideElement unit(const RingCatalog* cat);
  static BurnsideElement generator(const RingCatalog* cat, int h, long long c = 1);

  const RingCatalog* catalog() const { return cat_; }
  const std::map<int, long long>& terms() const { return terms_; }
  long long coeff(int h) const;
  void add(int h, long long c);
  bool empty() const { return terms_.empty(); }

  BurnsideElement operator+(const BurnsideElement& o) const;
  BurnsideElement operator-(const BurnsideElement& o) const;
  BurnsideElement operator-() const;
  bool operator==(const BurnsideElement& o) const { return cat_ == o.cat_ && terms_ == o.terms_; }

private:
  const RingCatalog* cat_;
  std::map<int, long long> terms_;
};

// Product of two generators through the recurrence over common subclasses, processed by decreasing order.
BurnsideElement multiply_generators(const RingCatalog* cat, int h, int k);
BurnsideElement multiply(const BurnsideElement& x, const BurnsideElement& y);

// Degree of -Id on the unit ball of a representation from the fixed dimensions of its orbit types.
// Classes absent from the list get coefficient zero; the list must contain the unit.
BurnsideElement brouwer_degree(const RingCatalog* cat, const std::vector<std::pair<int, int>>& fixed_dims);

// Drops classes with infinite Weyl group.
BurnsideElement pi0_truncate(const BurnsideElement& x);

// "-(D_1 x S_4^p) + 2(Z_1)" with classes listed by decreasing order.
std::string format(const BurnsideElement& x);
// {"(label)": coeff} with sorted keys.
nlohmann::json to_json(const BurnsideElement& x);

// A(S4 x Z2) over the 33-class catalog.
class OctahedralRing : public RingCatalog {
public:
  static const OctahedralRing& get();

  int size() const override;
  int unit() const override;
  long long order(int h) const override;
  long long weyl(int h) const override;
  long long n_count(int l, int h) const override;
  std::vector<int> common_subclasses(int h, int k) const override;
  std::string label(int h) const override;

private:
  OctahedralRing() = default;
};

// Independent product: orbit census of the G-set G/H x G/K.
BurnsideElement census_product(int h, int k);

// Basic degree of an irreducible S4 x Z2 representation given by its character row.
BurnsideElement octahedral_basic_degree(int irrep);

// Maximal orbit types of a representation: isotropy classes with nonzero fixed space not properly
// subconjugate to another such class below the whole group.
std::vector<int> octahedral_maximal_types(int irrep);

}  // namespace octa
