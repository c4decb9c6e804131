#include "octa/burnside.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "octa/errors.hpp"
#include "octa/spectral.hpp"

namespace octa {

BurnsideElement BurnsideElement::unit(const RingCatalog* cat) { return generator(cat, cat->unit(), 1); }

BurnsideElement BurnsideElement::generator(const RingCatalog* cat, int h, long long c) {
  BurnsideElement x(cat);
  x.add(h, c);
  return x;
}

long long BurnsideElement::coeff(int h) const {
  auto it = terms_.find(h);
  return it == terms_.end() ? 0 : it->second;
}

void BurnsideElement::add(int h, long long c) {
  if (c == 0) return;
  long long& v = terms_[h];
  v += c;
  if (v == 0) terms_.erase(h);
}

BurnsideElement BurnsideElement::operator+(const BurnsideElement& o) const {
  if (cat_ != o.cat_) throw DomainError("adding elements of different Burnside rings");
  BurnsideElement r = *this;
  for (const auto& [h, c] : o.terms_) r.add(h, c);
  return r;
}

BurnsideElement BurnsideElement::operator-(const BurnsideElement& o) const { return *this + (-o); }

BurnsideElement BurnsideElement::operator-() const {
  BurnsideElement r(cat_);
  for (const auto& [h, c] : terms_) r.add(h, -c);
  return r;
}

namespace {

bool larger_first(const RingCatalog* cat, int a, int b) {
  long long oa = cat->order(a), ob = cat->order(b);
  return oa != ob ? oa > ob : a < b;
}

struct ProductCache {
  std::mutex lock;
  std::map<std::tuple<const RingCatalog*, int, int>, BurnsideElement> table;
};

ProductCache& product_cache() {
  static ProductCache c;
  return c;
}

}  // namespace

BurnsideElement multiply_generators(const RingCatalog* cat, int h, int k) {
  if (h == cat->unit()) return BurnsideElement::generator(cat, k);
  if (k == cat->unit()) return BurnsideElement::generator(cat, h);
  if (h > k) std::swap(h, k);
  auto key = std::make_tuple(cat, h, k);
  {
    auto& c = product_cache();
    std::lock_guard<std::mutex> g(c.lock);
    auto it = c.table.find(key);
    if (it != c.table.end()) return it->second;
  }
  long long wh = cat->weyl(h), wk = cat->weyl(k);
  BurnsideElement r(cat);
  if (wh != 0 && wk != 0) {
    std::vector<int> cands = cat->common_subclasses(h, k);
    std::sort(cands.begin(), cands.end(), [&](int a, int b) { return larger_first(cat, a, b); });
    std::vector<std::pair<int, long long>> done;
    for (int l : cands) {
      long long s = cat->n_count(l, h) * wh * cat->n_count(l, k) * wk;
      for (const auto& [lt, c] : done) {
        if (cat->order(lt) > cat->order(l)) s -= cat->n_count(l, lt) * c * cat->weyl(lt);
      }
      long long wl = cat->weyl(l);
      if (wl == 0) continue;
      if (s % wl != 0) {
        std::ostringstream msg;
        msg << "non-integer recurrence quotient " << s << "/" << wl << " at " << cat->label(l) << " in ("
            << cat->label(h) << ")*(" << cat->label(k) << ")";
        throw ConsistencyPanic(msg.str());
      }
      if (s != 0) {
        done.push_back({l, s / wl});
        r.add(l, s / wl);
      }
    }
  }
  auto& c = product_cache();
  std::lock_guard<std::mutex> g(c.lock);
  c.table.emplace(key, r);
  return r;
}

BurnsideElement multiply(const BurnsideElement& x, const BurnsideElement& y) {
  if (x.catalog() != y.catalog()) throw DomainError("multiplying elements of different Burnside rings");
  BurnsideElement r(x.catalog());
  for (const auto& [h, a] : x.terms()) {
    for (const auto& [k, b] : y.terms()) {
      BurnsideElement p = multiply_generators(x.catalog(), h, k);
      for (const auto& [l, c] : p.terms()) r.add(l, a * b * c);
    }
  }
  return r;
}

BurnsideElement brouwer_degree(const RingCatalog* cat, const std::vector<std::pair<int, int>>& fixed_dims) {
  std::vector<std::pair<int, int>> order = fixed_dims;
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) { return larger_first(cat, a.first, b.first); });
  if (order.empty() || order.front().first != cat->unit()) throw DomainError("fixed dimensions must include the whole group");
  BurnsideElement r(cat);
  std::vector<std::pair<int, long long>> done;
  for (const auto& [k, dim] : order) {
    long long s = (dim % 2 == 0) ? 1 : -1;
    for (const auto& [l, c] : done) {
      if (cat->order(l) > cat->order(k)) s -= c * cat->n_count(k, l) * cat->weyl(l);
    }
    long long w = cat->weyl(k);
    if (w == 0) continue;
    if (s % w != 0)
      throw ConsistencyPanic("non-integer degree coefficient " + std::to_string(s) + "/" + std::to_string(w) +
                             " at " + cat->label(k));
    if (s != 0) {
      done.push_back({k, s / w});
      r.add(k, s / w);
    }
  }
  return r;
}

BurnsideElement pi0_truncate(const BurnsideElement& x) {
  BurnsideElement r(x.catalog());
  for (const auto& [h, c] : x.terms()) {
    if (x.catalog()->weyl(h) != 0) r.add(h, c);
  }
  return r;
}

std::string format(const BurnsideElement& x) {
  const RingCatalog* cat = x.catalog();
  std::vector<std::pair<int, long long>> t(x.terms().begin(), x.terms().end());
  std::sort(t.begin(), t.end(), [&](const auto& a, const auto& b) { return larger_first(cat, a.first, b.first); });
  if (t.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    long long c = t[i].second;
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    long long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a);
    out += "(" + cat->label(t[i].first) + ")";
  }
  return out;
}

nlohmann::json to_json(const BurnsideElement& x) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [h, c] : x.terms()) j["(" + x.catalog()->label(h) + ")"] = c;
  return j;
}

const OctahedralRing& OctahedralRing::get() {
  static const OctahedralRing r;
  return r;
}

int OctahedralRing::size() const { return SubgroupCatalog::get().size(); }
int OctahedralRing::unit() const { return SubgroupCatalog::get().whole(); }
long long OctahedralRing::order(int h) const { return SubgroupCatalog::get().at(h).order; }
long long OctahedralRing::weyl(int h) const { return SubgroupCatalog::get().at(h).weyl_order; }
long long OctahedralRing::n_count(int l, int h) const { return SubgroupCatalog::get().n_count(l, h); }
std::string OctahedralRing::label(int h) const { return SubgroupCatalog::get().at(h).label; }

std::vector<int> OctahedralRing::common_subclasses(int h, int k) const {
  const auto& c = SubgroupCatalog::get();
  std::vector<int> out;
  for (int l = 0; l < c.size(); ++l) {
    if (c.subconjugate(l, h) && c.subconjugate(l, k)) out.push_back(l);
  }
  return out;
}

BurnsideElement census_product(int h, int k) {
  const auto& cat = SubgroupCatalog::get();
  const auto& hc = cat.at(h).conjugates;
  const auto& kc = cat.at(k).conjugates;
  // A point (aH, bK) has isotropy aHa^-1 n bKb^-1; each conjugate of H is hit by |N(H)|/|H| cosets.
  std::vector<long long> points(cat.size(), 0);
  long long mh = cat.at(h).weyl_order, mk = cat.at(k).weyl_order;
  for (Mask a : hc) {
    for (Mask b : kc) {
      int l = cat.class_of(a & b);
      if (l < 0) throw ConsistencyPanic("intersection of subgroups is not in the catalog");
      points[l] += mh * mk;
    }
  }
  const RingCatalog* ring = &OctahedralRing::get();
  BurnsideElement r(ring);
  for (int l = 0; l < cat.size(); ++l) {
    if (points[l] == 0) continue;
    long long orbit = OctahedralGroup::kOrder / cat.at(l).order;
    if (points[l] % orbit != 0) throw ConsistencyPanic("orbit census does not divide");
    r.add(l, points[l] / orbit);
  }
  return r;
}

namespace {

Character irrep_character(int irrep) {
  if (irrep < 0 || irrep > 9) throw DomainError("irreducible index out of range");
  Character chi{};
  for (int c = 0; c < OctahedralGroup::kClasses; ++c) chi[c] = character_table()[irrep][c];
  return chi;
}

}  // namespace

BurnsideElement octahedral_basic_degree(int irrep) {
  const auto& cat = SubgroupCatalog::get();
  Character chi = irrep_character(irrep);
  std::vector<std::pair<int, int>> dims;
  for (int k = 0; k < cat.size(); ++k) dims.push_back({k, cat.fixed_dim(k, chi)});
  return brouwer_degree(&OctahedralRing::get(), dims);
}

std::vector<int> octahedral_maximal_types(int irrep) {
  const auto& cat = SubgroupCatalog::get();
  Character chi = irrep_character(irrep);
  std::vector<int> support;
  for (int k = 0; k < cat.size(); ++k) {
    if (k != cat.whole() && cat.fixed_dim(k, chi) > 0) support.push_back(k);
  }
  std::vector<int> out;
  for (int k : support) {
    bool maximal = true;
    for (int l : support) {
      if (l != k && cat.at(l).order > cat.at(k).order && cat.subconjugate(k, l)) maximal = false;
    }
    if (maximal) out.push_back(k);
  }
  return out;
}

}  // namespace octa
