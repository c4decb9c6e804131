#include "octa/group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "octa/errors.hpp"

namespace octa {

std::vector<std::uint8_t> parse_cycles(std::string_view word, int n) {
  std::vector<std::uint8_t> p(n);
  for (int i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
  std::vector<int> cycle;
  bool open = false;
  for (char ch : word) {
    if (ch == ' ') continue;
    if (ch == '(') {
      if (open) throw DomainError("nested cycle in '" + std::string(word) + "'");
      open = true;
      cycle.clear();
    } else if (ch == ')') {
      if (!open) throw DomainError("unbalanced cycle in '" + std::string(word) + "'");
      open = false;
      for (std::size_t i = 0; i < cycle.size(); ++i)
        p[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    } else if (ch >= '1' && ch <= '9' && ch - '1' < n && open) {
      int x = ch - '1';
      if (std::find(cycle.begin(), cycle.end(), x) != cycle.end())
        throw DomainError("repeated point in '" + std::string(word) + "'");
      cycle.push_back(x);
    } else {
      throw DomainError("bad character in cycle word '" + std::string(word) + "'");
    }
  }
  if (open) throw DomainError("unterminated cycle in '" + std::string(word) + "'");
  return p;
}

std::string format_cycles(const std::vector<std::uint8_t>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == s) continue;
    out += '(';
    for (std::size_t i = s; !seen[i]; i = p[i]) {
      seen[i] = true;
      out += static_cast<char>('1' + i);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

template <std::size_t N>
std::array<std::uint8_t, N> compose(const std::array<std::uint8_t, N>& a, const std::array<std::uint8_t, N>& b) {
  std::array<std::uint8_t, N> c{};
  for (std::size_t i = 0; i < N; ++i) c[i] = a[b[i]];
  return c;
}

template <std::size_t N>
std::array<std::uint8_t, N> to_array(const std::vector<std::uint8_t>& v) {
  std::array<std::uint8_t, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

using S4Elem = std::pair<Perm4, int>;

// Breadth-first extension of generator images; returns false on an inconsistent assignment.
bool extend(const std::vector<EmbeddingPair>& pairs, std::map<S4Elem, Perm6>& phi) {
  std::vector<std::pair<S4Elem, Perm6>> gens;
  for (const auto& g : pairs)
    gens.push_back({{to_array<4>(parse_cycles(g.s4, 4)), g.z}, to_array<6>(parse_cycles(g.vertex, 6))});
  Perm4 id4{0, 1, 2, 3};
  Perm6 id6{0, 1, 2, 3, 4, 5};
  phi.clear();
  phi[{id4, 0}] = id6;
  std::vector<S4Elem> frontier{{id4, 0}};
  bool ok = true;
  while (!frontier.empty()) {
    std::vector<S4Elem> next;
    for (const auto& x : frontier) {
      for (const auto& [g, pg] : gens) {
        S4Elem y{compose(x.first, g.first), x.second ^ g.second};
        Perm6 py = compose(phi[x], pg);
        auto it = phi.find(y);
        if (it == phi.end()) {
          phi[y] = py;
          next.push_back(y);
        } else if (it->second != py) {
          ok = false;
        }
      }
    }
    frontier = std::move(next);
  }
  std::set<Perm6> images;
  for (const auto& kv : phi) images.insert(kv.second);
  return ok && images.size() == phi.size();
}

int s4_cycle_type(const Perm4& s) {
  // 0: identity, 1: transposition, 2: double transposition, 3: 3-cycle, 4: 4-cycle
  int fixed = 0;
  for (int i = 0; i < 4; ++i) fixed += (s[i] == i);
  if (fixed == 4) return 0;
  if (fixed == 2) return 1;
  if (fixed == 1) return 3;
  Perm4 sq = compose(s, s);
  return sq == Perm4{0, 1, 2, 3} ? 2 : 4;
}

}  // namespace

const std::vector<EmbeddingPair>& embedding_generators() {
  static const std::vector<EmbeddingPair> pairs = {
      {"(24)", 0, "(14)(23)(56)"},
      {"(12)(34)", 0, "(13)(56)"},
      {"()", 1, "(13)(24)(56)"},
      {"(132)", 0, "(146)(253)"},
      {"(1432)", 0, "(1234)"},
  };
  return pairs;
}

bool extends_to_homomorphism(const std::vector<EmbeddingPair>& pairs) {
  std::map<S4Elem, Perm6> phi;
  return extend(pairs, phi);
}

const OctahedralGroup& OctahedralGroup::get() {
  static const OctahedralGroup g;
  return g;
}

OctahedralGroup::OctahedralGroup() {
  std::map<S4Elem, Perm6> phi;
  if (!extend(embedding_generators(), phi) || phi.size() != kOrder)
    throw ConsistencyPanic("octahedral embedding is not a faithful homomorphism");

  std::map<Perm6, S4Elem> back;
  for (const auto& [k, v] : phi) back[v] = k;
  for (const auto& [p, s] : back) {
    perms_.push_back(p);
    s4_.push_back(s);
  }
  for (int a = 0; a < kOrder; ++a) {
    for (int b = 0; b < kOrder; ++b) mul_[a][b] = index(compose(perms_[a], perms_[b]));
  }
  Perm6 id6{0, 1, 2, 3, 4, 5};
  identity_ = index(id6);
  for (int a = 0; a < kOrder; ++a) {
    for (int b = 0; b < kOrder; ++b) {
      if (mul_[a][b] == identity_) inv_[a] = b;
    }
  }

  const auto& p = octahedron_vertices();
  for (int g = 0; g < kOrder; ++g) {
    Eigen::Matrix3d m;
    m.col(0) = p[perms_[g][0]];
    m.col(1) = p[perms_[g][1]];
    m.col(2) = p[perms_[g][4]];
    mats_.push_back(m);
  }

  class_rep_.fill(-1);
  for (int g = 0; g < kOrder; ++g) {
    int t = s4_cycle_type(s4_[g].first);
    static const int kColumn[5] = {0, 2, 4, 6, 8};
    class_[g] = kColumn[t] + s4_[g].second;
    if (class_rep_[class_[g]] < 0) class_rep_[class_[g]] = g;
  }
}

int OctahedralGroup::index(const Perm6& p) const {
  auto it = std::lower_bound(perms_.begin(), perms_.end(), p);
  if (it == perms_.end() || *it != p) return -1;
  return static_cast<int>(it - perms_.begin());
}

int OctahedralGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != identity_; x = mul_[x][g]) ++k;
  return k;
}

int OctahedralGroup::from_s4(const Perm4& s, int z) const {
  for (int g = 0; g < kOrder; ++g) {
    if (s4_[g].first == s && s4_[g].second == z) return g;
  }
  throw DomainError("not an element of S4 x Z2");
}

int OctahedralGroup::from_vertex_word(std::string_view word) const {
  int g = index(to_array<6>(parse_cycles(word, 6)));
  if (g < 0) throw DomainError("'" + std::string(word) + "' is not an octahedral vertex permutation");
  return g;
}

int OctahedralGroup::from_product_word(std::string_view word) const {
  auto p = parse_cycles(word, 6);
  if (p[4] == 4 && p[5] == 5) return from_s4(to_array<4>({p.begin(), p.begin() + 4}), 0);
  if (p[4] == 5 && p[5] == 4) {
    for (int i = 0; i < 4; ++i) {
      if (p[i] >= 4) throw DomainError("'" + std::string(word) + "' mixes the sign with S4 points");
    }
    return from_s4(to_array<4>({p.begin(), p.begin() + 4}), 1);
  }
  throw DomainError("'" + std::string(word) + "' is not an S4 x S2 word");
}

Mat18 OctahedralGroup::action(int g) const {
  Mat18 a = Mat18::Zero();
  const Perm6& p = perms_[g];
  for (int j = 0; j < 6; ++j) a.block<3, 3>(3 * p[j], 3 * j) = mats_[g];
  return a;
}

const std::array<int, OctahedralGroup::kClasses>& OctahedralGroup::class_sizes() {
  static const std::array<int, kClasses> sizes = {1, 1, 6, 6, 3, 3, 8, 8, 6, 6};
  return sizes;
}

Mask OctahedralGroup::closure(const std::vector<int>& gens) const {
  Mask m = Mask{1} << identity_;
  std::vector<int> frontier{identity_};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int g : gens) {
        int y = mul_[x][g];
        if (!mask_has(m, y)) {
          m |= Mask{1} << y;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return m;
}

Mask OctahedralGroup::conjugate(Mask m, int g) const {
  Mask out = 0;
  for (int x = 0; x < kOrder; ++x) {
    if (mask_has(m, x)) out |= Mask{1} << conj(g, x);
  }
  return out;
}

Mask OctahedralGroup::normalizer(Mask m) const {
  Mask out = 0;
  for (int g = 0; g < kOrder; ++g) {
    if (conjugate(m, g) == m) out |= Mask{1} << g;
  }
  return out;
}

std::vector<int> OctahedralGroup::elements(Mask m) const {
  std::vector<int> out;
  for (int x = 0; x < kOrder; ++x) {
    if (mask_has(m, x)) out.push_back(x);
  }
  return out;
}

std::vector<Mask> enumerate_subgroups() {
  const auto& G = OctahedralGroup::get();
  std::set<Mask> cyclic;
  for (int g = 0; g < OctahedralGroup::kOrder; ++g) cyclic.insert(G.closure({g}));
  std::set<Mask> all(cyclic.begin(), cyclic.end());
  std::vector<Mask> frontier(cyclic.begin(), cyclic.end());
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask s : frontier) {
      for (Mask c : cyclic) {
        if ((c & s) == c) continue;
        std::vector<int> gens = G.elements(s);
        auto more = G.elements(c);
        gens.insert(gens.end(), more.begin(), more.end());
        Mask t = G.closure(gens);
        if (all.insert(t).second) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return {all.begin(), all.end()};
}

const SubgroupCatalog& SubgroupCatalog::get() {
  static const SubgroupCatalog c;
  return c;
}

SubgroupCatalog::SubgroupCatalog() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> listing = {
      {"Z_1", {"()"}},
      {"Z_2", {"(12)(34)"}},
      {"Z_3", {"(234)"}},
      {"V_4", {"(14)(23)", "(12)(34)"}},
      {"A_4", {"(14)(23)", "(12)(34)", "(234)"}},
      {"D_4", {"(1234)", "(24)"}},
      {"Z_4", {"(1234)"}},
      {"D_3", {"(234)", "(24)"}},
      {"D_2", {"(13)(24)", "(24)"}},
      {"D_1", {"(24)"}},
      {"S_4", {"(14)(23)", "(13)(24)", "(234)", "(24)"}},
      {"Z_1^p", {"(56)"}},
      {"D_1^p", {"(24)", "(56)"}},
      {"D_1^z", {"(24)(56)"}},
      {"Z_2^p", {"(12)(34)", "(56)"}},
      {"Z_2^-", {"(12)(34)(56)"}},
      {"D_2^p", {"(13)(24)", "(24)", "(56)"}},
      {"D_2^z", {"(13)(24)", "(24)(56)"}},
      {"D_2^d", {"(13)(24)(56)", "(24)"}},
      {"Z_4^d", {"(1234)(56)", "(13)(24)"}},
      {"V_4^-", {"(14)(23)(56)", "(12)(34)"}},
      {"V_4^p", {"(14)(23)", "(12)(34)", "(56)"}},
      {"D_4^z", {"(1234)", "(24)(56)"}},
      {"D_4^d", {"(13)(24)", "(24)", "(12)(34)(56)"}},
      {"D_4^{\\tilde d}", {"(14)(23)", "(12)(34)", "(24)(56)"}},
      {"D_4^p", {"(1234)", "(24)", "(56)"}},
      {"Z_3^p", {"(234)", "(56)"}},
      {"D_3^z", {"(234)", "(24)(56)"}},
      {"D_3^p", {"(234)", "(24)", "(56)"}},
      {"A_4^p", {"(14)(23)", "(12)(34)", "(234)", "(56)"}},
      {"S_4^-", {"(14)(23)", "(12)(34)", "(234)", "(24)(56)"}},
      {"S_4^p", {"(14)(23)", "(12)(34)", "(234)", "(24)", "(56)"}},
      {"Z_4^p", {"(1234)", "(56)"}},
  };
  const auto& G = OctahedralGroup::get();
  for (const auto& [label, words] : listing) {
    SubgroupClass c;
    c.label = label;
    c.words = words;
    std::vector<int> gens;
    for (const auto& w : words) gens.push_back(G.from_product_word(w));
    c.rep = G.closure(gens);
    c.order = mask_size(c.rep);
    c.normalizer_order = mask_size(G.normalizer(c.rep));
    c.weyl_order = c.normalizer_order / c.order;
    std::set<Mask> conj;
    for (int g = 0; g < OctahedralGroup::kOrder; ++g) conj.insert(G.conjugate(c.rep, g));
    c.conjugates.assign(conj.begin(), conj.end());
    classes_.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (classes_[i].conjugates == classes_[j].conjugates)
        throw ConsistencyPanic("catalog entries " + classes_[i].label + " and " + classes_[j].label +
                               " are conjugate");
    }
  }
  whole_ = index_of("S_4^p");
  trivial_ = index_of("Z_1");

  int n = size();
  n_.assign(n, std::vector<int>(n, 0));
  for (int l = 0; l < n; ++l) {
    for (int h = 0; h < n; ++h) {
      Mask L = classes_[l].rep;
      int count = 0;
      for (Mask c : classes_[h].conjugates) count += ((c & L) == L);
      n_[l][h] = count;
    }
  }
}

int SubgroupCatalog::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (classes_[i].label == label) return i;
  }
  throw DomainError("unknown subgroup label '" + std::string(label) + "'");
}

int SubgroupCatalog::class_of(Mask m) const {
  for (int i = 0; i < size(); ++i) {
    const auto& c = classes_[i].conjugates;
    if (std::binary_search(c.begin(), c.end(), m)) return i;
  }
  return -1;
}

int SubgroupCatalog::fixed_dim(int k, const std::array<double, OctahedralGroup::kClasses>& chi) const {
  const auto& G = OctahedralGroup::get();
  double s = 0.0;
  for (int x : G.elements(classes_[k].rep)) s += chi[G.class_of(x)];
  double d = s / classes_[k].order;
  long r = std::lround(d);
  if (std::abs(d - r) > 1e-9 || r < 0)
    throw InvalidCharacter("fixed-point dimension of " + classes_[k].label + " is not a nonnegative integer");
  return static_cast<int>(r);
}

}  // namespace octa
