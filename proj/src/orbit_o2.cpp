#include "octa/orbit_o2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <limits>
#include <sstream>
#include <tuple>

#include "octa/errors.hpp"
#include "octa/spectral.hpp"

namespace octa {

Angle reduce_angle(Angle a) {
  long long n = a.numerator(), d = a.denominator();
  long long q = n / d;
  if (n % d != 0 && n < 0) --q;
  return a - Angle(q);
}

bool GElement::operator<(const GElement& o) const {
  if (flip != o.flip) return flip < o.flip;
  if (angle != o.angle) return angle < o.angle;
  return g < o.g;
}

GElement g_identity() { return {false, Angle(0), OctahedralGroup::get().identity()}; }

GElement g_mul(const GElement& a, const GElement& b) {
  const auto& G = OctahedralGroup::get();
  Angle t = b.flip ? b.angle - a.angle : a.angle + b.angle;
  return {a.flip != b.flip, reduce_angle(t), G.mul(a.g, b.g)};
}

GElement g_inv(const GElement& a) {
  const auto& G = OctahedralGroup::get();
  return {a.flip, a.flip ? a.angle : reduce_angle(-a.angle), G.inv(a.g)};
}

GElement g_conj(const GElement& by, const GElement& x) { return g_mul(g_mul(by, x), g_inv(by)); }

namespace {

std::vector<GElement> close(const std::vector<GElement>& gens) {
  std::set<GElement> s{g_identity()};
  std::vector<GElement> frontier{g_identity()};
  while (!frontier.empty()) {
    std::vector<GElement> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        GElement y = g_mul(x, g);
        if (s.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return {s.begin(), s.end()};
}

// Greedy generating set: add an element whenever it is outside the span so far.
std::vector<GElement> small_generating_set(const std::vector<GElement>& elems) {
  std::vector<GElement> gens;
  std::vector<GElement> span{g_identity()};
  // Prefer elements of high order so the set stays short.
  std::vector<GElement> order = elems;
  auto elem_order = [](const GElement& x) {
    int k = 1;
    for (GElement y = x; !(y == g_identity()); y = g_mul(y, x)) ++k;
    return k;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const GElement& a, const GElement& b) { return elem_order(a) > elem_order(b); });
  for (const auto& x : order) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = close(gens);
    if (span.size() == elems.size()) break;
  }
  return gens;
}

}  // namespace

ConcreteSubgroupO2 ConcreteSubgroupO2::generated(const std::vector<GElement>& gens) {
  ConcreteSubgroupO2 a;
  for (GElement g : gens) {
    g.angle = reduce_angle(g.angle);
    if (!(g == g_identity())) a.gens_.push_back(g);
  }
  a.elems_ = close(a.gens_);
  return a;
}

bool ConcreteSubgroupO2::contains(const GElement& x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

bool ConcreteSubgroupO2::contains(const ConcreteSubgroupO2& other) const {
  for (const auto& g : other.gens_) {
    if (!contains(g)) return false;
  }
  return true;
}

bool ConcreteSubgroupO2::has_reflection() const { return !elems_.empty() && elems_.back().flip; }

int ConcreteSubgroupO2::rotation_count() const {
  std::set<Angle> rot;
  for (const auto& x : elems_) {
    if (!x.flip) rot.insert(x.angle);
  }
  return static_cast<int>(rot.size());
}

ConcreteSubgroupO2 ConcreteSubgroupO2::conjugated(const GElement& by) const {
  ConcreteSubgroupO2 r;
  r.elems_.reserve(elems_.size());
  for (const auto& x : elems_) r.elems_.push_back(g_conj(by, x));
  std::sort(r.elems_.begin(), r.elems_.end());
  for (const auto& g : gens_) r.gens_.push_back(g_conj(by, g));
  return r;
}

ConcreteSubgroupO2 ConcreteSubgroupO2::intersect(const ConcreteSubgroupO2& other) const {
  std::vector<GElement> common;
  std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(common));
  ConcreteSubgroupO2 r;
  r.elems_ = common;
  r.gens_ = small_generating_set(common);
  return r;
}

ConcreteSubgroupO2 standardize(const ConcreteSubgroupO2& a) {
  if (!a.has_reflection()) return a;
  Angle t0(1);
  for (const auto& x : a.elements()) {
    if (x.flip) t0 = std::min(t0, x.angle);
  }
  if (t0 == Angle(0)) return a;
  return a.conjugated({false, t0 / 2, OctahedralGroup::get().identity()});
}

std::vector<GElement> conjugators(int n, bool dihedral) {
  std::vector<GElement> out;
  if (dihedral) {
    for (int f = 0; f < 2; ++f) {
      for (int k = 0; k < 2 * n; ++k) {
        for (int g = 0; g < OctahedralGroup::kOrder; ++g) out.push_back({f == 1, Angle(k, 2 * n), g});
      }
    }
  } else {
    for (int f = 0; f < 2; ++f) {
      for (int g = 0; g < OctahedralGroup::kOrder; ++g) out.push_back({f == 1, Angle(0), g});
    }
  }
  return out;
}

namespace {

bool maps_into(const GElement& c, const ConcreteSubgroupO2& a, const ConcreteSubgroupO2& b) {
  for (const auto& x : a.generators()) {
    if (!b.contains(g_conj(c, x))) return false;
  }
  return true;
}

}  // namespace

bool conjugate_test(const ConcreteSubgroupO2& a0, const ConcreteSubgroupO2& b0) {
  if (a0.size() != b0.size() || a0.has_reflection() != b0.has_reflection()) return false;
  ConcreteSubgroupO2 a = standardize(a0), b = standardize(b0);
  if (a == b) return true;
  if (!(describe(a) == describe(b))) return false;
  for (const auto& c : conjugators(a.rotation_count(), a.has_reflection())) {
    if (maps_into(c, a, b)) return true;
  }
  return false;
}

std::optional<long long> weyl_order_o2(const ConcreteSubgroupO2& a0) {
  // Without reflections every rotation centralizes the group.
  if (!a0.has_reflection()) return std::nullopt;
  ConcreteSubgroupO2 a = standardize(a0);
  long long count = 0;
  for (const auto& c : conjugators(a.rotation_count(), true)) count += maps_into(c, a, a);
  return count / a.size();
}

long long weyl_order_truncated(const ConcreteSubgroupO2& a0, int m) {
  ConcreteSubgroupO2 a = standardize(a0);
  for (const auto& x : a.elements()) {
    if ((x.angle * m).denominator() != 1) throw DomainError("subgroup does not lie in the truncation");
  }
  long long count = 0;
  for (int f = 0; f < 2; ++f) {
    for (int k = 0; k < m; ++k) {
      for (int g = 0; g < OctahedralGroup::kOrder; ++g) count += maps_into({f == 1, Angle(k, m), g}, a, a);
    }
  }
  return count / a.size();
}

long long o2_n_count(const ConcreteSubgroupO2& l0, const ConcreteSubgroupO2& h0) {
  if (!l0.has_reflection() || !h0.has_reflection()) throw DomainError("n(L,H) needs reflection types");
  ConcreteSubgroupO2 l = standardize(l0), h = standardize(h0);
  if (h.size() % l.size() != 0 || h.rotation_count() % l.rotation_count() != 0) return 0;
  long long hits = 0, norm = 0;
  for (const auto& c : conjugators(h.rotation_count(), true)) {
    // cHc^-1 contains L iff c^-1 L c lies in H.
    if (maps_into(g_inv(c), l, h)) ++hits;
    if (maps_into(c, h, h)) ++norm;
  }
  return hits / norm;
}

ConcreteSubgroupO2 pullback(const ConcreteSubgroupO2& a, int l) {
  if (l < 1) throw DomainError("Fourier mode must be positive");
  if (l == 1) return a;
  std::vector<GElement> gens{{false, Angle(1, l), OctahedralGroup::get().identity()}};
  for (const auto& x : a.generators()) gens.push_back({x.flip, x.angle / l, x.g});
  return ConcreteSubgroupO2::generated(gens);
}

std::vector<ConcreteSubgroupO2> reflection_subgroups(const ConcreteSubgroupO2& a) {
  const auto& el = a.elements();
  int n = a.size();
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      GElement p = g_mul(el[i], el[j]);
      mul[i][j] = static_cast<int>(std::lower_bound(el.begin(), el.end(), p) - el.begin());
    }
  }
  int id = static_cast<int>(std::lower_bound(el.begin(), el.end(), g_identity()) - el.begin());
  using Bits = std::vector<bool>;
  auto closure = [&](const Bits& seed) {
    Bits s(n, false);
    std::vector<int> gens;
    for (int i = 0; i < n; ++i) {
      if (seed[i]) gens.push_back(i);
    }
    s[id] = true;
    std::vector<int> frontier{id};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier) {
        for (int g : gens) {
          int y = mul[x][g];
          if (!s[y]) {
            s[y] = true;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    return s;
  };
  std::set<Bits> cyclic;
  for (int i = 0; i < n; ++i) {
    Bits seed(n, false);
    seed[i] = true;
    cyclic.insert(closure(seed));
  }
  std::set<Bits> all(cyclic.begin(), cyclic.end());
  std::vector<Bits> frontier(cyclic.begin(), cyclic.end());
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const auto& s : frontier) {
      for (const auto& c : cyclic) {
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) inside = !c[i] || s[i];
        if (inside) continue;
        Bits u(n);
        for (int i = 0; i < n; ++i) u[i] = s[i] || c[i];
        Bits t = closure(u);
        if (all.insert(t).second) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  std::vector<ConcreteSubgroupO2> out;
  for (const auto& s : all) {
    std::vector<GElement> members;
    bool refl = false;
    for (int i = 0; i < n; ++i) {
      if (s[i]) {
        members.push_back(el[i]);
        refl = refl || el[i].flip;
      }
    }
    if (!refl) continue;
    out.push_back(ConcreteSubgroupO2::generated(small_generating_set(members)));
  }
  return out;
}

bool O2Shape::operator<(const O2Shape& o) const {
  return std::tie(dihedral, n, kernel_dihedral, m, spatial, spatial_kernel, order, rotation_spatial) <
         std::tie(o.dihedral, o.n, o.kernel_dihedral, o.m, o.spatial, o.spatial_kernel, o.order, o.rotation_spatial);
}

bool O2Shape::operator==(const O2Shape& o) const { return !(*this < o) && !(o < *this); }

O2Shape describe(const ConcreteSubgroupO2& a) {
  const auto& G = OctahedralGroup::get();
  const auto& cat = SubgroupCatalog::get();
  O2Shape s;
  std::set<Angle> rot, kernel_rot;
  bool kernel_refl = false;
  std::vector<int> k, ko, kr;
  for (const auto& x : a.elements()) {
    if (!x.flip) kr.push_back(x.g);
    if (!x.flip) rot.insert(x.angle);
    if (x.g == G.identity()) {
      if (x.flip) kernel_refl = true;
      else kernel_rot.insert(x.angle);
    }
    k.push_back(x.g);
    if (!x.flip && x.angle == Angle(0)) ko.push_back(x.g);
  }
  s.dihedral = a.has_reflection();
  s.n = static_cast<int>(rot.size());
  s.kernel_dihedral = kernel_refl;
  s.m = static_cast<int>(kernel_rot.size());
  s.spatial = cat.class_of(G.closure(k));
  s.spatial_kernel = cat.class_of(G.closure(ko));
  s.order = a.size();
  s.rotation_spatial = cat.class_of(G.closure(kr));
  if (s.spatial < 0 || s.spatial_kernel < 0) throw ConsistencyPanic("spatial projection outside the catalog");
  return s;
}

namespace {

std::string o2_name(bool dihedral, int n) { return std::string(dihedral ? "D_" : "Z_") + std::to_string(n); }

}  // namespace

std::string shape_label(const O2Shape& s) {
  const auto& cat = SubgroupCatalog::get();
  const std::string& k = cat.at(s.spatial).label;
  const std::string& ko = cat.at(s.spatial_kernel).label;
  bool direct = s.dihedral == s.kernel_dihedral && s.n == s.m && s.spatial == s.spatial_kernel;
  if (direct) return o2_name(s.dihedral, s.n) + " x " + k;
  int q = s.n / s.m;
  // H/H_o is cyclic unless a dihedral projection has a rotation kernel.
  bool dihedral_quotient = s.dihedral && !s.kernel_dihedral;
  bool is_z2 = dihedral_quotient ? q == 1 : q == 2;
  std::string out = o2_name(s.dihedral, s.n) + "^{" + o2_name(s.kernel_dihedral, s.m) + "} x";
  if (!is_z2) out += "_{" + o2_name(dihedral_quotient, q) + "}";
  if (ko != "Z_1") out += "^{" + ko + "}";
  out += " " + k;
  // The three index-two subgroups of a Klein quotient give different classes.
  if (dihedral_quotient && q == 2 && s.rotation_spatial >= 0) out += " [rot " + cat.at(s.rotation_spatial).label + "]";
  return out;
}

namespace {

std::string strip(std::string_view text) {
  std::string s(text);
  auto replace_all = [&](const std::string& from, const std::string& to) {
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  };
  replace_all("\\times", "x");
  replace_all("×", "x");
  replace_all("\\mathbb", "");
  std::string out;
  for (char c : s) {
    if (c != ' ') out += c;
  }
  return out;
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ') out += c;
  }
  return out;
}

// Catalog label whose space-free form equals the token.
std::string spatial_label(const std::string& token) {
  const auto& cat = SubgroupCatalog::get();
  std::string t = token;
  // Drop one level of braces around a bare label.
  if (t.size() >= 2 && t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
  for (const auto& c : cat.classes()) {
    if (squeeze(c.label) == t) return c.label;
  }
  throw DomainError("unknown spatial subgroup '" + token + "'");
}

// Reads a braced group starting at s[i] == '{', returning its body.
std::string braced(const std::string& s, std::size_t& i) {
  if (i >= s.size() || s[i] != '{') throw DomainError("expected '{' in orbit type label '" + s + "'");
  int depth = 0;
  std::size_t start = i + 1;
  for (; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) {
      std::string body = s.substr(start, i - start);
      ++i;
      return body;
    }
  }
  throw DomainError("unbalanced braces in orbit type label '" + s + "'");
}

struct Family {
  bool dihedral = true;
  int mult = 1;
  bool scaled = false;
};

// "D_{2l}", "D_l", "Z_1", "{D_{2l}}".
Family parse_family(std::string s) {
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  if (s.size() < 3 || (s[0] != 'D' && s[0] != 'Z') || s[1] != '_') throw DomainError("bad O(2) family '" + s + "'");
  Family f;
  f.dihedral = s[0] == 'D';
  std::string arg = s.substr(2);
  if (arg.size() >= 2 && arg.front() == '{' && arg.back() == '}') arg = arg.substr(1, arg.size() - 2);
  if (arg.empty()) throw DomainError("bad O(2) family '" + s + "'");
  if (arg.back() == 'l') {
    f.scaled = true;
    arg.pop_back();
  }
  if (arg.empty()) {
    f.mult = 1;
  } else {
    for (char c : arg) {
      if (c < '0' || c > '9') throw DomainError("bad O(2) family '" + s + "'");
    }
    f.mult = std::stoi(arg);
  }
  if (f.mult < 1) throw DomainError("bad O(2) family '" + s + "'");
  return f;
}

int family_order(bool dihedral, int n) { return dihedral ? 2 * n : n; }

}  // namespace

OrbitTypeO2 OrbitTypeO2::parse(std::string_view text) {
  std::string s = strip(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  // The product sign is the first 'x' outside braces.
  std::size_t cut = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}') --depth;
    if (s[i] == 'x' && depth == 0) {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos) throw DomainError("orbit type label without product sign: '" + std::string(text) + "'");
  std::string left = s.substr(0, cut), right = s.substr(cut + 1);

  OrbitTypeO2 t;
  Family h, ho;
  bool has_kernel = false;
  {
    // Split "D_{2l}^{D_l}" at the '^' outside braces.
    std::size_t hat = std::string::npos;
    int d = 0;
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i] == '{') ++d;
      if (left[i] == '}') --d;
      if (left[i] == '^' && d == 0) {
        hat = i;
        break;
      }
    }
    if (hat == std::string::npos) {
      h = parse_family(left);
      ho = h;
    } else {
      h = parse_family(left.substr(0, hat));
      std::size_t i = hat + 1;
      std::string body = braced(left, i);
      if (i != left.size()) throw DomainError("trailing text in '" + left + "'");
      ho = parse_family(body);
      has_kernel = true;
    }
  }
  std::size_t i = 0;
  std::string ko;
  bool has_ko = false;
  while (i < right.size() && (right[i] == '_' || right[i] == '^')) {
    char kind = right[i++];
    std::string body = braced(right, i);
    if (kind == '_') {
      t.quotient = body;
    } else {
      ko = body;
      has_ko = true;
    }
  }
  t.spatial = spatial_label(right.substr(i));
  if (has_kernel) {
    t.spatial_kernel = has_ko ? spatial_label(ko) : "Z_1";
  } else {
    if (has_ko) throw DomainError("spatial kernel given for a direct product: '" + std::string(text) + "'");
    t.spatial_kernel = t.spatial;
  }
  t.dihedral = h.dihedral;
  t.mult = h.mult;
  t.kernel_dihedral = ho.dihedral;
  t.kernel_mult = ho.mult;
  t.scaled = h.scaled || ho.scaled;
  if (has_kernel && h.scaled != ho.scaled) throw DomainError("mixed l-scaling in '" + std::string(text) + "'");

  // Goursat: |H/H_o| = |K/K_o|. An omitted spatial kernel that is not Z_1 by order is left open.
  const auto& cat = SubgroupCatalog::get();
  int k_order = cat.at(cat.index_of(t.spatial)).order;
  int ho_order = family_order(t.kernel_dihedral, t.kernel_mult);
  int h_order = family_order(t.dihedral, t.mult);
  if (t.mult % t.kernel_mult != 0 || (t.kernel_dihedral && !t.dihedral) || h_order % ho_order != 0 ||
      k_order % (h_order / ho_order) != 0)
    throw DomainError("quotients of '" + std::string(text) + "' have different orders");
  int ko_order = cat.at(cat.index_of(t.spatial_kernel)).order;
  if (h_order / ho_order != k_order / ko_order) {
    if (has_kernel && !has_ko) t.spatial_kernel.clear();
    else throw DomainError("quotients of '" + std::string(text) + "' have different orders");
  }
  return t;
}

O2Shape OrbitTypeO2::shape(int l) const {
  const auto& cat = SubgroupCatalog::get();
  int s = scaled ? l : 1;
  O2Shape r;
  r.dihedral = dihedral;
  r.n = mult * s;
  r.kernel_dihedral = kernel_dihedral;
  r.m = kernel_mult * s;
  r.spatial = cat.index_of(spatial);
  r.spatial_kernel = spatial_kernel.empty() ? -1 : cat.index_of(spatial_kernel);
  int q = family_order(dihedral, r.n) / family_order(kernel_dihedral, r.m);
  r.order = family_order(dihedral, r.n) * cat.at(r.spatial).order / q;
  return r;
}

std::string OrbitTypeO2::format(int l) const {
  O2Shape s = shape(l);
  if (s.spatial_kernel >= 0) return shape_label(s);
  s.spatial_kernel = SubgroupCatalog::get().trivial();
  std::string out = shape_label(s);
  std::size_t x = out.find(" x");
  return out.insert(x + 2, "^{?}");
}

namespace {

// Equality with an open spatial kernel accepted as a wildcard.
bool shape_fits(const O2Shape& got, const O2Shape& want) {
  O2Shape w = want;
  if (w.spatial_kernel < 0) w.spatial_kernel = got.spatial_kernel;
  if (w.rotation_spatial < 0) w.rotation_spatial = got.rotation_spatial;
  return got == w;
}

}  // namespace

bool OrbitTypeO2::matches(const ConcreteSubgroupO2& a, int l) const { return shape_fits(describe(a), shape(l)); }

std::vector<ConcreteSubgroupO2> instantiate_all(const OrbitTypeO2& t, int l) {
  if (l < 1) throw DomainError("Fourier mode must be positive");
  const auto& G = OctahedralGroup::get();
  const auto& cat = SubgroupCatalog::get();
  O2Shape want = t.shape(l);
  int e = G.identity();
  GElement rot{false, Angle(1, want.n), e};
  GElement kappa{true, Angle(0), e};
  std::vector<GElement> kernel_gens{{false, Angle(1, want.m), e}};
  if (want.kernel_dihedral) kernel_gens.push_back(kappa);

  Mask k = cat.at(want.spatial).rep;
  std::vector<int> k_elems = G.elements(k);
  // Normal subgroups of K in the requested class, or of the forced order when the class is open.
  std::vector<int> classes;
  if (want.spatial_kernel >= 0) {
    classes.push_back(want.spatial_kernel);
  } else {
    int ko_order = want.order / family_order(want.dihedral, want.n) * family_order(want.kernel_dihedral, want.m);
    for (int c = 0; c < cat.size(); ++c) {
      if (cat.at(c).order == ko_order) classes.push_back(c);
    }
  }
  std::vector<Mask> normals;
  for (int cls : classes) {
    for (Mask c : cat.at(cls).conjugates) {
      if ((c & k) != c) continue;
      bool normal = true;
      for (int g : k_elems) normal = normal && G.conjugate(c, g) == c;
      if (normal) normals.push_back(c);
    }
  }
  std::vector<ConcreteSubgroupO2> found;
  for (Mask n : normals) {
    std::vector<GElement> base = kernel_gens;
    for (int g : G.elements(n)) base.push_back({false, Angle(0), g});
    // Images of the quotient generators: cosets of N represented by elements of K.
    std::vector<int> reps;
    Mask seen = 0;
    for (int g : k_elems) {
      if (mask_has(seen, g)) continue;
      reps.push_back(g);
      for (int x : G.elements(n)) seen |= Mask(1) << G.mul(g, x);
    }
    std::vector<int> second = want.dihedral ? reps : std::vector<int>{e};
    for (int x : reps) {
      for (int y : second) {
        std::vector<GElement> gens = base;
        gens.push_back({false, rot.angle, x});
        if (want.dihedral) gens.push_back({true, Angle(0), y});
        ConcreteSubgroupO2 a = ConcreteSubgroupO2::generated(gens);
        if (a.size() != want.order) continue;
        O2Shape got = describe(a);
        if (!shape_fits(got, want)) continue;
        // K must be the catalog representative itself, with kernel N.
        Mask proj = 0, kern = 0;
        for (const auto& z : a.elements()) {
          proj |= Mask(1) << z.g;
          if (!z.flip && z.angle == Angle(0)) kern |= Mask(1) << z.g;
        }
        if (proj != k || kern != n) continue;
        bool fresh = true;
        for (const auto& b : found) fresh = fresh && !conjugate_test(a, b);
        if (fresh) found.push_back(a);
      }
    }
  }
  if (found.empty()) throw DomainError("no amalgam realizes '" + t.format(l) + "': quotients are not isomorphic");
  return found;
}

ConcreteSubgroupO2 instantiate(const OrbitTypeO2& t, int l) {
  auto all = instantiate_all(t, l);
  if (all.size() != 1)
    throw DomainError("'" + t.format(l) + "' has " + std::to_string(all.size()) + " non-conjugate realizations");
  return all.front();
}

namespace {

int irrep_index(const std::string& j) {
  static const std::map<std::string, int> idx = {{"0", 0}, {"4", 4}, {"6", 6}, {"7", 7}, {"7*", 7}, {"8", 8}, {"9", 9}};
  auto it = idx.find(j);
  if (it == idx.end()) throw DomainError("unknown isotypic index '" + j + "'");
  return it->second;
}

Eigen::MatrixXd column_space(const Eigen::MatrixXd& p, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (p + p.transpose()));
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > tol) keep.push_back(i);
  }
  Eigen::MatrixXd q(p.rows(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) q.col(c) = es.eigenvectors().col(keep[c]);
  return q;
}

}  // namespace

Eigen::MatrixXd irreducible_basis(const std::string& j) {
  int idx = irrep_index(j);
  const auto& G = OctahedralGroup::get();
  const auto& row = character_table()[idx];
  int dim = row[0];
  Mat18 p = Mat18::Zero();
  for (int g = 0; g < OctahedralGroup::kOrder; ++g) p += double(row[G.class_of(g)]) * G.action(g);
  p *= double(dim) / OctahedralGroup::kOrder;
  Eigen::MatrixXd q = column_space(p, 0.5);
  if (q.cols() == dim) return q;
  // Several copies: an averaged symmetric operator commutes with the action and separates them.
  Mat18 x = Mat18::Zero();
  // A diagonal seed averages to a scalar; the Hilbert matrix does not.
  for (int i = 0; i < 18; ++i) {
    for (int k = 0; k < 18; ++k) x(i, k) = 1.0 / (1 + i + k);
  }
  Mat18 s = Mat18::Zero();
  for (int g = 0; g < OctahedralGroup::kOrder; ++g) s += G.action(g) * x * G.action(g).transpose();
  Eigen::MatrixXd c = q.transpose() * s * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (c + c.transpose()));
  Eigen::MatrixXd out = q * es.eigenvectors().leftCols(dim);
  double spread = es.eigenvalues()(dim - 1) - es.eigenvalues()(0);
  if (spread > 1e-8 * std::abs(es.eigenvalues()(0)) + 1e-8 || es.eigenvalues()(dim) - es.eigenvalues()(dim - 1) < 1e-6)
    throw ConsistencyPanic("averaged operator does not split the isotypic component of W_" + j);
  return out;
}

Eigen::MatrixXd mode_matrix(const Eigen::MatrixXd& q, int l, const GElement& x) {
  const auto& G = OctahedralGroup::get();
  int d = static_cast<int>(q.cols());
  Eigen::MatrixXd r = q.transpose() * G.action(x.g) * q;
  double th = 2.0 * M_PI * l * boost::rational_cast<double>(x.angle);
  double c = std::cos(th), s = std::sin(th);
  Eigen::MatrixXd m(2 * d, 2 * d);
  if (!x.flip) {
    m << c * r, s * r, -s * r, c * r;
  } else {
    m << c * r, s * r, s * r, -c * r;
  }
  return m;
}

namespace {

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol = 1e-9) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) rank += s(i) > tol;
  return svd.matrixV().rightCols(a.cols() - rank);
}

std::vector<long long> projector_key(const Eigen::MatrixXd& u) {
  Eigen::MatrixXd p = u * u.transpose();
  std::vector<long long> k;
  k.push_back(u.cols());
  for (int i = 0; i < p.size(); ++i) k.push_back(std::llround(p.data()[i] * 1e6));
  return k;
}

}  // namespace

std::vector<OrbitTypeDim> isotropy_lattice(const Eigen::MatrixXd& q, int l) {
  int m = 12 * l;
  int dim = 2 * static_cast<int>(q.cols());
  std::vector<GElement> amb;
  for (int f = 0; f < 2; ++f) {
    for (int k = 0; k < m; ++k) {
      for (int g = 0; g < OctahedralGroup::kOrder; ++g) amb.push_back({f == 1, Angle(k, m), g});
    }
  }
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  std::vector<Eigen::MatrixXd> shifted;
  shifted.reserve(amb.size());
  for (const auto& x : amb) shifted.push_back(mode_matrix(q, l, x) - id);

  std::map<std::vector<long long>, Eigen::MatrixXd> spaces;
  std::vector<Eigen::MatrixXd> frontier;
  for (std::size_t i = 0; i < amb.size(); ++i) {
    if (!amb[i].flip) continue;
    Eigen::MatrixXd u = null_space(shifted[i]);
    if (u.cols() == 0) continue;
    if (spaces.emplace(projector_key(u), u).second) frontier.push_back(u);
  }
  while (!frontier.empty()) {
    std::vector<Eigen::MatrixXd> next;
    for (const auto& u : frontier) {
      for (std::size_t i = 0; i < amb.size(); ++i) {
        Eigen::MatrixXd a = shifted[i] * u;
        if (a.cwiseAbs().maxCoeff() < 1e-9) continue;
        Eigen::MatrixXd c = null_space(a);
        if (c.cols() == 0) continue;
        Eigen::MatrixXd w = (u * c).householderQr().householderQ() * Eigen::MatrixXd::Identity(dim, c.cols());
        if (spaces.emplace(projector_key(w), w).second) next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  std::vector<OrbitTypeDim> out;
  for (const auto& [key, u] : spaces) {
    std::vector<GElement> stab;
    for (std::size_t i = 0; i < amb.size(); ++i) {
      if ((shifted[i] * u).cwiseAbs().maxCoeff() < 1e-9) stab.push_back(amb[i]);
    }
    std::sort(stab.begin(), stab.end());
    ConcreteSubgroupO2 h = ConcreteSubgroupO2::generated(small_generating_set(stab));
    if (h.size() != static_cast<int>(stab.size())) throw ConsistencyPanic("stabilizer is not a subgroup");
    bool fresh = true;
    for (const auto& t : out) fresh = fresh && !conjugate_test(t.group, h);
    if (fresh) out.push_back({standardize(h), static_cast<int>(u.cols())});
  }
  return out;
}

O2Catalog& O2Catalog::shared() {
  static O2Catalog c;
  return c;
}

O2Catalog::O2Catalog() { entries_.push_back({ConcreteSubgroupO2(), O2Shape(), 1, "O(2) x S_4^p"}); }

int O2Catalog::find(const ConcreteSubgroupO2& a) {
  std::lock_guard<std::recursive_mutex> g(lock_);
  return find_locked(a);
}

std::optional<int> O2Catalog::lookup(const ConcreteSubgroupO2& a) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  return lookup_locked(a);
}

std::optional<int> O2Catalog::lookup_locked(const ConcreteSubgroupO2& a0) const {
  if (!a0.has_reflection()) throw DomainError("catalog holds reflection types only");
  ConcreteSubgroupO2 a = standardize(a0);
  O2Shape s = describe(a);
  auto it = buckets_.find(s);
  if (it == buckets_.end()) return std::nullopt;
  for (int i : it->second) {
    if (conjugate_test(a, entries_[i].rep)) return i;
  }
  return std::nullopt;
}

int O2Catalog::find_locked(const ConcreteSubgroupO2& a0) {
  if (auto i = lookup_locked(a0)) return *i;
  ConcreteSubgroupO2 a = standardize(a0);
  Entry e;
  e.rep = a;
  e.shape = describe(a);
  e.weyl = *weyl_order_o2(a);
  e.label = shape_label(e.shape);
  int idx = static_cast<int>(entries_.size());
  entries_.push_back(std::move(e));
  auto& bucket = buckets_[entries_.back().shape];
  bucket.push_back(idx);
  // Distinct classes sharing one shape get a numbered label.
  if (bucket.size() > 1) {
    for (std::size_t k = 0; k < bucket.size(); ++k)
      entries_[bucket[k]].label = shape_label(entries_[bucket[k]].shape) + " #" + std::to_string(k + 1);
  }
  return idx;
}

const ConcreteSubgroupO2& O2Catalog::rep(int h) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  if (h <= 0 || h >= static_cast<int>(entries_.size())) throw DomainError("no concrete representative for class");
  return entries_[h].rep;
}

const O2Shape& O2Catalog::shape(int h) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  return entries_.at(h).shape;
}

int O2Catalog::size() const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  return static_cast<int>(entries_.size());
}

long long O2Catalog::order(int h) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  if (h == 0) return std::numeric_limits<long long>::max();
  return entries_.at(h).rep.size();
}

long long O2Catalog::weyl(int h) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  return entries_.at(h).weyl;
}

long long O2Catalog::n_count(int l, int h) const {
  if (h == 0) return 1;
  if (l == 0) return 0;
  std::lock_guard<std::recursive_mutex> g(lock_);
  auto key = std::make_pair(l, h);
  auto it = n_cache_.find(key);
  if (it != n_cache_.end()) return it->second;
  const O2Shape& sl = entries_.at(l).shape;
  const O2Shape& sh = entries_.at(h).shape;
  long long v = 0;
  if (sh.order % sl.order == 0 && sh.n % sl.n == 0 && SubgroupCatalog::get().subconjugate(sl.spatial, sh.spatial))
    v = o2_n_count(entries_.at(l).rep, entries_.at(h).rep);
  n_cache_[key] = v;
  return v;
}

std::vector<int> O2Catalog::subclasses(int h) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  auto it = sub_cache_.find(h);
  if (it != sub_cache_.end()) return it->second;
  std::set<int> ids;
  auto* self = const_cast<O2Catalog*>(this);
  for (const auto& s : reflection_subgroups(entries_.at(h).rep)) ids.insert(self->find_locked(s));
  std::vector<int> out(ids.begin(), ids.end());
  sub_cache_[h] = out;
  return out;
}

std::vector<int> O2Catalog::common_subclasses(int h, int k) const {
  if (h == 0 && k == 0) return {0};
  if (h == 0) return subclasses(k);
  if (k == 0) return subclasses(h);
  int small = order(h) <= order(k) ? h : k;
  int other = small == h ? k : h;
  std::vector<int> out;
  for (int c : subclasses(small)) {
    if (n_count(c, other) > 0) out.push_back(c);
  }
  return out;
}

std::string O2Catalog::label(int h) const {
  std::lock_guard<std::recursive_mutex> g(lock_);
  return entries_.at(h).label;
}

std::string degree_irrep(const std::string& j) {
  if (j == "7*") return "7";
  if (j == "0" || j == "4" || j == "7" || j == "8" || j == "9") return j;
  throw DomainError("no basic degree for isotypic index '" + j + "'");
}

const std::vector<DegreeTerm>& tabulated_degree_terms(const std::string& j0) {
  static const std::map<std::string, std::vector<DegreeTerm>> table = {
      {"0", {{-1, "D_l x S_4^p", true}}},
      {"4",
       {{4, "D_l^{Z_l} x^{V_4^p} D_4^p", false},
        {1, "D_l x V_4^p", false},
        {-1, "D_{2l}^{D_l} x^{V_4^p} D_4^p", true},
        {-1, "D_l x D_4^p", true},
        {-2, "D_{3l}^{Z_l} x^{V_4^p}_{D_3} S_4^p", true}}},
      {"7",
       {{-2, "D_{2l}^{Z_l} x_{Z_2^p} Z_2^p", false},
        {-1, "D_{2l}^{D_l} x_{Z_1^p} Z_1^p", false},
        {2, "D_{2l}^{Z_l} x^{D_1^z}_{D_2} D_2^p", false},
        {2, "D_{2l}^{Z_l} x^{Z_2^-}_{D_2} D_2^p", false},
        {2, "D_{2l}^{Z_l} x^{Z_2^-}_{D_2} V_4^p", false},
        {2, "D_{2l}^{D_l} x^{D_1^z} D_1^p", false},
        {1, "D_{2l}^{D_l} x^{Z_2^-} Z_2^p", false},
        {-2, "D_{6l}^{Z_l} x_{D_3^p} D_3^p", true},
        {-2, "D_{4l}^{Z_l} x^{Z_2^-} D_4^p", true},
        {-1, "D_{2l}^{D_l} x^{D_2^d} D_2^p", true},
        {-1, "D_{2l}^{D_l} x^{D_3^z} D_3^p", true},
        {-1, "D_{2l}^{D_l} x^{D_4^z} D_4^p", true}}},
      {"8",
       {{-2, "D_l^{Z_l} x^{Z_1^p} Z_2^p", false},
        {-1, "D_l x Z_1^p", false},
        {2, "D_l^{Z_l} x^{D_1^p} D_2^p", false},
        {2, "D_{2l}^{Z_l} x^{Z_1^p}_{D_2} D_2^p", false},
        {2, "D_{2l}^{Z_l} x^{Z_1^p}_{V_4} V_4^p", false},
        {2, "D_l x D_1^p", false},
        {1, "D_{2l}^{D_l} x^{Z_1^p} Z_2^p", false},
        {-2, "D_{3l}^{Z_l} x_{D_3} D_3^p", true},
        {-2, "D_{4l}^{Z_l} x_{D_4} D_4^p", true},
        {-1, "D_{2l}^{D_l} x^{D_1^p} D_2^p", true},
        {-1, "D_l x D_3^p", true},
        {-1, "D_{2l}^{D_l} x^{D_2^p} D_4^p", true}}},
      {"9",
       {{-2, "D_{2l}^{Z_l} x_{Z_2^p} Z_2^p", false},
        {-1, "D_{2l}^{D_l} x_{Z_1^p} Z_1^p", false},
        {2, "D_{2l}^{Z_l} x^{D_1}_{Z_2^p} D_2^p", false},
        {2, "D_{2l}^{Z_l} x^{Z_2^-}_{D_2} D_2^p", false},
        {2, "D_{2l}^{Z_l} x^{Z_2^-}_{D_2} V_4^p", false},
        {2, "D_{2l}^{D_l} x^{D_1} D_1^p", false},
        {1, "D_{2l}^{D_l} x^{Z_2^-} Z_2^p", false},
        {-2, "D_{6l}^{Z_l} x_{D_3^p} D_3^p", true},
        {-2, "D_{4l}^{Z_l} x^{Z_2^-} D_4^p", true},
        {-1, "D_{2l}^{D_l} x^{D_2^d} D_2^p", true},
        {-1, "D_{2l}^{D_l} x^{D_3} D_3^p", true},
        {-1, "D_{2l}^{D_l} x^{D_4^d} D_4^p", true}}},
  };
  return table.at(degree_irrep(j0));
}

namespace {

struct DegreeCache {
  std::mutex lock;
  std::map<std::string, std::vector<OrbitTypeDim>> lattices;
  std::map<std::pair<std::string, std::string>, int> resolved;
};

DegreeCache& degree_cache() {
  static DegreeCache c;
  return c;
}

const std::vector<OrbitTypeDim>& lattice_for(const std::string& j) {
  auto& c = degree_cache();
  std::lock_guard<std::mutex> g(c.lock);
  auto it = c.lattices.find(j);
  if (it != c.lattices.end()) return it->second;
  return c.lattices.emplace(j, isotropy_lattice(irreducible_basis(j), 1)).first->second;
}

}  // namespace

int resolve_type(const std::string& j0, const std::string& label, int l) {
  std::string j = degree_irrep(j0);
  auto key = std::make_pair(j, label);
  int base = -1;
  {
    auto& c = degree_cache();
    std::lock_guard<std::mutex> g(c.lock);
    auto it = c.resolved.find(key);
    if (it != c.resolved.end()) base = it->second;
  }
  auto& cat = O2Catalog::shared();
  if (base < 0) {
    OrbitTypeO2 t = OrbitTypeO2::parse(label);
    std::vector<ConcreteSubgroupO2> cands = instantiate_all(t, 1);
    const auto& lattice = lattice_for(j);
    std::vector<int> hits;
    for (const auto& c : cands) {
      for (const auto& o : lattice) {
        if (conjugate_test(c, o.group)) {
          hits.push_back(cat.find(c));
          break;
        }
      }
    }
    if (cands.size() == 1 && hits.empty()) hits.push_back(cat.find(cands.front()));
    if (hits.size() != 1)
      throw CatalogError("'" + label + "' matches " + std::to_string(hits.size()) + " isotropy classes of W_" + j);
    base = hits.front();
    auto& c = degree_cache();
    std::lock_guard<std::mutex> g(c.lock);
    c.resolved[key] = base;
  }
  if (l == 1) return base;
  return cat.find(pullback(cat.rep(base), l));
}

BurnsideElement basic_degree_o2(const std::string& j, int l) {
  if (l < 1) throw DomainError("Fourier mode must be positive");
  auto& cat = O2Catalog::shared();
  BurnsideElement x = BurnsideElement::unit(&cat);
  for (const auto& t : tabulated_degree_terms(j)) x.add(resolve_type(j, t.label, l), t.coeff);
  return x;
}

std::vector<int> tabulated_maximal_types(const std::string& j, int l) {
  std::vector<int> out;
  for (const auto& t : tabulated_degree_terms(j)) {
    if (t.maximal) out.push_back(resolve_type(j, t.label, l));
  }
  return out;
}

BurnsideElement computed_basic_degree(const std::string& j0, int l) {
  if (l < 1) throw DomainError("Fourier mode must be positive");
  std::string j = degree_irrep(j0);
  auto& cat = O2Catalog::shared();
  std::vector<std::pair<int, int>> dims{{cat.unit(), 0}};
  for (const auto& o : lattice_for(j)) dims.push_back({cat.find(o.group), o.fixed_dim});
  BurnsideElement base = brouwer_degree(&cat, dims);
  if (l == 1) return base;
  // Orbit types of W_{j,l} are the preimages of those of W_{j,1}, with the same Weyl groups.
  BurnsideElement x(&cat);
  for (const auto& [h, c] : base.terms()) x.add(h == cat.unit() ? h : cat.find(pullback(cat.rep(h), l)), c);
  return x;
}

std::vector<int> computed_maximal_types(const std::string& j0, int l) {
  std::string j = degree_irrep(j0);
  auto& cat = O2Catalog::shared();
  std::vector<int> support;
  for (const auto& o : lattice_for(j)) support.push_back(cat.find(o.group));
  std::vector<int> out;
  for (int k : support) {
    bool maximal = true;
    for (int h : support) {
      if (h != k && cat.order(h) > cat.order(k) && cat.n_count(k, h) > 0) maximal = false;
    }
    if (maximal) out.push_back(l == 1 ? k : cat.find(pullback(cat.rep(k), l)));
  }
  return out;
}

BurnsideElement o2_multiply(const BurnsideElement& x, const BurnsideElement& y) {
  auto* cat = &O2Catalog::shared();
  if (x.catalog() != cat || y.catalog() != cat) throw DomainError("operands are not over O(2) x S_4^p");
  return multiply(x, y);
}

}  // namespace octa
