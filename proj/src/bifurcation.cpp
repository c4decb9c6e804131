#include "octa/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "octa/errors.hpp"

namespace octa {

std::map<std::string, double> reference_alphas(const PotentialParams& p) {
  Equilibrium eq = find_equilibrium(p);
  SpectrumReport s = closed_form_spectrum(StiffnessCoefficients::at_radius(p, eq.r0));
  std::map<std::string, double> out;
  for (const auto& e : s.spaces) {
    if (e.j == "6") continue;
    if (e.alpha_sq <= 0.0) throw DomainError("alpha^2 of W_" + e.j + " is not positive");
    out[e.j] = std::sqrt(e.alpha_sq);
  }
  return out;
}

namespace {

int label_rank(const std::string& j) {
  const auto& labels = spectral_labels();
  auto it = std::find(labels.begin(), labels.end(), j);
  return it == labels.end() ? static_cast<int>(labels.size()) : static_cast<int>(it - labels.begin());
}

}  // namespace

std::vector<CriticalNumber> critical_set(const std::map<std::string, double>& alphas, double lambda_max) {
  std::vector<CriticalNumber> out;
  for (const auto& [j, a] : alphas) {
    if (!(a > 0.0)) throw DomainError("alpha_" + j + " must be positive");
    for (int l = 1; l / a <= lambda_max; ++l) out.push_back({j, l, l / a});
  }
  std::stable_sort(out.begin(), out.end(), [](const CriticalNumber& x, const CriticalNumber& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    int rx = label_rank(x.j), ry = label_rank(y.j);
    return rx != ry ? rx < ry : x.l < y.l;
  });
  return out;
}

std::vector<std::pair<CriticalNumber, CriticalNumber>> critical_ties(const std::vector<CriticalNumber>& set,
                                                                     double rel) {
  std::vector<std::pair<CriticalNumber, CriticalNumber>> out;
  for (std::size_t i = 1; i < set.size(); ++i) {
    if (set[i].lambda - set[i - 1].lambda <= rel * set[i].lambda) out.push_back({set[i - 1], set[i]});
  }
  return out;
}

ResonanceCheck check_isotypic_nonresonance(const SpectrumReport& s) {
  std::vector<const Eigenspace*> spaces;
  std::set<std::string> labels;
  for (const auto& e : s.spaces) {
    if (e.j.empty()) return {false, "unlabeled", std::to_string(e.alpha_sq)};
    if (!labels.insert(e.j).second) return {false, e.j, e.j};
    if (e.j != "6") spaces.push_back(&e);
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t k = i + 1; k < spaces.size(); ++k) {
      double a = spaces[i]->alpha_sq, b = spaces[k]->alpha_sq;
      if (std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b))) return {false, spaces[i]->j, spaces[k]->j};
    }
  }
  return {};
}

BurnsideElement basic_degree(DegreeSource source, const std::string& j, int l) {
  return source == DegreeSource::tabulated ? basic_degree_o2(j, l) : computed_basic_degree(j, l);
}

std::vector<int> maximal_types(DegreeSource source, const std::string& j) {
  return source == DegreeSource::tabulated ? tabulated_maximal_types(j, 1) : computed_maximal_types(j, 1);
}

std::vector<CriticalNumber> factors_below(const std::string& j_o, const std::map<std::string, double>& alphas) {
  auto it = alphas.find(j_o);
  if (it == alphas.end()) throw DomainError("no alpha for W_" + j_o);
  double target = 1.0 / it->second;
  std::vector<CriticalNumber> out;
  for (const auto& c : critical_set(alphas, target * (1 + 1e-6))) {
    if (c.j == j_o && c.l == 1) continue;
    if (std::abs(c.lambda - target) <= 1e-9 * target)
      throw DomainError("resonance: lambda_{" + c.j + "," + std::to_string(c.l) + "} ties with lambda_{" + j_o + ",1}");
    if (c.lambda < target) out.push_back(c);
  }
  return out;
}

long long local_coefficient(const std::vector<BurnsideElement>& factors, int h) {
  auto& cat = O2Catalog::shared();
  const ConcreteSubgroupO2& hr = cat.rep(h);
  // Conjugates of factor classes that contain H.
  std::set<ConcreteSubgroupO2> above;
  for (const auto& f : factors) {
    for (const auto& [k, c] : f.terms()) {
      if (k == cat.unit() || cat.n_count(h, k) == 0) continue;
      const ConcreteSubgroupO2& kr = cat.rep(k);
      std::set<ConcreteSubgroupO2> seen;
      for (const auto& g : conjugators(kr.rotation_count(), true)) {
        GElement gi = g_inv(g);
        bool inside = true;
        for (const auto& x : hr.generators()) inside = inside && kr.contains(g_conj(gi, x));
        if (!inside) continue;
        ConcreteSubgroupO2 conj = kr.conjugated(g);
        if (seen.insert(conj).second) above.insert(conj);
      }
    }
  }
  // Close under intersection; every member contains H.
  std::vector<ConcreteSubgroupO2> frontier(above.begin(), above.end());
  std::vector<ConcreteSubgroupO2> base = frontier;
  while (!frontier.empty()) {
    std::vector<ConcreteSubgroupO2> next;
    for (const auto& a : frontier) {
      for (const auto& b : base) {
        ConcreteSubgroupO2 c = a.intersect(b);
        if (above.insert(c).second) next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  std::set<int> classes{h};
  for (const auto& a : above) classes.insert(cat.find(a));
  std::vector<int> up(classes.begin(), classes.end());
  std::sort(up.begin(), up.end(), [&](int a, int b) { return cat.order(a) > cat.order(b); });

  long long unit_coeff = 1;
  for (const auto& f : factors) unit_coeff *= f.coeff(cat.unit());
  std::map<int, long long> coeff;
  for (int x : up) {
    long long mark = 1;
    for (const auto& f : factors) {
      long long m = 0;
      for (const auto& [k, c] : f.terms()) m += c * cat.n_count(x, k) * cat.weyl(k);
      mark *= m;
    }
    long long s = mark - unit_coeff;
    for (const auto& [y, c] : coeff) {
      if (cat.order(y) > cat.order(x)) s -= c * cat.n_count(x, y) * cat.weyl(y);
    }
    long long w = cat.weyl(x);
    if (s % w != 0)
      throw ConsistencyPanic("non-integer mark inversion " + std::to_string(s) + "/" + std::to_string(w) + " at " +
                             cat.label(x));
    if (s != 0) coeff[x] = s / w;
  }
  auto it = coeff.find(h);
  return it == coeff.end() ? 0 : it->second;
}

namespace {

std::map<std::string, double> alphas_of(const InvariantOptions& opt) {
  return opt.alphas.empty() ? reference_alphas() : opt.alphas;
}

}  // namespace

BifurcationReport bifurcation_invariant(const std::string& j_o, const InvariantOptions& opt) {
  auto alphas = alphas_of(opt);
  auto& cat = O2Catalog::shared();
  BifurcationReport r;
  r.target = {j_o, 1, 1.0 / alphas.at(j_o)};
  r.factors = factors_below(j_o, alphas);

  std::vector<BurnsideElement> factors;
  for (const auto& c : r.factors) factors.push_back(basic_degree(opt.source, c.j, c.l));
  factors.push_back(basic_degree(opt.source, j_o, 1) - BurnsideElement::unit(&cat));

  if (static_cast<int>(r.factors.size()) <= opt.full_product_limit) {
    BurnsideElement p = BurnsideElement::unit(&cat);
    for (const auto& f : factors) p = o2_multiply(p, f);
    r.invariant = pi0_truncate(p);
  }
  for (int h : maximal_types(opt.source, j_o)) {
    MaximalTerm t{h, cat.label(h), local_coefficient(factors, h), cat.weyl(h)};
    if (r.invariant && r.invariant->coeff(h) != t.coeff) r.paths_agree = false;
    r.maximal_types.push_back(t);
  }
  return r;
}

Census maximal_symmetry_census(const InvariantOptions& opt) {
  Census c;
  std::set<std::string> labels;
  InvariantOptions local = opt;
  local.full_product_limit = -1;
  for (const auto& j : spectral_labels()) {
    if (j == "6") continue;
    BifurcationReport r = bifurcation_invariant(j, local);
    for (const auto& t : r.maximal_types) {
      if (t.coeff == 0) continue;
      c.entries.push_back({j, t.label, t.coeff, t.weyl});
      labels.insert(t.label);
    }
  }
  c.distinct_labels.assign(labels.begin(), labels.end());
  return c;
}

std::vector<ListingDiff> compare_listing(const BurnsideElement& x,
                                         const std::vector<std::pair<long long, std::string>>& listing) {
  auto& cat = O2Catalog::shared();
  std::vector<ListingDiff> out;
  for (const auto& [coeff, label] : listing) {
    ListingDiff d;
    d.label = label;
    d.listed = coeff;
    OrbitTypeO2 t;
    try {
      t = OrbitTypeO2::parse(label);
    } catch (const DomainError&) {
      out.push_back(d);
      continue;
    }
    long long sum = 0;
    for (const auto& [h, c] : x.terms()) {
      if (h == cat.unit() || !t.matches(cat.rep(h), 1)) continue;
      ++d.matches;
      sum += c;
    }
    if (d.matches > 0) d.computed = sum;
    out.push_back(d);
  }
  return out;
}

}  // namespace octa
