#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "octa/burnside.hpp"
#include "octa/force_field.hpp"
#include "octa/orbit_o2.hpp"
#include "octa/spectral.hpp"

namespace octa {

// lambda_{j,l} = l / alpha_j.
struct CriticalNumber {
  std::string j;
  int l = 1;
  double lambda = 0.0;
};

// alpha_j = sqrt(alpha_j^2) from the closed forms at the equilibrium of p, j in 0,4,7,7*,8,9.
std::map<std::string, double> reference_alphas(const PotentialParams& p = kReferenceParams);

// Every lambda_{j,l} <= lambda_max, ascending; equal values keep the label order of spectral_labels().
// Throws DomainError on a nonpositive alpha.
std::vector<CriticalNumber> critical_set(const std::map<std::string, double>& alphas, double lambda_max);

// Adjacent pairs closer than rel * lambda.
std::vector<std::pair<CriticalNumber, CriticalNumber>> critical_ties(const std::vector<CriticalNumber>& set,
                                                                     double rel = 1e-9);

struct ResonanceCheck {
  bool ok = true;
  std::string first, second;  // witness labels when ok is false
};

// Nonzero eigenvalues pairwise distinct beyond relative 1e-9 and one distinct label per eigenspace.
ResonanceCheck check_isotypic_nonresonance(const SpectrumReport& s);

enum class DegreeSource { tabulated, computed };

BurnsideElement basic_degree(DegreeSource source, const std::string& j, int l);
std::vector<int> maximal_types(DegreeSource source, const std::string& j);

// Critical numbers strictly below lambda_{j_o,1}. Throws DomainError when one of them ties with it.
std::vector<CriticalNumber> factors_below(const std::string& j_o, const std::map<std::string, double>& alphas);

// Coefficient of (H) in the product of the factors, from marks of the classes above H only:
// the overgroups of H among factor supports are closed under intersection and the mark
// homomorphism is inverted on that finite up-set.
long long local_coefficient(const std::vector<BurnsideElement>& factors, int h);

struct MaximalTerm {
  int cls = 0;
  std::string label;
  long long coeff = 0;
  long long weyl = 0;
};

struct BifurcationReport {
  CriticalNumber target;
  std::vector<CriticalNumber> factors;
  std::vector<MaximalTerm> maximal_types;  // from the local path
  std::optional<BurnsideElement> invariant;  // full product when it was run
  bool paths_agree = true;
};

struct InvariantOptions {
  DegreeSource source = DegreeSource::tabulated;
  std::map<std::string, double> alphas;  // empty: reference_alphas()
  // The full product runs when at most this many factors lie below the target.
  int full_product_limit = 5;
};

// omega(lambda_{j_o,1}) = prod_{lambda_{j,l} < lambda_{j_o,1}} deg_{W_{j,l}} * (deg_{W_{j_o,1}} - (G)).
BifurcationReport bifurcation_invariant(const std::string& j_o, const InvariantOptions& opt = {});

struct CensusEntry {
  std::string j;
  std::string label;
  long long coeff = 0;
  long long weyl = 0;
};

struct Census {
  std::vector<CensusEntry> entries;          // grouped by j in spectral order
  std::vector<std::string> distinct_labels;  // union over j, sorted
  bool complete() const { return distinct_labels.size() == 16; }
};

Census maximal_symmetry_census(const InvariantOptions& opt = {});

// A term of a printed expansion and its comparison with a computed element.
struct ListingDiff {
  std::string label;
  long long listed = 0;
  std::optional<long long> computed;  // empty when the label matches no class in the support
  int matches = 0;                    // classes of the support the label fits
};

// Compares printed terms against x; labels use the grammar of OrbitTypeO2::parse and are
// matched against the classes carrying nonzero coefficients in x.
std::vector<ListingDiff> compare_listing(const BurnsideElement& x,
                                         const std::vector<std::pair<long long, std::string>>& listing);

}  // namespace octa
