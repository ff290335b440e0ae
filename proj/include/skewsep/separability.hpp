#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewsep/tensor.hpp"

namespace skewsep {

// h in V_{m-1} with sum_j y_j h x^j = 1.
struct SeparabilityWitness {
  QuotientElement h;
  bool operator==(const SeparabilityWitness&) const = default;
};

struct HirataPair {
  QuotientElement g;  // in V_0
  QuotientElement h;  // in V_{m-1}
  bool operator==(const HirataPair&) const = default;
};

// sum_i g_i x^{m-1} h_i = 1 and sum_i g_i x^k h_i = 0 for k < m-1.
struct HirataWitness {
  std::vector<HirataPair> pairs;
  bool operator==(const HirataWitness&) const = default;
};

// 1 (x) 1 = sum_i g_i mu_i = sum_i mu_i g_i with g_i in V_0 and mu_i in the
// tensor centralizer.
struct HirataDefinitionTerm {
  QuotientElement g;
  TensorElement mu;
};
struct HirataDefinitionWitness {
  std::vector<HirataDefinitionTerm> terms;
};

// sum_j y_j h x^j
QuotientElement separability_sum(const QuotientRing& a, const QuotientElement& h);

// (g x^0 h, ..., g x^{m-1} h) flattened
Vec hirata_values(const QuotientRing& a, const QuotientElement& g, const QuotientElement& h);

// Lexicographically least h solving the constraints, or nullopt.
std::optional<SeparabilityWitness> separable_criterion(const QuotientRing& a);

// Lexicographically least separability element of the tensor square, or nullopt.
std::optional<TensorElement> separable_definition(const TensorSquare& t);

// Span membership over generator pairs of V_0 x V_{m-1}. The returned family
// is thinned greedily and then merged along a shared g or h.
std::optional<HirataWitness> hirata_criterion(const QuotientRing& a);

std::optional<HirataDefinitionWitness> hirata_definition(const TensorSquare& t);

// Plain re-evaluation of the defining identities, including membership of
// every component in its centralizer.
bool verify_witness(const QuotientRing& a, const SeparabilityWitness& w);
bool verify_witness(const QuotientRing& a, const HirataWitness& w);
bool verify_witness(const TensorSquare& t, const TensorElement& separability_element);
bool verify_witness(const TensorSquare& t, const HirataDefinitionWitness& w);

// sum_i g_i y_0 h_i = 1 and sum_i g_i y_k h_i = 0 for 1 <= k <= m-1.
bool yx_conversion_check(const QuotientRing& a, const HirataWitness& w);

struct DecisionReport {
  bool invariant = false;
  bool direct_invariant = false;
  // Only computed when rho D = D rho.
  std::optional<bool> coefficientwise_invariant;
  bool rho_d_commute = false;
  bool coeffs_in_b_rho = false;

  // nullopt means "unknown" (f not invariant).
  std::optional<bool> separable, hirata;
  std::optional<SeparabilityWitness> witness_h;
  std::optional<HirataWitness> witness_pairs;

  // nullopt when the definitional oracles were not run.
  std::optional<bool> separable_agreement, hirata_agreement;
  bool witnesses_verified = true;
  std::string note;

  std::map<std::string, double> timings_ms;
  // The quotient the witnesses live in; null when f is not invariant.
  std::shared_ptr<const QuotientRing> quotient;

  bool standard_assumptions() const { return rho_d_commute && coeffs_in_b_rho; }
};

struct DecideOptions {
  bool run_oracles = true;
};

DecisionReport decide(const std::shared_ptr<const SkewRing>& skew, const SkewPolynomial& f,
                      const DecideOptions& options = {});

inline constexpr const char* kNotInvariantNote = "not in B[X;rho,D]_(0)";
inline constexpr const char* kCriterionOnlyNote = "criterion-only, equivalence unproven here";

}  // namespace skewsep
