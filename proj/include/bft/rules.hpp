#ifndef BFT_RULES_HPP
#define BFT_RULES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bft/mass.hpp"

namespace bft {

// Upper bound on the number of experts fused jointly.
inline constexpr int kMaxExperts = 8;
// Upper bound on the focal-tuple enumeration (product of focal counts).
inline constexpr std::uint64_t kMaxTuples = 1'000'000;

// An ordered list of expert assignments over one model.  Experts are
// expected to pass validate(false); fuse_sequential feeds its own
// intermediate results (which may carry mass on EMPTY under the conjunctive
// rule) back in, so the rules themselves only check structure: 2 <= M <=
// kMaxExperts, a common model, and the kMaxTuples capacity bound
// (CapacityError).
struct FusionInput {
  std::vector<MassFunction> experts;
};

// Non-decreasing redistribution weight x -> x^alpha on [0,1], alpha >= 0.
class RedistributionWeight {
 public:
  static RedistributionWeight identity() { return RedistributionWeight(1.0); }
  static RedistributionWeight power(double alpha);

  double operator()(double x) const;
  double alpha() const { return alpha_; }

 private:
  explicit RedistributionWeight(double alpha) : alpha_(alpha) {}
  double alpha_;
};

// Conjunctive consensus: every focal tuple contributes its product to the
// model-canonical intersection; conflicting tuples accumulate on EMPTY.
MassFunction conjunctive(const FusionInput& input);

// Mixed conjunctive/disjunctive rule: a conflicting tuple's product moves to
// the union of the tuple's elements.
MassFunction dubois_prade(const FusionInput& input);

// Hybrid rule: like dubois_prade, with two fallbacks when the tuple union is
// itself empty under the model - first the union of the singleton spans of
// the tuple's elements, then the whole frame.
MassFunction dsmh(const FusionInput& input);

// Two-expert proportional conflict redistribution: each conflicting pair
// (X, Y) returns m1(X)^2 m2(Y) / (m1(X) + m2(Y)) to X and symmetrically to Y.
MassFunction pcr5_two(const FusionInput& input);

// M-expert PCR5: per conflicting tuple, masses of repeated propositions
// multiply into one accumulator entry per distinct proposition, and the
// tuple product is redistributed proportionally to those accumulated
// products.
MassFunction pcr5_general(const FusionInput& input);

// M-expert PCR6: per conflicting tuple, each expert receives back
// m_i(Y_i) * product / sum_j m_j(Y_j).
MassFunction pcr6(const FusionInput& input);

// PCR6 with per-expert weights f(m_i(Y_i)).  A conflicting tuple whose
// weights all vanish (possible when f underflows) is redistributed uniformly
// over the tuple's distinct propositions.
MassFunction pcr6f(const FusionInput& input, const RedistributionWeight& f);

// PCR6 variant grouping identical propositions: masses of a group sum before
// g is applied, and the tuple product is shared proportionally to the
// g-weighted groups.  Vanishing denominators fall back as in pcr6f.
MassFunction pcr6g(const FusionInput& input, const RedistributionWeight& g);

enum class BinaryRule { kConjunctive, kDuboisPrade, kPcr5 };

// Left fold of a two-expert rule over the expert list.  The PCR fold is
// order-dependent; the conjunctive fold equals the joint rule.
MassFunction fuse_sequential(const FusionInput& input, BinaryRule rule);

// m(EMPTY) of the conjunctive combination of `order` copies of m.
double auto_conflict(const MassFunction& m, int order);

}  // namespace bft

#endif  // BFT_RULES_HPP
