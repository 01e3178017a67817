#ifndef BFT_ANALYSIS_HPP
#define BFT_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bft/mass.hpp"
#include "bft/rng.hpp"
#include "bft/rules.hpp"

namespace bft {

// Rules available to the Monte Carlo experiments.  Expert samples put mass
// on singletons and the frame only, so these four cover the comparison; the
// two-expert PCR row of the tables is pcr6 (identical to pcr5 for M = 2).
enum class ExperimentRule { kConjunctive, kDuboisPrade, kPcr5, kPcr6 };

std::string_view experiment_rule_name(ExperimentRule r);
std::optional<ExperimentRule> experiment_rule_from_name(std::string_view name);

struct ExperimentConfig {
  int num_classes = 2;
  int num_experts = 2;
  std::int64_t num_samples = 1'000'000;
  std::uint64_t rng_seed = 0;
  std::vector<ExperimentRule> rules = {ExperimentRule::kPcr6,
                                       ExperimentRule::kDuboisPrade,
                                       ExperimentRule::kConjunctive};
  // Decisions are taken as the argmax of this functional over the
  // singletons.  The pignistic compromise is the default: on outputs whose
  // focal elements are singletons and the frame it agrees with mass, bel and
  // pl, and it is the one sensitive to the partial ignorances the mixed rule
  // produces.
  Functional functional = Functional::kBetP;
  int threads = 0;  // 0 = hardware concurrency
};

// One expert drawn uniformly from {x in [0,1]^n : sum x_i <= 1}; the
// remainder 1 - sum x_i sits on the frame.
struct ExpertSample {
  std::vector<double> class_mass;
  double theta;
};

// Rejection sampler: draws n uniforms until their sum is <= 1 (acceptance
// rate 1/n!).
ExpertSample sample_expert(int n, SplitMix64& rng);

struct PairStats {
  ExperimentRule rule_a;
  ExperimentRule rule_b;
  std::int64_t disagreements = 0;
  // Samples where either rule tied on its argmax; excluded from the rate.
  std::int64_t ties = 0;

  double rate(std::int64_t samples) const {
    const std::int64_t counted = samples - ties;
    return counted > 0 ? static_cast<double>(disagreements) / counted : 0.0;
  }
};

struct DecisionChangeTable {
  ExperimentConfig config;
  std::vector<PairStats> pairs;
};

// Fuses every sample with every configured rule and tallies pairwise
// decision disagreements.  Deterministic given the seed, independent of the
// thread count.
DecisionChangeTable decision_change_rates(const ExperimentConfig& cfg);

struct ConflictHistogram {
  ExperimentConfig config;
  int bins = 100;
  std::vector<std::int64_t> overall;                 // one count per bin
  std::vector<PairStats> pairs;                      // same order as below
  std::vector<std::vector<std::int64_t>> conditional;  // per pair, per bin
};

// Histogram of the conjunctive conflict m(EMPTY) over all samples, plus the
// conditional histograms restricted to the samples where each rule pair
// disagrees.
ConflictHistogram conflict_density(const ExperimentConfig& cfg, int bins);

// The two-expert/two-class closed forms: expert i has masses (a_i, b_i) on
// the classes and the rest on the frame.
struct ClosedFormParams {
  double a1, b1, a2, b2;
};

// Conjunctive and PCR masses evaluated from the closed-form expressions
// (fraction terms with vanishing denominators are dropped; their numerators
// are zero).  Returned over a two-class Shafer model, conjunctive first.
std::pair<MassFunction, MassFunction> closed_form_two(
    const ClosedFormParams& p);

// The three analytically stable configurations.
enum class StabilityCase { kA1EqB1, kA1EqB2, kA2Eq1MinusA1 };

std::string_view stability_case_name(StabilityCase c);

struct StabilityReport {
  StabilityCase stability_case;
  std::int64_t trials = 0;
};

// Samples the free parameters of the case and checks on every trial that the
// conjunctive and PCR argmax over {A, B} agree (tie sets compared; for the
// a2 = 1 - a1 case the decision must moreover be strictly A under both
// rules).  Throws StabilityViolation on the first counterexample.
StabilityReport stability_case_check(StabilityCase c, std::int64_t trials,
                                     std::uint64_t seed);

}  // namespace bft

#endif  // BFT_ANALYSIS_HPP
