#ifndef BFT_MASS_HPP
#define BFT_MASS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bft/algebra.hpp"

namespace bft {

// Tolerance for the normalization check.
inline constexpr double kMassTolerance = 1e-9;

// A basic belief assignment: a sparse map from propositions (stored by raw
// atom set) to masses.  Entries with exactly zero mass are dropped on
// construction; validity (non-negativity, normalization, closed world) is
// checked by validate(), not by the constructor, so that invalid assignments
// can be built and then diagnosed.
class MassFunction {
 public:
  MassFunction(Model model, std::map<AtomSet, double> focal);

  static MassFunction from_pairs(
      const Model& model,
      const std::vector<std::pair<Proposition, double>>& focal);

  const Model& model() const { return model_; }
  const std::map<AtomSet, double>& focal() const { return focal_; }

  // Mass at an exact raw key; 0 when absent.
  double mass_raw(const AtomSet& raw) const;
  // Total mass of all keys canonically equal to the given proposition.
  double mass_canonical(const AtomSet& raw) const;
  double mass_canonical(const Proposition& p) const {
    return mass_canonical(p.atoms());
  }

  double total() const;

  // Checks the mass-function invariants; with allow_empty_mass=false also
  // requires m(EMPTY) = 0 (the closed-world condition on expert input).
  // Throws NegativeMassError, NotNormalizedError or EmptyFocalError.
  void validate(bool allow_empty_mass) const;

 private:
  Model model_;
  std::map<AtomSet, double> focal_;
};

// Decision functionals.  The lowercase three are the classical power-set
// forms, the capitalized three their hyper-power-set generalizations; on a
// Shafer model with closed-world masses the two families coincide.
enum class Functional { kMass, kBel, kPl, kBetP, kGenBel, kGenPl, kGpt };

std::string_view functional_name(Functional f);
std::optional<Functional> functional_from_name(std::string_view name);

// Credibility: sum of masses of non-empty subsets of x.
double bel(const MassFunction& m, const Proposition& x);
// Plausibility: sum of masses of propositions meeting x.
double pl(const MassFunction& m, const Proposition& x);
// Pignistic probability.  Cardinality counts the singletons contained in a
// proposition; throws TotalConflictError when m(EMPTY) = 1 and
// DegenerateFocalError on a positive-mass focal element containing no
// singleton.
double betp(const MassFunction& m, const Proposition& x);

// Generalized credibility, plausibility and pignistic transformation; the
// latter uses the DSm cardinality and throws DegenerateFocalError when a
// positive-mass focal element is empty under the model.
double gen_bel(const MassFunction& m, const Proposition& x);
double gen_pl(const MassFunction& m, const Proposition& x);
double gpt(const MassFunction& m, const Proposition& x);

double eval_functional(const MassFunction& m, Functional f,
                       const Proposition& x);

// The functional evaluated on every singleton, with the argmax decision.
// Ties are broken toward the lowest frame index and reported in full.
struct DecisionReport {
  Functional functional;
  std::vector<double> values;  // one per singleton, frame order
  int decision;
  std::vector<int> ties;
};

DecisionReport decide(const MassFunction& m, Functional f);

}  // namespace bft

#endif  // BFT_MASS_HPP
