#include "bft/mass.hpp"

#include <cmath>

#include "bft/errors.hpp"

namespace bft {

MassFunction::MassFunction(Model model, std::map<AtomSet, double> focal)
    : model_(std::move(model)), focal_(std::move(focal)) {
  for (auto it = focal_.begin(); it != focal_.end();) {
    it = it->second == 0.0 ? focal_.erase(it) : std::next(it);
  }
}

MassFunction MassFunction::from_pairs(
    const Model& model,
    const std::vector<std::pair<Proposition, double>>& focal) {
  std::map<AtomSet, double> map;
  for (const auto& [prop, mass] : focal) {
    if (!(prop.frame() == model.frame())) {
      throw ValidationError("focal proposition belongs to another frame");
    }
    if (!map.emplace(prop.atoms(), mass).second) {
      throw ValidationError("duplicate focal element '" +
                            print_proposition(prop) + "'");
    }
  }
  return {model, std::move(map)};
}

double MassFunction::mass_raw(const AtomSet& raw) const {
  auto it = focal_.find(raw);
  return it == focal_.end() ? 0.0 : it->second;
}

double MassFunction::mass_canonical(const AtomSet& raw) const {
  const AtomSet target = model_.canonical(raw);
  double sum = 0.0;
  for (const auto& [key, mass] : focal_) {
    if (model_.canonical(key) == target) sum += mass;
  }
  return sum;
}

double MassFunction::total() const {
  double sum = 0.0;
  for (const auto& [key, mass] : focal_) sum += mass;
  return sum;
}

void MassFunction::validate(bool allow_empty_mass) const {
  std::map<AtomSet, int> canon_seen;
  double sum = 0.0;
  for (const auto& [key, mass] : focal_) {
    if (mass < 0.0) {
      throw NegativeMassError("negative mass " + std::to_string(mass) +
                              " on '" + print_atoms(key, model_.frame()) +
                              "'");
    }
    if (!allow_empty_mass && key.none()) {
      throw EmptyFocalError("mass on EMPTY is not allowed in a closed world");
    }
    if (++canon_seen[model_.canonical(key)] > 1) {
      throw ValidationError(
          "two focal elements are equal under the model constraints");
    }
    sum += mass;
  }
  if (std::abs(sum - 1.0) > kMassTolerance) throw NotNormalizedError(sum);
}

std::string_view functional_name(Functional f) {
  switch (f) {
    case Functional::kMass: return "mass";
    case Functional::kBel: return "bel";
    case Functional::kPl: return "pl";
    case Functional::kBetP: return "betP";
    case Functional::kGenBel: return "Bel";
    case Functional::kGenPl: return "Pl";
    case Functional::kGpt: return "GPT";
  }
  return "?";
}

std::optional<Functional> functional_from_name(std::string_view name) {
  for (Functional f :
       {Functional::kMass, Functional::kBel, Functional::kPl,
        Functional::kBetP, Functional::kGenBel, Functional::kGenPl,
        Functional::kGpt}) {
    if (name == functional_name(f)) return f;
  }
  return std::nullopt;
}

namespace {

void check_frame(const MassFunction& m, const Proposition& x) {
  if (!(x.frame() == m.model().frame())) {
    throw ValidationError("proposition belongs to another frame");
  }
}

// Number of singletons contained in a raw atom set (the classical cardinality
// of a power-set element).
int singleton_count(const AtomSet& raw, const Frame& frame) {
  int c = 0;
  for (int i = 0; i < frame.size(); ++i) {
    if (frame.singleton(i).subset_of(raw)) ++c;
  }
  return c;
}

}  // namespace

double gen_bel(const MassFunction& m, const Proposition& x) {
  check_frame(m, x);
  const Model& model = m.model();
  const AtomSet cx = model.canonical(x.atoms());
  double sum = 0.0;
  for (const auto& [key, mass] : m.focal()) {
    const AtomSet cy = model.canonical(key);
    if (cy.any() && cy.subset_of(cx)) sum += mass;
  }
  return sum;
}

double gen_pl(const MassFunction& m, const Proposition& x) {
  check_frame(m, x);
  const Model& model = m.model();
  double sum = 0.0;
  for (const auto& [key, mass] : m.focal()) {
    if (!model.is_empty(key & x.atoms())) sum += mass;
  }
  return sum;
}

// The classical functionals evaluate subset/intersection tests modulo the
// model constraints, which is exactly the generalized computation; under a
// Shafer model on unions of singletons this reduces to the textbook forms.
double bel(const MassFunction& m, const Proposition& x) {
  return gen_bel(m, x);
}

double pl(const MassFunction& m, const Proposition& x) {
  return gen_pl(m, x);
}

double betp(const MassFunction& m, const Proposition& x) {
  check_frame(m, x);
  const Frame& frame = m.model().frame();
  double empty_mass = 0.0;
  double sum = 0.0;
  for (const auto& [key, mass] : m.focal()) {
    if (key.none()) {
      empty_mass += mass;
      continue;
    }
    const int card = singleton_count(key, frame);
    if (card == 0) {
      throw DegenerateFocalError("focal element '" +
                                 print_atoms(key, frame) +
                                 "' contains no singleton");
    }
    sum += mass * singleton_count(key & x.atoms(), frame) / card;
  }
  if (1.0 - empty_mass <= 0.0) throw TotalConflictError();
  return sum / (1.0 - empty_mass);
}

double gpt(const MassFunction& m, const Proposition& x) {
  check_frame(m, x);
  const Model& model = m.model();
  double sum = 0.0;
  for (const auto& [key, mass] : m.focal()) {
    if (key.none()) continue;  // conjunctive conflict output
    const int card = model.cardinality(key);
    if (card == 0) {
      throw DegenerateFocalError("focal element '" +
                                 print_atoms(key, model.frame()) +
                                 "' is empty under the model");
    }
    sum += mass * model.cardinality(key & x.atoms()) / card;
  }
  return sum;
}

double eval_functional(const MassFunction& m, Functional f,
                       const Proposition& x) {
  switch (f) {
    case Functional::kMass: return m.mass_canonical(x);
    case Functional::kBel: return bel(m, x);
    case Functional::kPl: return pl(m, x);
    case Functional::kBetP: return betp(m, x);
    case Functional::kGenBel: return gen_bel(m, x);
    case Functional::kGenPl: return gen_pl(m, x);
    case Functional::kGpt: return gpt(m, x);
  }
  throw Error("unknown functional");
}

DecisionReport decide(const MassFunction& m, Functional f) {
  const FramePtr& frame = m.model().frame_ptr();
  DecisionReport report;
  report.functional = f;
  report.values.reserve(frame->size());
  for (int i = 0; i < frame->size(); ++i) {
    report.values.push_back(
        eval_functional(m, f, Proposition(frame, frame->singleton(i))));
  }
  report.decision = 0;
  for (int i = 1; i < frame->size(); ++i) {
    if (report.values[i] > report.values[report.decision]) report.decision = i;
  }
  for (int i = 0; i < frame->size(); ++i) {
    if (report.values[i] == report.values[report.decision]) {
      report.ties.push_back(i);
    }
  }
  return report;
}

}  // namespace bft
