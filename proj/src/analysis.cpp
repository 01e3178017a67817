#include "bft/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "bft/errors.hpp"

namespace bft {

std::string_view experiment_rule_name(ExperimentRule r) {
  switch (r) {
    case ExperimentRule::kConjunctive: return "conjunctive";
    case ExperimentRule::kDuboisPrade: return "dp";
    case ExperimentRule::kPcr5: return "pcr5";
    case ExperimentRule::kPcr6: return "pcr6";
  }
  return "?";
}

std::optional<ExperimentRule> experiment_rule_from_name(
    std::string_view name) {
  for (ExperimentRule r :
       {ExperimentRule::kConjunctive, ExperimentRule::kDuboisPrade,
        ExperimentRule::kPcr5, ExperimentRule::kPcr6}) {
    if (name == experiment_rule_name(r)) return r;
  }
  return std::nullopt;
}

std::string_view stability_case_name(StabilityCase c) {
  switch (c) {
    case StabilityCase::kA1EqB1: return "a1_eq_b1";
    case StabilityCase::kA1EqB2: return "a1_eq_b2";
    case StabilityCase::kA2Eq1MinusA1: return "a2_eq_1_minus_a1";
  }
  return "?";
}

namespace {

// Draws one expert into out[0..n-1], returning the remainder, by rejection.
double sample_expert_into(int n, SplitMix64& rng, double* out) {
  while (true) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      out[i] = rng.next_unit();
      sum += out[i];
    }
    if (sum <= 1.0) return 1.0 - sum;
  }
}

}  // namespace

ExpertSample sample_expert(int n, SplitMix64& rng) {
  if (n < 1 || n > kMaxSingletons) {
    throw ValidationError("class count out of range");
  }
  ExpertSample s;
  s.class_mass.resize(n);
  s.theta = sample_expert_into(n, rng, s.class_mass.data());
  return s;
}

namespace {

constexpr int kMaxCls = kMaxSingletons;

// All per-sample fusion state for experts whose focal elements are the
// singletons plus the frame.  w[expert][i] is the mass on class i,
// w[expert][n] the mass on the frame.
struct FastSample {
  int n = 0;
  int experts = 0;
  Functional functional = Functional::kBetP;
  double w[kMaxExperts][kMaxCls + 1];

  double conj_sing[kMaxCls];
  double conj_theta = 0.0;
  double conj_empty = 0.0;

  bool want_pcr5 = false, want_pcr6 = false, want_dp = false;
  double pcr5_add[kMaxCls], pcr5_theta = 0.0;
  double pcr6_add[kMaxCls], pcr6_theta = 0.0;
  double dp_add[kMaxCls], dp_theta_extra = 0.0;

  void reset(const ExperimentConfig& cfg) {
    n = cfg.num_classes;
    experts = cfg.num_experts;
    functional = cfg.functional;
    want_pcr5 = want_pcr6 = want_dp = false;
    for (ExperimentRule r : cfg.rules) {
      want_pcr5 |= r == ExperimentRule::kPcr5;
      want_pcr6 |= r == ExperimentRule::kPcr6;
      want_dp |= r == ExperimentRule::kDuboisPrade;
    }
  }

  void draw(SplitMix64& rng) {
    for (int j = 0; j < experts; ++j) {
      w[j][n] = sample_expert_into(n, rng, w[j]);
    }
  }

  void fuse() {
    // Conjunctive part: a tuple lands on class i iff every member is i or
    // the frame (and not all are the frame).
    double theta_prod = 1.0;
    for (int j = 0; j < experts; ++j) theta_prod *= w[j][n];
    conj_theta = theta_prod;
    double sing_total = 0.0;
    for (int i = 0; i < n; ++i) {
      double p = 1.0;
      for (int j = 0; j < experts; ++j) p *= w[j][i] + w[j][n];
      conj_sing[i] = p - theta_prod;
      sing_total += conj_sing[i];
    }
    conj_empty = 1.0 - sing_total - theta_prod;

    if (!(want_pcr5 || want_pcr6 || want_dp)) return;
    for (int i = 0; i < n; ++i) {
      pcr5_add[i] = pcr6_add[i] = dp_add[i] = 0.0;
    }
    pcr5_theta = pcr6_theta = dp_theta_extra = 0.0;
    int digits[kMaxExperts];
    enumerate_conflicts(0, 1.0, 0.0, -1, false, digits);
  }

  // Walks all focal tuples (digit n = the frame) and processes the
  // conflicting ones: tuples containing two distinct singletons.
  void enumerate_conflicts(int k, double prod, double sum, int first_sing,
                           bool mixed, int* digits) {
    if (k == experts) {
      if (mixed) on_conflict(prod, sum, digits);
      return;
    }
    for (int d = 0; d <= n; ++d) {
      const double m = w[k][d];
      digits[k] = d;
      const bool is_sing = d < n;
      enumerate_conflicts(
          k + 1, prod * m, sum + m,
          first_sing < 0 && is_sing ? d : first_sing,
          mixed || (is_sing && first_sing >= 0 && d != first_sing), digits);
    }
  }

  void on_conflict(double prod, double sum, const int* digits) {
    if (want_pcr6) {
      for (int k = 0; k < experts; ++k) {
        const double share = w[k][digits[k]] * prod / sum;
        if (digits[k] < n) {
          pcr6_add[digits[k]] += share;
        } else {
          pcr6_theta += share;
        }
      }
    }
    if (want_pcr5) {
      // Repeated propositions multiply into one accumulator entry.
      double group[kMaxCls + 1];
      int touched[kMaxExperts];
      int touched_count = 0;
      for (int k = 0; k < experts; ++k) {
        const int d = digits[k];
        bool seen = false;
        for (int t = 0; t < touched_count; ++t) {
          if (touched[t] == d) {
            seen = true;
            break;
          }
        }
        if (seen) {
          group[d] *= w[k][d];
        } else {
          group[d] = w[k][d];
          touched[touched_count++] = d;
        }
      }
      double gsum = 0.0;
      for (int t = 0; t < touched_count; ++t) gsum += group[touched[t]];
      for (int t = 0; t < touched_count; ++t) {
        const int d = touched[t];
        const double share = group[d] * prod / gsum;
        if (d < n) {
          pcr5_add[d] += share;
        } else {
          pcr5_theta += share;
        }
      }
    }
    if (want_dp) {
      unsigned mask = 0;
      bool has_theta = false;
      for (int k = 0; k < experts; ++k) {
        if (digits[k] < n) {
          mask |= 1u << digits[k];
        } else {
          has_theta = true;
        }
      }
      if (has_theta) {
        dp_theta_extra += prod;
        return;
      }
      const int card = std::popcount(mask);
      switch (functional) {
        case Functional::kPl:
        case Functional::kGenPl:
          for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) dp_add[i] += prod;
          }
          break;
        case Functional::kBetP:
        case Functional::kGpt:
          for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) dp_add[i] += prod / card;
          }
          break;
        default:
          break;  // mass/bel on singletons ignore partial ignorances
      }
    }
  }

  // Functional values on the singletons for one rule output.
  void scores(ExperimentRule rule, double* v) const {
    double theta_mass = conj_theta;
    const double* add = nullptr;
    double empty_mass = 0.0;
    switch (rule) {
      case ExperimentRule::kConjunctive:
        empty_mass = conj_empty;
        break;
      case ExperimentRule::kPcr5:
        add = pcr5_add;
        theta_mass += pcr5_theta;
        break;
      case ExperimentRule::kPcr6:
        add = pcr6_add;
        theta_mass += pcr6_theta;
        break;
      case ExperimentRule::kDuboisPrade:
        add = dp_add;
        theta_mass += dp_theta_extra;
        break;
    }
    const bool dp_rule = rule == ExperimentRule::kDuboisPrade;
    for (int i = 0; i < n; ++i) {
      // For DP the accumulator already carries the functional-weighted
      // partial-ignorance contribution; for the PCR rules it is plain mass.
      double base = conj_sing[i] + (add != nullptr ? add[i] : 0.0);
      switch (functional) {
        case Functional::kMass:
        case Functional::kBel:
        case Functional::kGenBel:
          v[i] = dp_rule ? conj_sing[i] : base;
          break;
        case Functional::kPl:
        case Functional::kGenPl:
          v[i] = base + theta_mass;
          break;
        case Functional::kBetP:
        case Functional::kGpt: {
          const double denom = 1.0 - empty_mass;
          v[i] = denom > 0.0 ? (base + theta_mass / n) / denom : 0.0;
          break;
        }
      }
    }
  }

  void decide(ExperimentRule rule, int& argmax, bool& tie) const {
    double v[kMaxCls];
    scores(rule, v);
    argmax = 0;
    for (int i = 1; i < n; ++i) {
      if (v[i] > v[argmax]) argmax = i;
    }
    tie = false;
    for (int i = 0; i < n; ++i) {
      if (i != argmax && v[i] == v[argmax]) {
        tie = true;
        break;
      }
    }
  }
};

struct Tally {
  std::vector<PairStats> pairs;
  std::vector<std::int64_t> overall;
  std::vector<std::vector<std::int64_t>> conditional;

  void init(const ExperimentConfig& cfg, int bins) {
    for (std::size_t a = 0; a < cfg.rules.size(); ++a) {
      for (std::size_t b = a + 1; b < cfg.rules.size(); ++b) {
        pairs.push_back({cfg.rules[a], cfg.rules[b], 0, 0});
      }
    }
    if (bins > 0) {
      overall.assign(bins, 0);
      conditional.assign(pairs.size(), std::vector<std::int64_t>(bins, 0));
    }
  }

  void merge(const Tally& o) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      pairs[p].disagreements += o.pairs[p].disagreements;
      pairs[p].ties += o.pairs[p].ties;
    }
    for (std::size_t b = 0; b < overall.size(); ++b) {
      overall[b] += o.overall[b];
    }
    for (std::size_t p = 0; p < conditional.size(); ++p) {
      for (std::size_t b = 0; b < conditional[p].size(); ++b) {
        conditional[p][b] += o.conditional[p][b];
      }
    }
  }
};

void check_config(const ExperimentConfig& cfg) {
  if (cfg.num_classes < 2 || cfg.num_classes > kMaxSingletons) {
    throw ValidationError("experiment needs between 2 and " +
                          std::to_string(kMaxSingletons) + " classes");
  }
  if (cfg.num_experts < 2 || cfg.num_experts > kMaxExperts) {
    throw ValidationError("experiment needs between 2 and " +
                          std::to_string(kMaxExperts) + " experts");
  }
  if (cfg.num_samples < 1) {
    throw ValidationError("experiment needs at least one sample");
  }
  if (cfg.rules.size() < 2) {
    throw ValidationError("experiment needs at least two rules to compare");
  }
  for (std::size_t a = 0; a < cfg.rules.size(); ++a) {
    for (std::size_t b = a + 1; b < cfg.rules.size(); ++b) {
      if (cfg.rules[a] == cfg.rules[b]) {
        throw ValidationError("duplicate rule in experiment configuration");
      }
    }
  }
  switch (cfg.functional) {
    case Functional::kMass:
    case Functional::kBel:
    case Functional::kPl:
    case Functional::kBetP:
      break;
    default:
      throw ValidationError(
          "experiments support the mass, bel, pl and betP functionals");
  }
}

Tally run_experiment(const ExperimentConfig& cfg, int bins) {
  check_config(cfg);
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, 64);

  const auto worker = [&](std::int64_t begin, std::int64_t end, Tally& tally) {
    tally.init(cfg, bins);
    FastSample sample;
    sample.reset(cfg);
    const int rule_count = static_cast<int>(cfg.rules.size());
    int argmax[8];
    bool tie[8];
    for (std::int64_t s = begin; s < end; ++s) {
      SplitMix64 rng = SplitMix64::for_sample(cfg.rng_seed, s);
      sample.draw(rng);
      sample.fuse();
      for (int r = 0; r < rule_count; ++r) {
        sample.decide(cfg.rules[r], argmax[r], tie[r]);
      }
      int bin = -1;
      if (bins > 0) {
        bin = std::min(static_cast<int>(sample.conj_empty * bins), bins - 1);
        bin = std::max(bin, 0);
        ++tally.overall[bin];
      }
      int p = 0;
      for (int a = 0; a < rule_count; ++a) {
        for (int b = a + 1; b < rule_count; ++b, ++p) {
          if (tie[a] || tie[b]) {
            ++tally.pairs[p].ties;
          } else if (argmax[a] != argmax[b]) {
            ++tally.pairs[p].disagreements;
            if (bins > 0) ++tally.conditional[p][bin];
          }
        }
      }
    }
  };

  std::vector<Tally> partial(threads);
  if (threads == 1) {
    worker(0, cfg.num_samples, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (cfg.num_samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::int64_t begin = t * chunk;
      const std::int64_t end = std::min<std::int64_t>(begin + chunk,
                                                      cfg.num_samples);
      if (begin >= end) {
        partial[t].init(cfg, bins);
        continue;
      }
      pool.emplace_back(worker, begin, end, std::ref(partial[t]));
    }
    for (auto& th : pool) th.join();
  }
  for (int t = 1; t < threads; ++t) partial[0].merge(partial[t]);
  return std::move(partial[0]);
}

}  // namespace

DecisionChangeTable decision_change_rates(const ExperimentConfig& cfg) {
  Tally tally = run_experiment(cfg, 0);
  return {cfg, std::move(tally.pairs)};
}

ConflictHistogram conflict_density(const ExperimentConfig& cfg, int bins) {
  if (bins < 1) throw ValidationError("histogram needs at least one bin");
  Tally tally = run_experiment(cfg, bins);
  ConflictHistogram hist;
  hist.config = cfg;
  hist.bins = bins;
  hist.overall = std::move(tally.overall);
  hist.pairs = std::move(tally.pairs);
  hist.conditional = std::move(tally.conditional);
  return hist;
}

namespace {

struct TwoClassMasses {
  double empty, a, b, theta;
};

// Closed forms for two experts with masses (a_i, b_i) on A and B.
TwoClassMasses conjunctive_closed(const ClosedFormParams& p) {
  TwoClassMasses m{};
  m.empty = p.a1 * p.b2 + p.a2 * p.b1;
  m.a = p.a1 + p.a2 - p.a1 * p.a2 - m.empty;
  m.b = p.b1 + p.b2 - p.b1 * p.b2 - m.empty;
  m.theta = (1.0 - p.a1 - p.b1) * (1.0 - p.a2 - p.b2);
  return m;
}

TwoClassMasses pcr_closed(const ClosedFormParams& p) {
  TwoClassMasses m = conjunctive_closed(p);
  m.empty = 0.0;
  if (p.a1 + p.b2 > 0.0) {
    m.a += p.a1 * p.a1 * p.b2 / (p.a1 + p.b2);
    m.b += p.a1 * p.b2 * p.b2 / (p.a1 + p.b2);
  }
  if (p.a2 + p.b1 > 0.0) {
    m.a += p.a2 * p.a2 * p.b1 / (p.a2 + p.b1);
    m.b += p.a2 * p.b1 * p.b1 / (p.a2 + p.b1);
  }
  return m;
}

void check_params(const ClosedFormParams& p) {
  const bool in_range = p.a1 >= 0.0 && p.b1 >= 0.0 && p.a2 >= 0.0 &&
                        p.b2 >= 0.0 && p.a1 + p.b1 <= 1.0 &&
                        p.a2 + p.b2 <= 1.0;
  if (!in_range) {
    throw ValidationError("closed-form parameters must be non-negative with "
                          "a1+b1 <= 1 and a2+b2 <= 1");
  }
}

}  // namespace

std::pair<MassFunction, MassFunction> closed_form_two(
    const ClosedFormParams& p) {
  check_params(p);
  const Model model = Model::shafer(Frame::make({"A", "B"}));
  const Frame& frame = model.frame();
  const auto build = [&](const TwoClassMasses& m) {
    std::map<AtomSet, double> focal;
    if (m.empty != 0.0) focal[AtomSet{}] = m.empty;
    if (m.a != 0.0) focal[frame.singleton(0)] = m.a;
    if (m.b != 0.0) focal[frame.singleton(1)] = m.b;
    if (m.theta != 0.0) focal[frame.theta()] = m.theta;
    return MassFunction(model, std::move(focal));
  };
  return {build(conjunctive_closed(p)), build(pcr_closed(p))};
}

StabilityReport stability_case_check(StabilityCase c, std::int64_t trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw ValidationError("stability check needs trials >= 1");
  for (std::int64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = SplitMix64::for_sample(seed, t);
    double pair[2];
    ClosedFormParams p{};
    bool require_strict_a = false;
    switch (c) {
      case StabilityCase::kA1EqB1:
        // Expert 1 gives (x, x); expert 2 is free.
        p.a1 = p.b1 = 0.5 * rng.next_unit();
        sample_expert_into(2, rng, pair);
        p.a2 = pair[0];
        p.b2 = pair[1];
        break;
      case StabilityCase::kA1EqB2:
        // Expert 1 gives (x, y); expert 2 gives (z, x).
        sample_expert_into(2, rng, pair);
        p.a1 = pair[0];
        p.b1 = pair[1];
        p.b2 = p.a1;
        p.a2 = (1.0 - p.b2) * rng.next_unit();
        break;
      case StabilityCase::kA2Eq1MinusA1:
        // Expert 1 gives (x, y); expert 2 gives (1 - x, z) with z <= x.
        sample_expert_into(2, rng, pair);
        p.a1 = pair[0];
        p.b1 = pair[1];
        p.a2 = 1.0 - p.a1;
        p.b2 = p.a1 * rng.next_unit();
        require_strict_a = true;
        break;
    }
    const TwoClassMasses mc = conjunctive_closed(p);
    const TwoClassMasses mp = pcr_closed(p);
    bool ok;
    if (require_strict_a) {
      ok = mc.a > mc.b && mp.a > mp.b;
    } else {
      // Argmax over {A, B} must agree, tie sets included.
      ok = (mc.a > mc.b && mp.a > mp.b) || (mc.a < mc.b && mp.a < mp.b) ||
           (mc.a == mc.b && mp.a == mp.b);
    }
    if (!ok) throw StabilityViolation(p.a1, p.b1, p.a2, p.b2);
  }
  return {c, trials};
}

}  // namespace bft
