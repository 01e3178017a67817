// bft - command-line front end for the belief-function fusion library.
//
// Subcommands:
//   fuse        combine the experts of a problem file with one rule
//   decide      evaluate a decision functional on a fusion result
//   experiment  Monte Carlo decision-change rates and conflict histograms
//
// Exit codes: 0 success, 2 parse/validation/usage error, 3 capacity error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bft/analysis.hpp"
#include "bft/errors.hpp"
#include "bft/io.hpp"
#include "bft/mass.hpp"
#include "bft/rules.hpp"
#include "bft/version.hpp"

namespace {

struct FuseOptions {
  std::string problem;
  std::string rule;
  std::string weight;
  std::string out = "result.json";
};

struct DecideOptions {
  std::string result;
  std::string functional;
};

struct ExperimentOptions {
  std::string classes = "2";
  int experts = 2;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::string rules = "pcr6,dp,conjunctive";
  std::string functional = "betP";
  int bins = 100;
  int threads = 0;
  std::string out_dir = ".";
};

double parse_weight_spec(const std::string& spec) {
  const std::string prefix = "alpha=";
  if (spec.rfind(prefix, 0) != 0) {
    throw bft::ValidationError("weight spec must look like alpha=<real>");
  }
  std::size_t used = 0;
  const std::string value = spec.substr(prefix.size());
  double alpha = 0.0;
  try {
    alpha = std::stod(value, &used);
  } catch (const std::exception&) {
    throw bft::ValidationError("bad weight value '" + value + "'");
  }
  if (used != value.size()) {
    throw bft::ValidationError("bad weight value '" + value + "'");
  }
  return alpha;
}

int run_fuse(const FuseOptions& opt) {
  const bft::ProblemFile problem = bft::load_problem(opt.problem);
  bft::FusionInput input{problem.experts};

  const bool weighted = opt.rule == "pcr6f" || opt.rule == "pcr6g";
  if (!weighted && !opt.weight.empty()) {
    throw bft::ValidationError("only pcr6f and pcr6g take --weight");
  }
  std::optional<double> alpha;
  if (weighted) {
    if (opt.weight.empty()) {
      throw bft::ValidationError(
          "rule '" + opt.rule + "' needs --weight alpha=<real>");
    }
    alpha = parse_weight_spec(opt.weight);
  }

  bft::MassFunction fused = [&] {
    if (opt.rule == "conjunctive") return bft::conjunctive(input);
    if (opt.rule == "dp") return bft::dubois_prade(input);
    if (opt.rule == "dsmh") return bft::dsmh(input);
    if (opt.rule == "pcr5") return bft::pcr5_general(input);
    if (opt.rule == "pcr6") return bft::pcr6(input);
    if (opt.rule == "pcr6f") {
      return bft::pcr6f(input, bft::RedistributionWeight::power(*alpha));
    }
    if (opt.rule == "pcr6g") {
      return bft::pcr6g(input, bft::RedistributionWeight::power(*alpha));
    }
    throw bft::ValidationError("unknown rule '" + opt.rule + "'");
  }();

  bft::ResultFile result{std::string("bft ") + bft::kVersion, opt.rule, alpha,
                         std::nullopt, fused};
  bft::save_result(opt.out, result);

  for (const auto& [atoms, mass] : fused.focal()) {
    std::printf("%-24s %.6f\n",
                bft::print_atoms(atoms, fused.model().frame()).c_str(), mass);
  }
  std::printf("wrote %s\n", opt.out.c_str());
  return 0;
}

int run_decide(const DecideOptions& opt) {
  const bft::ResultFile result = bft::load_result(opt.result);
  const auto functional = bft::functional_from_name(opt.functional);
  if (!functional) {
    throw bft::ValidationError("unknown functional '" + opt.functional + "'");
  }
  const auto applicable = bft::applicable_functionals(result.fused.model());
  if (std::find(applicable.begin(), applicable.end(), *functional) ==
      applicable.end()) {
    throw bft::ValidationError("functional '" + opt.functional +
                               "' does not apply to this model kind");
  }
  const bft::DecisionReport report = bft::decide(result.fused, *functional);
  const bft::Frame& frame = result.fused.model().frame();
  for (int i = 0; i < frame.size(); ++i) {
    std::printf("%-12s %.6f\n", frame.name(i).c_str(), report.values[i]);
  }
  std::printf("decision: %s\n", frame.name(report.decision).c_str());
  std::string ties;
  for (int i : report.ties) {
    if (!ties.empty()) ties += ' ';
    ties += frame.name(i);
  }
  std::printf("ties: %s\n", ties.c_str());
  return 0;
}

std::pair<int, int> parse_class_range(const std::string& text) {
  const auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size()) {
      throw bft::ValidationError("bad class count '" + s + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = parse_int(text);
    return {n, n};
  }
  const int lo = parse_int(text.substr(0, dots));
  const int hi = parse_int(text.substr(dots + 2));
  if (lo > hi) throw bft::ValidationError("empty class range '" + text + "'");
  return {lo, hi};
}

int run_experiment(const ExperimentOptions& opt) {
  const auto [lo, hi] = parse_class_range(opt.classes);

  bft::ExperimentConfig base;
  base.num_experts = opt.experts;
  base.num_samples = opt.samples;
  base.rng_seed = opt.seed;
  base.threads = opt.threads;
  const auto functional = bft::functional_from_name(opt.functional);
  if (!functional) {
    throw bft::ValidationError("unknown functional '" + opt.functional + "'");
  }
  base.functional = *functional;
  base.rules.clear();
  std::stringstream names(opt.rules);
  for (std::string name; std::getline(names, name, ',');) {
    const auto rule = bft::experiment_rule_from_name(name);
    if (!rule) throw bft::ValidationError("unknown rule '" + name + "'");
    base.rules.push_back(*rule);
  }

  std::vector<bft::DecisionChangeRow> rows;
  std::vector<bft::ConflictHistogram> hists;
  for (int n = lo; n <= hi; ++n) {
    bft::ExperimentConfig cfg = base;
    cfg.num_classes = n;
    bft::ConflictHistogram hist = bft::conflict_density(cfg, opt.bins);
    for (const auto& pair : hist.pairs) {
      rows.push_back({bft::pair_label(pair), n, pair.rate(cfg.num_samples),
                      pair.ties, cfg.num_samples});
      std::printf("n=%d %-24s rate=%7.4f%% ties=%lld\n", n,
                  bft::pair_label(pair).c_str(),
                  100.0 * pair.rate(cfg.num_samples),
                  static_cast<long long>(pair.ties));
    }
    hists.push_back(std::move(hist));
  }

  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  const auto write = [&](const std::string& name, auto&& writer) {
    const fs::path path = fs::path(opt.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw bft::ValidationError("cannot write '" + path.string() + "'");
    writer(os);
    std::printf("wrote %s\n", path.string().c_str());
  };
  write("decision_change.csv",
        [&](std::ostream& os) { bft::write_decision_change_csv(os, rows); });
  write("conflict_hist.csv",
        [&](std::ostream& os) { bft::write_conflict_hist_csv(os, hists); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("bft ") + bft::kVersion +
               " - belief-function fusion toolkit"};
  app.require_subcommand(1);

  FuseOptions fuse_opt;
  CLI::App* fuse = app.add_subcommand("fuse", "combine experts with one rule");
  fuse->add_option("--problem", fuse_opt.problem, "problem file (JSON)")
      ->required();
  fuse->add_option("--rule", fuse_opt.rule,
                   "conjunctive|dp|dsmh|pcr5|pcr6|pcr6f|pcr6g")
      ->required();
  fuse->add_option("--weight", fuse_opt.weight,
                   "redistribution weight, alpha=<real> (pcr6f/pcr6g)");
  fuse->add_option("--out", fuse_opt.out, "result file to write");

  DecideOptions decide_opt;
  CLI::App* dec = app.add_subcommand("decide", "evaluate a decision functional");
  dec->add_option("--result", decide_opt.result, "result file (JSON)")
      ->required();
  dec->add_option("--functional", decide_opt.functional,
                  "mass|bel|pl|betP|Bel|Pl|GPT")
      ->required();

  ExperimentOptions exp_opt;
  CLI::App* exp = app.add_subcommand(
      "experiment", "Monte Carlo decision-change rates and conflict density");
  exp->add_option("--classes", exp_opt.classes, "class count or range, e.g. 2..7");
  exp->add_option("--experts", exp_opt.experts, "number of experts");
  exp->add_option("--samples", exp_opt.samples, "Monte Carlo samples per class count");
  exp->add_option("--seed", exp_opt.seed, "RNG seed");
  exp->add_option("--rules", exp_opt.rules, "comma list of conjunctive|dp|pcr5|pcr6");
  exp->add_option("--functional", exp_opt.functional, "decision functional");
  exp->add_option("--bins", exp_opt.bins, "conflict histogram bins");
  exp->add_option("--threads", exp_opt.threads, "worker threads (0 = auto)");
  exp->add_option("--out-dir", exp_opt.out_dir, "directory for the CSV files");

  try {
    app.parse(argc, argv);
    if (fuse->parsed()) return run_fuse(fuse_opt);
    if (dec->parsed()) return run_decide(decide_opt);
    return run_experiment(exp_opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const bft::CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const bft::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
