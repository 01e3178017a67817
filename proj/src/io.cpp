#include "bft/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "bft/errors.hpp"
#include "bft/version.hpp"

namespace bft {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

Model model_from_json(const json& j) {
  if (!j.contains("frame") || !j["frame"].is_array()) {
    throw ValidationError("missing 'frame' list");
  }
  FramePtr frame = Frame::make(j["frame"].get<std::vector<std::string>>());
  const json& model = j.at("model");
  const std::string kind = model.at("kind").get<std::string>();
  if (kind == "shafer") return Model::shafer(frame);
  if (kind == "free") return Model::free(frame);
  if (kind == "hybrid") {
    std::vector<Proposition> empty;
    for (const auto& expr : model.value("constrained", json::array())) {
      empty.push_back(parse_proposition(expr.get<std::string>(), frame));
    }
    return Model::hybrid(frame, empty);
  }
  throw ValidationError("unknown model kind '" + kind + "'");
}

json model_to_json(const Model& model) {
  json j;
  j["kind"] = model.kind() == ModelKind::kShafer  ? "shafer"
              : model.kind() == ModelKind::kFree ? "free"
                                                 : "hybrid";
  if (model.kind() == ModelKind::kHybrid) {
    // The constraint set is atom-level; emit one minimal term per atom so
    // the file round-trips through the expression parser.
    json constrained = json::array();
    model.constrained().for_each([&](int atom) {
      AtomSet up = AtomSet::single(atom).upward_closure(model.frame().size());
      constrained.push_back(print_atoms(up, model.frame()));
    });
    j["constrained"] = constrained;
  }
  return j;
}

MassFunction mass_from_json(const json& focal_list, const Model& model) {
  std::vector<std::pair<Proposition, double>> focal;
  for (const auto& entry : focal_list) {
    focal.emplace_back(parse_proposition(entry.at("set").get<std::string>(),
                                         model.frame_ptr()),
                       entry.at("mass").get<double>());
  }
  return MassFunction::from_pairs(model, focal);
}

}  // namespace

ProblemFile load_problem(const std::string& path) {
  const json j = load_json(path);
  try {
    Model model = model_from_json(j);
    std::vector<MassFunction> experts;
    for (const auto& expert : j.at("experts")) {
      MassFunction m = mass_from_json(expert.at("focal"), model);
      m.validate(/*allow_empty_mass=*/false);
      experts.push_back(std::move(m));
    }
    if (experts.empty()) throw ValidationError("no experts in problem file");
    return {std::move(model), std::move(experts)};
  } catch (const json::exception& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

void save_problem(const std::string& path, const ProblemFile& problem) {
  json j;
  j["frame"] = problem.model.frame().names();
  j["model"] = model_to_json(problem.model);
  json experts = json::array();
  for (const auto& expert : problem.experts) {
    json focal = json::array();
    for (const auto& [atoms, mass] : expert.focal()) {
      focal.push_back({{"set", print_atoms(atoms, problem.model.frame())},
                       {"mass", mass}});
    }
    experts.push_back({{"focal", focal}});
  }
  j["experts"] = experts;
  write_file(path, j.dump(2) + "\n");
}

std::vector<Functional> applicable_functionals(const Model& model) {
  if (model.kind() == ModelKind::kShafer) {
    return {Functional::kMass, Functional::kBel, Functional::kPl,
            Functional::kBetP};
  }
  return {Functional::kMass, Functional::kGenBel, Functional::kGenPl,
          Functional::kGpt};
}

void save_result(const std::string& path, const ResultFile& result) {
  const Model& model = result.fused.model();
  const Frame& frame = model.frame();
  json j;
  j["tool"] = result.tool;
  j["rule"] = result.rule;
  if (result.alpha) j["alpha"] = *result.alpha;
  if (result.seed) j["seed"] = *result.seed;
  j["frame"] = frame.names();
  j["model"] = model_to_json(model);
  json masses = json::object();
  for (const auto& [atoms, mass] : result.fused.focal()) {
    masses[print_atoms(atoms, frame)] = mass;
  }
  j["masses"] = masses;
  json decisions = json::object();
  for (Functional f : applicable_functionals(model)) {
    json entry;
    try {
      const DecisionReport report = decide(result.fused, f);
      json values = json::object();
      for (int i = 0; i < frame.size(); ++i) {
        values[frame.name(i)] = report.values[i];
      }
      entry["values"] = values;
      entry["decision"] = frame.name(report.decision);
      json ties = json::array();
      for (int i : report.ties) ties.push_back(frame.name(i));
      entry["ties"] = ties;
    } catch (const DecisionError& e) {
      entry = {{"error", e.what()}};
    }
    decisions[std::string(functional_name(f))] = entry;
  }
  j["decisions"] = decisions;
  write_file(path, j.dump(2) + "\n");
}

ResultFile load_result(const std::string& path) {
  const json j = load_json(path);
  try {
    json with_frame = j;  // model_from_json reads the top-level frame
    Model model = model_from_json(with_frame);
    std::map<AtomSet, double> focal;
    for (const auto& [expr, mass] : j.at("masses").items()) {
      const Proposition p = parse_proposition(expr, model.frame_ptr());
      if (!focal.emplace(p.atoms(), mass.get<double>()).second) {
        throw ValidationError("duplicate mass key '" + expr + "'");
      }
    }
    ResultFile result{j.value("tool", ""), j.at("rule").get<std::string>(),
                      std::nullopt, std::nullopt,
                      MassFunction(model, std::move(focal))};
    if (j.contains("alpha")) result.alpha = j["alpha"].get<double>();
    if (j.contains("seed")) result.seed = j["seed"].get<std::uint64_t>();
    result.fused.validate(/*allow_empty_mass=*/true);
    return result;
  } catch (const json::exception& e) {
    throw ValidationError("'" + path + "': " + e.what());
  }
}

std::string pair_label(const PairStats& pair) {
  return std::string(experiment_rule_name(pair.rule_a)) + "/" +
         std::string(experiment_rule_name(pair.rule_b));
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void write_decision_change_csv(std::ostream& os,
                               const std::vector<DecisionChangeRow>& rows) {
  os << "pair,n,rate,ties,N\n";
  for (const auto& row : rows) {
    os << row.pair << ',' << row.num_classes << ',' << fixed(row.rate, 8)
       << ',' << row.ties << ',' << row.samples << '\n';
  }
}

void write_conflict_hist_csv(std::ostream& os,
                             const std::vector<ConflictHistogram>& hists) {
  if (hists.empty()) return;
  os << "n,bin_low";
  os << ",overall";
  for (const auto& pair : hists.front().pairs) {
    os << ',' << pair_label(pair);
  }
  os << '\n';
  for (const auto& hist : hists) {
    for (int b = 0; b < hist.bins; ++b) {
      os << hist.config.num_classes << ','
         << fixed(static_cast<double>(b) / hist.bins, 6) << ','
         << hist.overall[b];
      for (const auto& cond : hist.conditional) {
        os << ',' << cond[b];
      }
      os << '\n';
    }
  }
}

}  // namespace bft
