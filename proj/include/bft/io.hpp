#ifndef BFT_IO_HPP
#define BFT_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bft/analysis.hpp"
#include "bft/mass.hpp"

namespace bft {

// A fusion problem: the frame, the model and the expert assignments.
// JSON layout:
//   {
//     "frame": ["A", "B", "C"],
//     "model": {"kind": "shafer" | "free" | "hybrid",
//               "constrained": ["A&B", ...]},        // hybrid only
//     "experts": [{"focal": [{"set": "A|B", "mass": 0.7}, ...]}, ...]
//   }
struct ProblemFile {
  Model model;
  std::vector<MassFunction> experts;
};

ProblemFile load_problem(const std::string& path);
void save_problem(const std::string& path, const ProblemFile& problem);

// A fusion result: the fused masses keyed by canonical expression plus the
// decision reports of every functional applicable to the model kind.
struct ResultFile {
  std::string tool;
  std::string rule;
  std::optional<double> alpha;  // pcr6f / pcr6g weight exponent
  std::optional<std::uint64_t> seed;
  MassFunction fused;
};

void save_result(const std::string& path, const ResultFile& result);
ResultFile load_result(const std::string& path);

// Functionals applicable to a model kind: the classical triple on a Shafer
// model, the generalized one otherwise, mass always.
std::vector<Functional> applicable_functionals(const Model& model);

// decision_change.csv: one row per (rule pair, class count).
struct DecisionChangeRow {
  std::string pair;
  int num_classes;
  double rate;
  std::int64_t ties;
  std::int64_t samples;
};
void write_decision_change_csv(std::ostream& os,
                               const std::vector<DecisionChangeRow>& rows);

// conflict_hist.csv: per class count and bin, the overall count and one
// conditional-on-disagreement count per rule pair.
void write_conflict_hist_csv(std::ostream& os,
                             const std::vector<ConflictHistogram>& hists);

std::string pair_label(const PairStats& pair);

}  // namespace bft

#endif  // BFT_IO_HPP
