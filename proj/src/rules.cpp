#include "bft/rules.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "bft/errors.hpp"

namespace bft {

RedistributionWeight RedistributionWeight::power(double alpha) {
  if (!(alpha >= 0.0)) {
    throw ValidationError("redistribution exponent must be >= 0");
  }
  return RedistributionWeight(alpha);
}

double RedistributionWeight::operator()(double x) const {
  return alpha_ == 1.0 ? x : std::pow(x, alpha_);
}

namespace {

struct FocalEntry {
  AtomSet atoms;
  double mass;
};

using ExpertView = std::vector<FocalEntry>;

std::vector<ExpertView> prepare(const FusionInput& input) {
  const auto& experts = input.experts;
  if (experts.size() < 2 || experts.size() > kMaxExperts) {
    throw ValidationError("fusion needs between 2 and " +
                          std::to_string(kMaxExperts) + " experts, got " +
                          std::to_string(experts.size()));
  }
  std::uint64_t tuples = 1;
  std::vector<ExpertView> views;
  views.reserve(experts.size());
  for (const auto& expert : experts) {
    if (!(expert.model() == experts.front().model())) {
      throw ValidationError("experts use different models");
    }
    if (expert.focal().empty()) {
      throw ValidationError("expert has no focal elements");
    }
    tuples *= expert.focal().size();
    if (tuples > kMaxTuples) {
      throw CapacityError("focal tuple count exceeds " +
                          std::to_string(kMaxTuples));
    }
    ExpertView view;
    view.reserve(expert.focal().size());
    for (const auto& [atoms, mass] : expert.focal()) {
      view.push_back({atoms, mass});
    }
    views.push_back(std::move(view));
  }
  return views;
}

// Odometer over all focal tuples, keeping prefix intersections and products
// so a digit change only recomputes its suffix.  on_tuple receives the
// entries of the current tuple, the raw intersection and the mass product.
template <typename Fn>
void for_each_tuple(const std::vector<ExpertView>& experts, const Frame& frame,
                    Fn&& on_tuple) {
  const int m = static_cast<int>(experts.size());
  std::vector<int> idx(m, 0);
  std::vector<const FocalEntry*> entry(m);
  std::vector<AtomSet> inter(m + 1);
  std::vector<double> prod(m + 1);
  inter[0] = AtomSet::full(frame.size());
  prod[0] = 1.0;

  auto fill_from = [&](int k) {
    for (int j = k; j < m; ++j) {
      entry[j] = &experts[j][idx[j]];
      inter[j + 1] = inter[j] & entry[j]->atoms;
      prod[j + 1] = prod[j] * entry[j]->mass;
    }
  };
  fill_from(0);

  while (true) {
    on_tuple(entry, inter[m], prod[m]);
    int k = m - 1;
    while (k >= 0 && ++idx[k] == static_cast<int>(experts[k].size())) {
      idx[k--] = 0;
    }
    if (k < 0) break;
    fill_from(k);
  }
}

// Accumulates output masses bucketed by canonical atom set; the emitted key
// of a bucket is the upward closure of its canonical atoms, which names the
// bucket by the model-equal hyper-power-set element (and leaves expert
// propositions unchanged).
class OutputBuilder {
 public:
  explicit OutputBuilder(const Model& model) : model_(model) {}

  void add(const AtomSet& raw, double mass) {
    buckets_[model_.canonical(raw)] += mass;
  }

  MassFunction build() && {
    std::map<AtomSet, double> focal;
    for (auto& [canon, mass] : buckets_) {
      focal[canon.upward_closure(model_.frame().size())] += mass;
    }
    return {model_, std::move(focal)};
  }

 private:
  const Model& model_;
  std::map<AtomSet, double> buckets_;
};

AtomSet union_span_atoms(const AtomSet& raw, const Frame& frame) {
  AtomSet span;
  for (int i = 0; i < frame.size(); ++i) {
    if (raw.intersects(frame.singleton(i))) span |= frame.singleton(i);
  }
  return span;
}

// Per-tuple accumulator keyed by raw proposition; at most kMaxExperts
// entries, so linear scans beat a map.
class TupleGroups {
 public:
  void clear() { size_ = 0; }

  // combine(existing, incoming) resolves a repeated proposition.
  template <typename Combine>
  void add(const AtomSet& atoms, double mass, Combine&& combine) {
    for (int i = 0; i < size_; ++i) {
      if (entries_[i].first == atoms) {
        entries_[i].second = combine(entries_[i].second, mass);
        return;
      }
    }
    entries_[size_++] = {atoms, mass};
  }

  int size() const { return size_; }
  const std::pair<AtomSet, double>& operator[](int i) const {
    return entries_[i];
  }

 private:
  std::pair<AtomSet, double> entries_[kMaxExperts];
  int size_ = 0;
};

}  // namespace

MassFunction conjunctive(const FusionInput& input) {
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  for_each_tuple(views, model.frame(),
                 [&](const auto&, const AtomSet& inter, double prod) {
                   out.add(inter, prod);
                 });
  return std::move(out).build();
}

MassFunction dubois_prade(const FusionInput& input) {
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  for_each_tuple(views, model.frame(),
                 [&](const auto& entries, const AtomSet& inter, double prod) {
                   if (!model.is_empty(inter)) {
                     out.add(inter, prod);
                     return;
                   }
                   AtomSet u;
                   for (const FocalEntry* e : entries) u |= e->atoms;
                   out.add(u, prod);
                 });
  return std::move(out).build();
}

MassFunction dsmh(const FusionInput& input) {
  const Model& model = input.experts.front().model();
  const Frame& frame = model.frame();
  auto views = prepare(input);
  OutputBuilder out(model);
  for_each_tuple(views, frame,
                 [&](const auto& entries, const AtomSet& inter, double prod) {
                   if (!model.is_empty(inter)) {
                     out.add(inter, prod);
                     return;
                   }
                   AtomSet u;
                   for (const FocalEntry* e : entries) u |= e->atoms;
                   if (!model.is_empty(u)) {
                     out.add(u, prod);
                     return;
                   }
                   // Every tuple element is empty under the model: fall back
                   // to the union of singleton spans, then to the frame.
                   AtomSet span;
                   for (const FocalEntry* e : entries) {
                     span |= union_span_atoms(e->atoms, frame);
                   }
                   out.add(model.is_empty(span) ? frame.theta() : span, prod);
                 });
  return std::move(out).build();
}

MassFunction pcr5_two(const FusionInput& input) {
  if (input.experts.size() != 2) {
    throw ValidationError("pcr5_two requires exactly two experts");
  }
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  for (const FocalEntry& a : views[0]) {
    for (const FocalEntry& b : views[1]) {
      if (!model.is_empty(a.atoms & b.atoms)) {
        out.add(a.atoms & b.atoms, a.mass * b.mass);
        continue;
      }
      // Focal masses are strictly positive, so the denominator never
      // vanishes here.
      const double denom = a.mass + b.mass;
      out.add(a.atoms, a.mass * a.mass * b.mass / denom);
      out.add(b.atoms, b.mass * b.mass * a.mass / denom);
    }
  }
  return std::move(out).build();
}

MassFunction pcr5_general(const FusionInput& input) {
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  TupleGroups groups;
  for_each_tuple(
      views, model.frame(),
      [&](const auto& entries, const AtomSet& inter, double prod) {
        if (!model.is_empty(inter)) {
          out.add(inter, prod);
          return;
        }
        groups.clear();
        for (const FocalEntry* e : entries) {
          groups.add(e->atoms, e->mass,
                     [](double acc, double m) { return acc * m; });
        }
        double sum = 0.0;
        for (int i = 0; i < groups.size(); ++i) sum += groups[i].second;
        for (int i = 0; i < groups.size(); ++i) {
          out.add(groups[i].first, groups[i].second * prod / sum);
        }
      });
  return std::move(out).build();
}

MassFunction pcr6(const FusionInput& input) {
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  for_each_tuple(views, model.frame(),
                 [&](const auto& entries, const AtomSet& inter, double prod) {
                   if (!model.is_empty(inter)) {
                     out.add(inter, prod);
                     return;
                   }
                   double sum = 0.0;
                   for (const FocalEntry* e : entries) sum += e->mass;
                   for (const FocalEntry* e : entries) {
                     out.add(e->atoms, e->mass * prod / sum);
                   }
                 });
  return std::move(out).build();
}

namespace {

// Shared by pcr6f / pcr6g: redistribute a conflicting tuple's product over
// weighted groups, uniformly over the groups when every weight vanished.
void redistribute_groups(OutputBuilder& out, const TupleGroups& groups,
                         const double* weights, double prod) {
  double denom = 0.0;
  for (int i = 0; i < groups.size(); ++i) denom += weights[i];
  if (denom == 0.0) {
    for (int i = 0; i < groups.size(); ++i) {
      out.add(groups[i].first, prod / groups.size());
    }
    return;
  }
  for (int i = 0; i < groups.size(); ++i) {
    out.add(groups[i].first, weights[i] * prod / denom);
  }
}

}  // namespace

MassFunction pcr6f(const FusionInput& input, const RedistributionWeight& f) {
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  for_each_tuple(
      views, model.frame(),
      [&](const auto& entries, const AtomSet& inter, double prod) {
        if (!model.is_empty(inter)) {
          out.add(inter, prod);
          return;
        }
        double denom = 0.0;
        for (const FocalEntry* e : entries) denom += f(e->mass);
        if (denom == 0.0) {
          TupleGroups groups;
          for (const FocalEntry* e : entries) {
            groups.add(e->atoms, 0.0, [](double, double) { return 0.0; });
          }
          for (int i = 0; i < groups.size(); ++i) {
            out.add(groups[i].first, prod / groups.size());
          }
          return;
        }
        for (const FocalEntry* e : entries) {
          out.add(e->atoms, f(e->mass) * prod / denom);
        }
      });
  return std::move(out).build();
}

MassFunction pcr6g(const FusionInput& input, const RedistributionWeight& g) {
  const Model& model = input.experts.front().model();
  auto views = prepare(input);
  OutputBuilder out(model);
  TupleGroups groups;
  double weights[kMaxExperts];
  for_each_tuple(
      views, model.frame(),
      [&](const auto& entries, const AtomSet& inter, double prod) {
        if (!model.is_empty(inter)) {
          out.add(inter, prod);
          return;
        }
        groups.clear();
        for (const FocalEntry* e : entries) {
          groups.add(e->atoms, e->mass,
                     [](double acc, double m) { return acc + m; });
        }
        for (int i = 0; i < groups.size(); ++i) {
          weights[i] = g(groups[i].second);
        }
        redistribute_groups(out, groups, weights, prod);
      });
  return std::move(out).build();
}

MassFunction fuse_sequential(const FusionInput& input, BinaryRule rule) {
  if (input.experts.size() < 2) {
    throw ValidationError("sequential fusion needs at least two experts");
  }
  MassFunction acc = input.experts.front();
  for (std::size_t i = 1; i < input.experts.size(); ++i) {
    FusionInput step{{acc, input.experts[i]}};
    switch (rule) {
      case BinaryRule::kConjunctive: acc = conjunctive(step); break;
      case BinaryRule::kDuboisPrade: acc = dubois_prade(step); break;
      case BinaryRule::kPcr5: acc = pcr5_two(step); break;
    }
  }
  return acc;
}

double auto_conflict(const MassFunction& m, int order) {
  if (order < 2 || order > kMaxExperts) {
    throw ValidationError("auto-conflict order must be between 2 and " +
                          std::to_string(kMaxExperts));
  }
  FusionInput input;
  input.experts.assign(order, m);
  return conjunctive(input).mass_raw(AtomSet{});
}

}  // namespace bft
