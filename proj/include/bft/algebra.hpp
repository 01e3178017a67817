#ifndef BFT_ALGEBRA_HPP
#define BFT_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bft/atomset.hpp"
#include "bft/errors.hpp"

namespace bft {

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

// An ordered frame of discernment: the singleton hypotheses.
class Frame {
 public:
  // Throws ValidationError on empty/duplicate labels or more than
  // kMaxSingletons of them.
  static FramePtr make(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view label) const;

  // 2^n - 1 nonempty Venn atoms.
  int atom_count() const { return (1 << size()) - 1; }
  const AtomSet& theta() const { return theta_; }
  const AtomSet& singleton(int i) const { return singletons_[i]; }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.names_ == b.names_;
  }

 private:
  explicit Frame(std::vector<std::string> names);

  std::vector<std::string> names_;
  AtomSet theta_;
  std::vector<AtomSet> singletons_;
};

// An element of the hyper-power set D^Theta, encoded by its atom set.
// Values built from singletons with | and & always hold upward-closed atom
// sets; complement() may produce sets that are only meaningful modulo the
// model constraints (its classical use is the power set under a Shafer
// model, where the two notions agree).
class Proposition {
 public:
  Proposition(FramePtr frame, AtomSet atoms)
      : frame_(std::move(frame)), atoms_(atoms) {}

  const AtomSet& atoms() const { return atoms_; }
  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }

  bool same_frame(const Proposition& o) const {
    return frame_ == o.frame_ || *frame_ == *o.frame_;
  }

  // Atom-set union / intersection; throws ValidationError on frame mismatch.
  friend Proposition operator|(const Proposition& a, const Proposition& b);
  friend Proposition operator&(const Proposition& a, const Proposition& b);

  // Atom-set complement within the frame.
  Proposition complement() const {
    return {frame_, AtomSet::full(frame_->size()) - atoms_};
  }

  // The union of all singletons whose region meets this proposition
  // (u(Y) of the hybrid rule): u((A&B)|(A&C)) = A|B|C.
  Proposition union_span() const;

  friend bool operator==(const Proposition& a, const Proposition& b) {
    return a.atoms_ == b.atoms_ && a.same_frame(b);
  }

 private:
  FramePtr frame_;
  AtomSet atoms_;
};

enum class ModelKind { kShafer, kFree, kHybrid };

// A frame plus the set of atoms constrained to be empty.  Shafer constrains
// every atom shared by two or more singletons, the free model constrains
// nothing, a hybrid model carries an arbitrary constraint set.
class Model {
 public:
  static Model shafer(FramePtr frame);
  static Model free(FramePtr frame);
  // Constrains exactly the atoms of the given propositions.
  static Model hybrid(FramePtr frame, const std::vector<Proposition>& empty);

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  ModelKind kind() const { return kind_; }
  const AtomSet& constrained() const { return constrained_; }

  // The unconstrained atoms of a raw atom set; empty-under-the-model means
  // an empty canonical set.
  AtomSet canonical(const AtomSet& raw) const { return raw - constrained_; }
  bool is_empty(const AtomSet& raw) const { return canonical(raw).none(); }
  bool is_empty(const Proposition& p) const { return is_empty(p.atoms()); }

  // DSm cardinality: the number of unconstrained atoms.
  int cardinality(const AtomSet& raw) const { return canonical(raw).count(); }
  int cardinality(const Proposition& p) const { return cardinality(p.atoms()); }

  // The canonical representative key of an atom set: the upward closure of
  // its unconstrained atoms.  Two raw sets are model-equal iff their
  // representatives coincide, and the representative of any upward-closed,
  // non-model-empty set is the set itself.
  AtomSet representative(const AtomSet& raw) const {
    return canonical(raw).upward_closure(frame_->size());
  }

  friend bool operator==(const Model& a, const Model& b) {
    return a.kind_ == b.kind_ && a.constrained_ == b.constrained_ &&
           (a.frame_ == b.frame_ || *a.frame_ == *b.frame_);
  }

 private:
  Model(FramePtr frame, ModelKind kind, AtomSet constrained)
      : frame_(std::move(frame)), kind_(kind), constrained_(constrained) {}

  FramePtr frame_;
  ModelKind kind_;
  AtomSet constrained_;
};

// Parses the expression grammar
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := label | '(' expr ')' | 'EMPTY' | 'THETA'
// Throws ParseError with the offending position.
Proposition parse_proposition(std::string_view text, const FramePtr& frame);

// Canonical printing: '|'-joined maximal terms (one per minimal atom, in
// increasing mask order), '&'-joined singletons in frame order inside each
// term; EMPTY and THETA for the two extremes.  parse(print(p)) recovers the
// upward closure of p's atoms, hence p itself for any D^Theta element.
std::string print_proposition(const Proposition& p);
std::string print_atoms(const AtomSet& atoms, const Frame& frame);

}  // namespace bft

#endif  // BFT_ALGEBRA_HPP
