#include "bft/algebra.hpp"

#include <cctype>
#include <set>
#include <utility>

namespace bft {

Frame::Frame(std::vector<std::string> names) : names_(std::move(names)) {
  theta_ = AtomSet::full(size());
  singletons_.reserve(names_.size());
  for (int i = 0; i < size(); ++i) {
    singletons_.push_back(AtomSet::singleton(i, size()));
  }
}

FramePtr Frame::make(std::vector<std::string> names) {
  if (names.empty() || names.size() > kMaxSingletons) {
    throw ValidationError("frame must have between 1 and " +
                          std::to_string(kMaxSingletons) + " labels, got " +
                          std::to_string(names.size()));
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw ValidationError("frame labels must be non-empty");
    if (n == "THETA" || n == "EMPTY") {
      throw ValidationError("'" + n + "' is a reserved keyword");
    }
    for (char c : n) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw ValidationError("frame label '" + n +
                              "' may only contain letters, digits and '_'");
      }
    }
    if (!seen.insert(n).second) {
      throw ValidationError("duplicate frame label '" + n + "'");
    }
  }
  return FramePtr(new Frame(std::move(names)));
}

std::optional<int> Frame::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[i] == label) return i;
  }
  return std::nullopt;
}

static void check_same_frame(const Proposition& a, const Proposition& b) {
  if (!a.same_frame(b)) {
    throw ValidationError("propositions belong to different frames");
  }
}

Proposition operator|(const Proposition& a, const Proposition& b) {
  check_same_frame(a, b);
  return {a.frame_, a.atoms_ | b.atoms_};
}

Proposition operator&(const Proposition& a, const Proposition& b) {
  check_same_frame(a, b);
  return {a.frame_, a.atoms_ & b.atoms_};
}

Proposition Proposition::union_span() const {
  AtomSet span;
  for (int i = 0; i < frame_->size(); ++i) {
    if (atoms_.intersects(frame_->singleton(i))) {
      span |= frame_->singleton(i);
    }
  }
  return {frame_, span};
}

Model Model::shafer(FramePtr frame) {
  AtomSet constrained;
  const int n = frame->size();
  AtomSet::full(n).for_each([&](int atom) {
    if (std::popcount(static_cast<unsigned>(atom)) >= 2) constrained.set(atom);
  });
  return {std::move(frame), ModelKind::kShafer, constrained};
}

Model Model::free(FramePtr frame) {
  return {std::move(frame), ModelKind::kFree, AtomSet{}};
}

Model Model::hybrid(FramePtr frame, const std::vector<Proposition>& empty) {
  AtomSet constrained;
  for (const auto& p : empty) {
    if (!(*p.frame_ptr() == *frame)) {
      throw ValidationError("constrained proposition belongs to another frame");
    }
    constrained |= p.atoms();
  }
  return {std::move(frame), ModelKind::kHybrid, constrained};
}

namespace {

// Recursive-descent parser over the proposition grammar.
class Parser {
 public:
  Parser(std::string_view text, const FramePtr& frame)
      : text_(text), frame_(frame) {}

  AtomSet parse() {
    AtomSet result = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return result;
  }

 private:
  AtomSet expr() {
    AtomSet acc = term();
    while (peek() == '|') {
      ++pos_;
      acc |= term();
    }
    return acc;
  }

  AtomSet term() {
    AtomSet acc = factor();
    while (peek() == '&') {
      ++pos_;
      acc &= factor();
    }
    return acc;
  }

  AtomSet factor() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("expected a label, '(', 'EMPTY' or 'THETA'", pos_);
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      AtomSet inner = expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        throw ParseError("expected ')'", pos_);
      }
      ++pos_;
      return inner;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "EMPTY") return AtomSet{};
      if (word == "THETA") return frame_->theta();
      if (auto idx = frame_->index_of(word)) return frame_->singleton(*idx);
      throw ParseError("unknown label '" + std::string(word) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view text_;
  const FramePtr& frame_;
  std::size_t pos_ = 0;
};

}  // namespace

Proposition parse_proposition(std::string_view text, const FramePtr& frame) {
  return {frame, Parser(text, frame).parse()};
}

std::string print_atoms(const AtomSet& atoms, const Frame& frame) {
  if (atoms.none()) return "EMPTY";
  if (atoms == frame.theta()) return "THETA";
  // Terms are the minimal atoms under bitmask inclusion; each stands for the
  // intersection of its singletons.
  std::string out;
  atoms.for_each([&](int atom) {
    for (int sub = (atom - 1) & atom; sub != 0; sub = (sub - 1) & atom) {
      if (atoms.test(sub)) return;  // not minimal
    }
    if (!out.empty()) out += '|';
    bool first = true;
    for (int i = 0; i < frame.size(); ++i) {
      if ((atom >> i) & 1) {
        if (!first) out += '&';
        out += frame.name(i);
        first = false;
      }
    }
  });
  return out;
}

std::string print_proposition(const Proposition& p) {
  return print_atoms(p.atoms(), p.frame());
}

}  // namespace bft
