#ifndef BFT_ATOMSET_HPP
#define BFT_ATOMSET_HPP

#include <array>
#include <bit>
#include <cstdint>

namespace bft {

// Upper bound on the number of singleton hypotheses in a frame.
inline constexpr int kMaxSingletons = 10;

// A set of Venn atoms of a frame of n <= kMaxSingletons singletons.
//
// Atom k (1 <= k <= 2^n - 1) is the region of the Venn diagram covered by
// exactly the singletons whose bit is set in k; bit 0 is never used.  Every
// element of the hyper-power set is a union of atoms: the singleton with
// index i owns all atoms whose i-th bit is set, an intersection of
// propositions is the intersection of their atom sets, a union is the union.
class AtomSet {
 public:
  static constexpr int kBits = 1 << kMaxSingletons;
  static constexpr int kWords = kBits / 64;

  constexpr AtomSet() = default;

  static AtomSet single(int atom) {
    AtomSet s;
    s.set(atom);
    return s;
  }

  void set(int atom) { words_[atom >> 6] |= std::uint64_t{1} << (atom & 63); }
  void reset(int atom) { words_[atom >> 6] &= ~(std::uint64_t{1} << (atom & 63)); }
  bool test(int atom) const {
    return (words_[atom >> 6] >> (atom & 63)) & 1u;
  }

  bool none() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  bool any() const { return !none(); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  // Calls fn(atom) for every atom in the set, in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int wi = 0; wi < kWords; ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        int b = std::countr_zero(w);
        fn(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

  friend AtomSet operator&(const AtomSet& a, const AtomSet& b) {
    AtomSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = a.words_[i] & b.words_[i];
    return r;
  }
  friend AtomSet operator|(const AtomSet& a, const AtomSet& b) {
    AtomSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = a.words_[i] | b.words_[i];
    return r;
  }
  // Set difference a \ b.
  friend AtomSet operator-(const AtomSet& a, const AtomSet& b) {
    AtomSet r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = a.words_[i] & ~b.words_[i];
    return r;
  }
  AtomSet& operator&=(const AtomSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  AtomSet& operator|=(const AtomSet& o) {
    for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool operator==(const AtomSet& o) const { return words_ == o.words_; }
  bool operator!=(const AtomSet& o) const { return words_ != o.words_; }
  // Any strict total order works for map keys; word-lexicographic is cheap.
  bool operator<(const AtomSet& o) const { return words_ < o.words_; }

  bool subset_of(const AtomSet& o) const {
    for (int i = 0; i < kWords; ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }
  bool intersects(const AtomSet& o) const {
    for (int i = 0; i < kWords; ++i) {
      if ((words_[i] & o.words_[i]) != 0) return true;
    }
    return false;
  }

  // All atoms of a frame with n singletons: 1 .. 2^n - 1.
  static AtomSet full(int n) {
    AtomSet s;
    int atoms = (1 << n) - 1;
    for (int wi = 0; wi * 64 <= atoms; ++wi) {
      int lo = wi * 64;
      int hi = lo + 63;
      std::uint64_t w = ~std::uint64_t{0};
      if (lo == 0) w &= ~std::uint64_t{1};  // atom 0 does not exist
      if (hi > atoms) w &= (~std::uint64_t{0}) >> (hi - atoms);
      s.words_[wi] = w;
    }
    return s;
  }

  // Atoms owned by singleton i: every atom whose i-th bit is set.
  static AtomSet singleton(int i, int n) {
    AtomSet s = full(n);
    AtomSet r;
    s.for_each([&](int atom) {
      if ((atom >> i) & 1) r.set(atom);
    });
    return r;
  }

  // Upward closure in the bitmask-subset order: adds every atom j that is a
  // superset region (j covers all singletons of some atom k in the set).
  // The closure of any canonical atom set is the unique representable
  // hyper-power-set element equal to it modulo the model constraints.
  AtomSet upward_closure(int n) const {
    AtomSet r;
    int limit = 1 << n;
    for_each([&](int atom) {
      int s = atom;
      while (true) {
        r.set(s);
        if (s == limit - 1) break;
        s = (s + 1) | atom;
      }
    });
    return r;
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace bft

#endif  // BFT_ATOMSET_HPP
