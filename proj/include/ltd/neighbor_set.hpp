#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace ltd {

/// Set of neighbour indices packed into a bit mask. Bit i stands for the
/// neighbour labelled i+1. The raw mask value doubles as the tile index of
/// the coverage tessellation and as the state index of the knowledge chain.
class NeighborSet {
 public:
  using mask_type = std::uint32_t;
  static constexpr int kMaxNeighbours = 25;

  constexpr NeighborSet() = default;
  constexpr explicit NeighborSet(mask_type bits) : bits_(bits) {}

  static constexpr NeighborSet full(int n) {
    assert(n >= 0 && n <= kMaxNeighbours);
    return NeighborSet(n == 0 ? 0u : ((mask_type{1} << n) - 1u));
  }
  static constexpr NeighborSet single(int i) { return NeighborSet(mask_type{1} << i); }

  constexpr mask_type bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }

  /// Number of neighbours in the set. A report from a tile of order k
  /// reveals k neighbours at once.
  constexpr int order() const { return std::popcount(bits_); }

  constexpr bool is_subset_of(NeighborSet o) const { return (bits_ & o.bits_) == bits_; }
  constexpr bool is_proper_subset_of(NeighborSet o) const {
    return bits_ != o.bits_ && is_subset_of(o);
  }

  constexpr NeighborSet with(int i) const { return NeighborSet(bits_ | (mask_type{1} << i)); }
  constexpr NeighborSet minus(NeighborSet o) const { return NeighborSet(bits_ & ~o.bits_); }
  constexpr NeighborSet complement_in(int n) const { return full(n).minus(*this); }

  friend constexpr NeighborSet operator|(NeighborSet a, NeighborSet b) {
    return NeighborSet(a.bits_ | b.bits_);
  }
  friend constexpr NeighborSet operator&(NeighborSet a, NeighborSet b) {
    return NeighborSet(a.bits_ & b.bits_);
  }
  constexpr NeighborSet& operator|=(NeighborSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  friend constexpr bool operator==(NeighborSet, NeighborSet) = default;

  /// Member indices, ascending (0-based).
  std::vector<int> members() const {
    std::vector<int> out;
    for (mask_type b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  /// Display form with 1-based labels: "{}", "{1,3}".
  std::string to_string() const {
    std::string s = "{";
    for (int i : members()) {
      if (s.size() > 1) s += ',';
      s += std::to_string(i + 1);
    }
    return s + "}";
  }

 private:
  mask_type bits_ = 0;
};

/// Enumerates every subset of a mask in ascending numeric order, from the
/// empty set up to the mask itself.
class SubsetRange {
 public:
  class iterator {
   public:
    constexpr iterator(NeighborSet::mask_type cur, NeighborSet::mask_type of, bool done)
        : cur_(cur), of_(of), done_(done) {}
    constexpr NeighborSet operator*() const { return NeighborSet(cur_); }
    constexpr iterator& operator++() {
      if (cur_ == of_) {
        cur_ = 0;
        done_ = true;
      } else {
        cur_ = (cur_ - of_) & of_;
      }
      return *this;
    }
    friend constexpr bool operator==(const iterator& a, const iterator& b) {
      return a.cur_ == b.cur_ && a.done_ == b.done_;
    }

   private:
    NeighborSet::mask_type cur_, of_;
    bool done_;
  };

  constexpr explicit SubsetRange(NeighborSet of) : of_(of.bits()) {}
  constexpr iterator begin() const { return iterator(0, of_, false); }
  constexpr iterator end() const { return iterator(0, of_, true); }

 private:
  NeighborSet::mask_type of_;
};

inline constexpr SubsetRange subsets_of(NeighborSet s) { return SubsetRange(s); }

/// All 2^n states sorted by increasing cardinality, ties by numeric value.
/// This is a linear extension of the subset order: every state precedes its
/// strict supersets, so back-substitution can walk it in reverse.
inline std::vector<std::uint32_t> states_by_order(int n) {
  std::vector<std::uint32_t> states(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < states.size(); ++s) states[s] = s;
  std::stable_sort(states.begin(), states.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return states;
}

}  // namespace ltd
