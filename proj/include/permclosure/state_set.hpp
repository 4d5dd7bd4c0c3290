#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace permclosure {

using State = std::size_t;
using Letter = std::size_t;

// Subset of at most kMaxStates states, one bit per state.
class StateSet {
 public:
  static constexpr std::size_t kMaxStates = 64;

  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr StateSet singleton(State s) { return StateSet{std::uint64_t{1} << s}; }
  static constexpr StateSet full(std::size_t n) {
    return StateSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr bool contains(State s) const { return (bits_ >> s) & 1U; }
  constexpr void insert(State s) { bits_ |= std::uint64_t{1} << s; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool intersects(StateSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr bool is_subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr StateSet& operator|=(StateSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  friend constexpr StateSet operator|(StateSet a, StateSet b) { return a |= b; }
  friend constexpr StateSet operator&(StateSet a, StateSet b) { return StateSet{a.bits_ & b.bits_}; }
  friend constexpr bool operator==(StateSet, StateSet) = default;
  friend constexpr auto operator<=>(StateSet, StateSet) = default;

  // Ascending state indices.
  std::vector<State> elements() const {
    std::vector<State> out;
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      out.push_back(static_cast<State>(std::countr_zero(rest)));
    }
    return out;
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      f(static_cast<State>(std::countr_zero(rest)));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

// "s0,s2" style rendering used by every text export.
std::string format_state_list(StateSet set);

}  // namespace permclosure
