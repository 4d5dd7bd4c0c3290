#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permclosure/errors.hpp"
#include "permclosure/state_set.hpp"

namespace permclosure {

using Word = std::vector<Letter>;

/// Complete deterministic automaton over an ordered alphabet.
///
/// States are `0 .. state_count()-1`. The transition table is stored per
/// letter (`delta[letter][state]`), which is also the on-disk layout, so a
/// letter's action on the state set is a contiguous array.
class Dfa {
 public:
  /// Validates every invariant and throws `Error{kInvalidDfa}` naming the
  /// offending field. Finals are sorted; duplicates are rejected.
  Dfa(std::vector<std::string> alphabet, std::size_t state_count, State start,
      std::vector<State> finals, std::vector<std::vector<State>> delta);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t letter_count() const { return alphabet_.size(); }
  std::size_t state_count() const { return state_count_; }
  State start() const { return start_; }
  const std::vector<State>& finals() const { return finals_; }
  bool is_final(State s) const { return final_flags_[s]; }

  State next(State s, Letter a) const { return delta_[a][s]; }
  const std::vector<State>& letter_map(Letter a) const { return delta_[a]; }
  const std::vector<std::vector<State>>& delta() const { return delta_; }

  std::optional<Letter> find_letter(std::string_view name) const;

  // Bit-vector views; only valid when state_count() <= StateSet::kMaxStates.
  bool fits_state_set() const { return state_count_ <= StateSet::kMaxStates; }
  StateSet final_set() const;
  StateSet image(StateSet set, Letter a) const {
    StateSet out;
    const auto& row = delta_[a];
    set.for_each([&](State s) { out.insert(row[s]); });
    return out;
  }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::vector<std::string> alphabet_;
  std::size_t state_count_;
  State start_;
  std::vector<State> finals_;
  std::vector<std::vector<State>> delta_;
  std::vector<bool> final_flags_;
};

/// Splits whitespace-separated symbol names into letter indices.
Word parse_word(const std::vector<std::string>& alphabet, std::string_view text);
std::string format_word(const std::vector<std::string>& alphabet, std::span<const Letter> word);

/// δ*(start, w). Throws `kUnknownSymbol` for a letter index outside the alphabet.
State run(const Dfa& d, std::span<const Letter> word);
State run(const Dfa& d, std::string_view word);
bool accepts(const Dfa& d, std::span<const Letter> word);

bool is_permutation_letter(const Dfa& d, Letter a);
bool is_permutation_automaton(const Dfa& d);

struct CycleStructure {
  Letter letter = 0;
  // Each cycle starts at its smallest state; cycles ordered by that state.
  std::vector<std::vector<State>> cycles;
  std::uint64_t order = 1;
};

/// Disjoint cycle decomposition of a permutation letter. Throws `kNotPermutation`.
CycleStructure cycle_structure(const Dfa& d, Letter a);

/// lcm of the cycle lengths of the states in `subset` under letter `a`.
/// An empty subset yields 1.
std::uint64_t subset_cycle_lcm(const Dfa& d, Letter a, StateSet subset);

/// True iff `a^m` fixes every element of `subset`.
bool subset_power_identity(const Dfa& d, Letter a, StateSet subset, std::uint64_t m);

struct UnaryProfile {
  std::size_t index = 0;
  std::size_t period = 1;
  friend bool operator==(const UnaryProfile&, const UnaryProfile&) = default;
};

/// Index and period of the rho traced from `start` under the successor table `next`.
UnaryProfile unary_profile(std::span<const State> next, State start);

/// Checks that the period divides `k` given `next^k(s) == s` for some `s` on the
/// start's rho. Throws `kPreconditionViolated` when that hypothesis fails.
bool unary_period_divides_check(const UnaryProfile& profile, std::span<const State> next,
                                State start, State s, std::uint64_t k);

/// Minimal complete DFA; states renumbered by BFS from the start in alphabet order.
Dfa minimize(const Dfa& d);

struct EquivalenceResult {
  bool equivalent = true;
  // Letter indices refer to the first automaton's alphabet.
  std::optional<Word> counterexample;
};

/// Language equality. On failure returns the lexicographically least among the
/// shortest distinguishing words. Alphabets are matched by symbol name.
EquivalenceResult equivalent(const Dfa& a, const Dfa& b);

// Exact arithmetic helpers, throwing `kOverflow` instead of wrapping.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

}  // namespace permclosure
