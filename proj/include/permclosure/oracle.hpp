#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>

#include "permclosure/dfa.hpp"
#include "permclosure/parikh_grid.hpp"

// Brute-force ground truth for the closure construction. Nothing in here uses
// the label grid or the chain automata; agreement with them is the point.
namespace permclosure::oracle {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// { psi(u) : u in L(d), |u| <= max_len }.
struct ParikhSet {
  std::size_t alphabet_size = 0;
  std::size_t max_len = 0;
  std::set<ParikhVector> members;

  bool contains(const ParikhVector& p) const { return members.count(p) != 0; }
};

/// Memoised search over (remaining letter counts, state). Throws
/// `kBudgetExceeded` when the memo would exceed `budget` entries.
ParikhSet parikh_set(const Dfa& d, std::size_t max_len, std::uint64_t budget = kDefaultBudget);

/// psi(w) in psi(L). Throws `kLengthExceeded` if |w| > ps.max_len.
bool closure_membership_oracle(const ParikhSet& ps, std::span<const Letter> w);

/// Some rearrangement of `w` is accepted by `d`.
bool jumping_accepts(const Dfa& d, std::span<const Letter> w);

struct VerifyResult {
  bool passed = true;
  // In the original automaton's letter indices.
  std::optional<Word> counterexample;
  // True when the candidate commutes and one representative per Parikh vector
  // (plus seeded shuffles) was checked instead of every word.
  bool representatives_only = false;
  std::uint64_t words_checked = 0;
};

/// Checks L(candidate) against perm(L(original)) on every word up to `max_len`.
/// Throws `kAlphabetMismatch`, `kBudgetExceeded`.
VerifyResult verify_closure(const Dfa& candidate, const Dfa& original, std::size_t max_len,
                            std::uint64_t seed = kDefaultSeed, std::uint64_t budget = kDefaultBudget);

/// a_1^{p_1} ... a_k^{p_k}.
Word canonical_word(const ParikhVector& p);

/// Uniform shuffle with a portable reduction, so sequences are identical on every platform.
void shuffle_word(Word& w, std::mt19937_64& rng);

/// All words of length <= max_len in shortlex order; `visit` returns false to stop.
template <typename Visit>
void for_each_word(std::size_t k, std::size_t max_len, Visit&& visit) {
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    w.assign(len, 0);
    for (;;) {
      if (!visit(static_cast<const Word&>(w))) return;
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == k) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
    if (k == 0) return;
  }
}

}  // namespace permclosure::oracle
