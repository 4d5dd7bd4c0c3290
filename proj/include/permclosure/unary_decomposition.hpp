#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "permclosure/dfa.hpp"
#include "permclosure/parikh_grid.hpp"

namespace permclosure {

/// One state (label, counter) of a unary chain automaton.
struct ChainState {
  StateSet label;
  std::size_t counter = 0;
  friend bool operator==(const ChainState&, const ChainState&) = default;
};

/// Reachable part of the unary automaton along letter `axis` anchored at a
/// base point of the hyperplane {p : p[axis] == 0}.
///
/// `chain[m]` is the state after reading axis^m. Once the rho closes, the last
/// state steps to `chain[*loop_target]`.
struct UnaryChainAutomaton {
  Letter axis = 0;
  ParikhVector base;
  std::vector<ChainState> chain;
  std::optional<std::size_t> loop_target;
  // Max index / lcm of periods over the predecessor automata (0 / 1 when none).
  std::size_t inherited_index = 0;
  std::size_t inherited_period = 1;

  bool closed() const { return loop_target.has_value(); }
};

/// Predecessor of a base point: base - e_letter, stored by region position.
struct Predecessor {
  std::size_t position = 0;
  Letter letter = 0;
};

/// All chain automata for one axis over a finite region of the hyperplane.
/// The region is a Box whose extent along `axis` is 1.
struct DecompositionFamily {
  Dfa dfa;
  Letter axis = 0;
  Box region;
  std::vector<UnaryChainAutomaton> automata;  // indexed by region.linear(base)
  std::vector<std::vector<Predecessor>> predecessors;

  const UnaryChainAutomaton& at(const ParikhVector& base) const;
};

/// Region covering the hyperplane projection of `box` along `axis`.
Box hyperplane_region(const Box& box, Letter axis);

/// Default chain-length budget: for permutation automata n * L_axis + 1 (enough
/// to close every rho), otherwise 4 * (region diameter) * n.
std::size_t default_step_budget(const Dfa& d, Letter axis, const Box& region);

/// Builds every chain automaton of the region, predecessors first. A chain that
/// has not closed after `step_budget` states throws `kBudgetExceeded` naming
/// its base point.
DecompositionFamily build_family(const Dfa& d, Letter axis, const Box& region, std::size_t step_budget);
DecompositionFamily build_family(const Dfa& d, Letter axis, const Box& region);

/// State after axis^steps, folding through the rho. Throws `kChainOpen`.
ChainState run_unary(const UnaryChainAutomaton& u, std::size_t steps);

/// Index and period of the closed rho. Throws `kChainOpen`.
UnaryProfile unary_index_period(const UnaryChainAutomaton& u);

/// axis^n is accepted, i.e. the label after n steps meets `finals`.
bool unary_language_membership(const UnaryChainAutomaton& u, std::size_t n, StateSet finals);

/// Compares every grid label with the base automaton's label after p[axis]
/// steps. Returns the first mismatching point, or nullopt when all agree.
/// Throws `kRegionMismatch` if the family does not cover the grid.
std::optional<ParikhVector> decomposition_check(const DecompositionFamily& family, const LabelGrid& grid);

/// Membership of `word` in the union over base points p of
/// (words over the other letters with Parikh vector p) shuffled with L(A_p).
/// The projection of `word` onto the non-axis letters must lie in the region.
bool shuffle_decomposition_accepts(const DecompositionFamily& family, std::span<const Letter> word);

struct ChainReport {
  ParikhVector base;
  UnaryProfile profile;
  bool cardinality_monotone = true;      // non-decreasing, constant on the cycle
  bool period_divides_order = true;      // period | L_axis
  bool index_within_bound = true;        // index <= (|T| - 1) * L_axis, T on the cycle
  bool order_step_grows_or_fixes = true;  // L_axis steps from counter >= I grow or return
  bool cycle_detection_holds = true;     // equal size after lcm(P, L_S) steps => same state

  bool passed() const {
    return cardinality_monotone && period_divides_order && index_within_bound && order_step_grows_or_fixes &&
           cycle_detection_holds;
  }
};

struct GroupPropertyReport {
  Letter axis = 0;
  std::uint64_t letter_order = 1;
  std::vector<ChainReport> chains;

  bool passed() const;
  std::size_t failures() const;
};

/// Checks the permutation-automaton lemmas on every chain of the family.
/// Throws `kNotPermutation` unless `d` is a permutation automaton.
GroupPropertyReport group_property_report(const Dfa& d, const DecompositionFamily& family);

}  // namespace permclosure
