#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permclosure/dfa.hpp"
#include "permclosure/parikh_grid.hpp"

namespace permclosure {

struct AxisProfile {
  std::size_t index = 0;
  std::size_t period = 1;
  friend bool operator==(const AxisProfile&, const AxisProfile&) = default;
};

/// Per-letter (I_j, P_j) of the phase product.
struct PhaseProfile {
  std::vector<AxisProfile> axes;

  std::size_t dimension() const { return axes.size(); }
  std::size_t radix(std::size_t j) const { return axes[j].index + axes[j].period; }
  /// prod_j (I_j + P_j); throws `kOverflow`.
  std::uint64_t state_count() const;

  friend bool operator==(const PhaseProfile&, const PhaseProfile&) = default;
};

/// Raised when the labelling has no witnessed period on some line.
class NotStabilizedError : public Error {
 public:
  NotStabilizedError(const std::string& what, std::vector<LinePhase> failing_lines, std::vector<Letter> failing_axes)
      : Error(ErrorKind::kNotStabilized, what),
        failing_lines_(std::move(failing_lines)),
        failing_axes_(std::move(failing_axes)) {}

  const std::vector<LinePhase>& failing_lines() const { return failing_lines_; }
  const std::vector<Letter>& failing_axes() const { return failing_axes_; }

 private:
  std::vector<LinePhase> failing_lines_;
  std::vector<Letter> failing_axes_;  // parallel to failing_lines_
};

PhaseProfile phases_from_grid(const LabelGrid& grid);

inline constexpr std::uint64_t kDefaultStateLimit = 10'000'000;

/// Product of per-letter counters. Tuples are flattened row-major with radices
/// I_j + P_j (last letter fastest); the start tuple is index 0.
class PhaseAutomaton {
 public:
  PhaseAutomaton(PhaseProfile profile, std::vector<bool> finals);

  const PhaseProfile& profile() const { return profile_; }
  std::size_t state_count() const { return finals_.size(); }
  const std::vector<bool>& finals() const { return finals_; }

  std::vector<std::size_t> decode(std::size_t state) const;
  std::size_t encode(const std::vector<std::size_t>& tuple) const;
  /// mu: advance coordinate `a`, wrapping from I_a + P_a - 1 back to I_a.
  std::size_t step(std::size_t state, Letter a) const;

  Dfa to_dfa(const std::vector<std::string>& alphabet) const;

 private:
  PhaseProfile profile_;
  std::vector<std::size_t> strides_;
  std::vector<bool> finals_;
};

/// Counter value reached after `count` letters in a (index, period) counter.
std::size_t phase_of(std::size_t count, const AxisProfile& axis);

/// Finals by BFS over (phase tuple, state of d) from (0, s0).
PhaseAutomaton build_phase_automaton(const PhaseProfile& profile, const Dfa& d,
                                     std::uint64_t state_limit = kDefaultStateLimit);

/// Second finals computation: tuple t is final iff some in-box p with
/// phase(p) == t has sigma(p) meeting the finals.
std::vector<bool> grid_finals(const PhaseProfile& profile, const LabelGrid& grid);

/// n^k * prod_j L_j. Throws `kNotPermutation`, `kOverflow`.
std::uint64_t group_bound(const Dfa& d);

/// Extents (n+1) * L_j per axis: index bound (n-1) * L_j plus two periods.
Box default_group_box(const Dfa& d);

struct ClosureOptions {
  bool minimize = true;
  // Per-axis extent of the exploration box; required for non-permutation input.
  std::optional<std::size_t> budget;
  std::size_t point_budget = kDefaultPointBudget;
  std::uint64_t state_limit = kDefaultStateLimit;
};

inline constexpr const char* kAsymptoticBound = "O((n * exp(sqrt(n * ln n)))^k)";

struct ClosureReport {
  PhaseProfile profile;
  std::uint64_t raw_size = 0;
  std::optional<std::uint64_t> minimized_size;
  std::optional<std::uint64_t> group_bound;
  bool bound_respected = true;
  bool stabilized = true;
};

struct ClosureResult {
  Dfa dfa;
  ClosureReport report;
};

/// sigma_grid -> phases_from_grid -> build_phase_automaton -> flatten -> minimize.
ClosureResult build_closure(const Dfa& d, const ClosureOptions& options = {});

/// Reads d as a jumping automaton and returns the minimal DFA of its language.
/// Throws `kNotPermutation`.
Dfa jfa_to_dfa(const Dfa& d);

/// True iff every reachable state commutes: next(next(t,a),b) == next(next(t,b),a).
bool transitions_commute(const Dfa& d);

}  // namespace permclosure
