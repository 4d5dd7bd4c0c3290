#include "permclosure/closure.hpp"

#include <sstream>

namespace permclosure {

std::uint64_t PhaseProfile::state_count() const {
  std::uint64_t out = 1;
  for (const AxisProfile& a : axes) out = checked_mul(out, a.index + a.period);
  return out;
}

namespace {

std::string format_point(const ParikhVector& p) {
  std::ostringstream out;
  out << '(';
  for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << p[j];
  out << ')';
  return out.str();
}

}  // namespace

PhaseProfile phases_from_grid(const LabelGrid& grid) {
  AxisPhases phases = detect_axis_phases(grid);
  if (!phases.stabilized) {
    std::vector<LinePhase> lines;
    std::vector<Letter> axes;
    for (const AxisPhase& axis : phases.axes) {
      for (const LinePhase& line : axis.lines) {
        if (!line.stabilized) {
          lines.push_back(line);
          axes.push_back(axis.axis);
        }
      }
    }
    const auto& alphabet = grid.dfa().alphabet();
    std::ostringstream msg;
    msg << lines.size() << " line(s) show no repeated period within the box; first: direction "
        << alphabet[axes.front()] << " from base " << format_point(lines.front().base) << " (extent "
        << grid.box().extent(axes.front()) << ")";
    throw NotStabilizedError(msg.str(), std::move(lines), std::move(axes));
  }
  PhaseProfile profile;
  for (const AxisPhase& axis : phases.axes) profile.axes.push_back({axis.index, axis.period});
  return profile;
}

PhaseAutomaton::PhaseAutomaton(PhaseProfile profile, std::vector<bool> finals)
    : profile_(std::move(profile)), strides_(profile_.dimension(), 1), finals_(std::move(finals)) {
  for (std::size_t j = profile_.dimension(); j-- > 1;) strides_[j - 1] = strides_[j] * profile_.radix(j);
  if (finals_.size() != profile_.state_count()) {
    throw Error(ErrorKind::kPreconditionViolated, "finals size does not match profile");
  }
}

std::vector<std::size_t> PhaseAutomaton::decode(std::size_t state) const {
  std::vector<std::size_t> tuple(profile_.dimension());
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    tuple[j] = state / strides_[j];
    state %= strides_[j];
  }
  return tuple;
}

std::size_t PhaseAutomaton::encode(const std::vector<std::size_t>& tuple) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < tuple.size(); ++j) out += tuple[j] * strides_[j];
  return out;
}

std::size_t PhaseAutomaton::step(std::size_t state, Letter a) const {
  const std::size_t t = (state / strides_[a]) % profile_.radix(a);
  const std::size_t next = t + 1 < profile_.radix(a) ? t + 1 : profile_.axes[a].index;
  return state - t * strides_[a] + next * strides_[a];
}

Dfa PhaseAutomaton::to_dfa(const std::vector<std::string>& alphabet) const {
  const std::size_t n = state_count();
  std::vector<std::vector<State>> delta(alphabet.size(), std::vector<State>(n));
  std::vector<State> finals;
  for (std::size_t s = 0; s < n; ++s) {
    if (finals_[s]) finals.push_back(s);
    for (Letter a = 0; a < alphabet.size(); ++a) delta[a][s] = step(s, a);
  }
  return Dfa(alphabet, n, 0, std::move(finals), std::move(delta));
}

std::size_t phase_of(std::size_t count, const AxisProfile& axis) {
  if (count < axis.index + axis.period) return count;
  return axis.index + (count - axis.index) % axis.period;
}

PhaseAutomaton build_phase_automaton(const PhaseProfile& profile, const Dfa& d, std::uint64_t state_limit) {
  if (profile.dimension() != d.letter_count()) {
    throw Error(ErrorKind::kPreconditionViolated, "profile dimension does not match alphabet size");
  }
  for (const AxisProfile& a : profile.axes) {
    if (a.period == 0) throw Error(ErrorKind::kPreconditionViolated, "periods must be positive");
  }
  const std::uint64_t size = profile.state_count();
  if (size > state_limit) {
    throw Error(ErrorKind::kStateBudgetExceeded,
                "phase automaton needs " + std::to_string(size) + " states, limit is " + std::to_string(state_limit));
  }
  PhaseAutomaton shape(profile, std::vector<bool>(size, false));

  // Synchronised product of the phase counters with d: a tuple is final iff it
  // is reachable together with a final state of d.
  const std::size_t n = d.state_count();
  const std::uint64_t pairs = checked_mul(size, n);
  std::vector<bool> visited(pairs, false);
  std::vector<bool> finals(size, false);
  std::vector<std::uint64_t> queue{d.start()};
  visited[d.start()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t tuple = queue[i] / n;
    const State q = queue[i] % n;
    if (d.is_final(q)) finals[tuple] = true;
    for (Letter a = 0; a < d.letter_count(); ++a) {
      const std::uint64_t next = std::uint64_t{shape.step(tuple, a)} * n + d.next(q, a);
      if (!visited[next]) {
        visited[next] = true;
        queue.push_back(next);
      }
    }
  }
  return PhaseAutomaton(profile, std::move(finals));
}

std::vector<bool> grid_finals(const PhaseProfile& profile, const LabelGrid& grid) {
  PhaseAutomaton shape(profile, std::vector<bool>(profile.state_count(), false));
  const StateSet accepting = grid.dfa().final_set();
  std::vector<bool> finals(shape.state_count(), false);
  std::vector<std::size_t> tuple(profile.dimension());
  for (std::size_t idx = 0; idx < grid.box().volume(); ++idx) {
    if (!grid.at(idx).intersects(accepting)) continue;
    const ParikhVector p = grid.box().point(idx);
    for (std::size_t j = 0; j < tuple.size(); ++j) tuple[j] = phase_of(p[j], profile.axes[j]);
    finals[shape.encode(tuple)] = true;
  }
  return finals;
}

std::uint64_t group_bound(const Dfa& d) {
  if (!is_permutation_automaton(d)) throw Error(ErrorKind::kNotPermutation, "group bound needs a permutation automaton");
  std::uint64_t out = 1;
  for (Letter a = 0; a < d.letter_count(); ++a) {
    out = checked_mul(out, d.state_count());
    out = checked_mul(out, cycle_structure(d, a).order);
  }
  return out;
}

Box default_group_box(const Dfa& d) {
  std::vector<std::size_t> extents;
  for (Letter a = 0; a < d.letter_count(); ++a) {
    extents.push_back(checked_mul(d.state_count() + 1, cycle_structure(d, a).order));
  }
  return Box(std::move(extents));
}

ClosureResult build_closure(const Dfa& d, const ClosureOptions& options) {
  const bool group = is_permutation_automaton(d);
  std::optional<Box> box;
  if (options.budget) {
    box = Box::uniform(d.letter_count(), *options.budget);
  } else if (group) {
    box = default_group_box(d);
  } else {
    throw Error(ErrorKind::kPreconditionViolated, "non-permutation input requires an exploration budget");
  }

  const LabelGrid grid = sigma_grid(d, *box, options.point_budget);
  ClosureReport report;
  report.profile = phases_from_grid(grid);
  const PhaseAutomaton phase = build_phase_automaton(report.profile, d, options.state_limit);
  Dfa raw = phase.to_dfa(d.alphabet());

  report.raw_size = raw.state_count();
  if (group) {
    report.group_bound = group_bound(d);
    report.bound_respected = report.raw_size <= *report.group_bound;
  }
  if (!options.minimize) return ClosureResult{std::move(raw), std::move(report)};
  Dfa minimal = minimize(raw);
  report.minimized_size = minimal.state_count();
  return ClosureResult{std::move(minimal), std::move(report)};
}

Dfa jfa_to_dfa(const Dfa& d) {
  if (!is_permutation_automaton(d)) throw Error(ErrorKind::kNotPermutation, "jumping automaton must be a permutation automaton");
  return build_closure(d).dfa;
}

bool transitions_commute(const Dfa& d) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<State> queue{d.start()};
  seen[d.start()] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const State t = queue[i];
    for (Letter a = 0; a < d.letter_count(); ++a) {
      for (Letter b = a + 1; b < d.letter_count(); ++b) {
        if (d.next(d.next(t, a), b) != d.next(d.next(t, b), a)) return false;
      }
      const State u = d.next(t, a);
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return true;
}

}  // namespace permclosure
