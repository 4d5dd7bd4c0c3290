#include "permclosure/unary_decomposition.hpp"

#include <algorithm>
#include <unordered_map>

namespace permclosure {

namespace {

std::string format_point(const ParikhVector& p) {
  std::string out = "(";
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(p[j]);
  }
  return out + ")";
}

std::uint64_t chain_key(const ChainState& s) {
  // Counters stay far below 2^32 in any buildable family; the label width is
  // folded in with a multiplicative mix.
  return s.label.bits() * 0x9E3779B97F4A7C15ULL ^ s.counter;
}

}  // namespace

const UnaryChainAutomaton& DecompositionFamily::at(const ParikhVector& base) const {
  if (!region.contains(base)) throw Error(ErrorKind::kOutOfBox, "base point " + format_point(base) + " outside region");
  return automata[region.linear(base)];
}

Box hyperplane_region(const Box& box, Letter axis) {
  std::vector<std::size_t> extents = box.extents();
  extents.at(axis) = 1;
  return Box(std::move(extents));
}

std::size_t default_step_budget(const Dfa& d, Letter axis, const Box& region) {
  const std::size_t n = d.state_count();
  if (is_permutation_automaton(d)) return checked_mul(n, cycle_structure(d, axis).order) + 1;
  std::size_t diameter = 0;
  for (std::size_t e : region.extents()) diameter += e - 1;
  return checked_mul(checked_mul(4, std::max<std::size_t>(diameter, 1)), n);
}

ChainState run_unary(const UnaryChainAutomaton& u, std::size_t steps) {
  if (steps < u.chain.size()) return u.chain[steps];
  if (!u.closed()) {
    throw Error(ErrorKind::kChainOpen, "chain at " + format_point(u.base) + " is open beyond step " +
                                           std::to_string(u.chain.size() - 1));
  }
  const std::size_t tail = *u.loop_target;
  const std::size_t period = u.chain.size() - tail;
  return u.chain[tail + (steps - tail) % period];
}

UnaryProfile unary_index_period(const UnaryChainAutomaton& u) {
  if (!u.closed()) throw Error(ErrorKind::kChainOpen, "chain at " + format_point(u.base) + " is open");
  return UnaryProfile{*u.loop_target, u.chain.size() - *u.loop_target};
}

bool unary_language_membership(const UnaryChainAutomaton& u, std::size_t n, StateSet finals) {
  return run_unary(u, n).label.intersects(finals);
}

DecompositionFamily build_family(const Dfa& d, Letter axis, const Box& region) {
  return build_family(d, axis, region, default_step_budget(d, axis, region));
}

DecompositionFamily build_family(const Dfa& d, Letter axis, const Box& region, std::size_t step_budget) {
  if (!d.fits_state_set()) {
    throw Error(ErrorKind::kPreconditionViolated,
                "state labels support at most " + std::to_string(StateSet::kMaxStates) + " states");
  }
  if (axis >= d.letter_count()) throw Error(ErrorKind::kUnknownSymbol, "axis outside alphabet");
  if (region.dimension() != d.letter_count() || region.extent(axis) != 1) {
    throw Error(ErrorKind::kRegionMismatch, "region must span the hyperplane of the axis (extent 1 along it)");
  }

  DecompositionFamily family{d, axis, region, {}, {}};
  family.automata.resize(region.volume());
  family.predecessors.resize(region.volume());

  for (std::size_t pos = 0; pos < region.volume(); ++pos) {
    UnaryChainAutomaton& u = family.automata[pos];
    u.axis = axis;
    u.base = region.point(pos);

    auto& preds = family.predecessors[pos];
    for (Letter b = 0; b < d.letter_count(); ++b) {
      if (b != axis && u.base[b] > 0) preds.push_back({pos - region.stride(b), b});
    }
    StateSet start_label;
    if (preds.empty()) start_label = StateSet::singleton(d.start());
    for (const Predecessor& q : preds) {
      const UnaryChainAutomaton& pred = family.automata[q.position];
      UnaryProfile prof = unary_index_period(pred);
      u.inherited_index = std::max(u.inherited_index, prof.index);
      u.inherited_period = checked_lcm(u.inherited_period, prof.period);
      start_label |= d.image(pred.chain[0].label, q.letter);
    }
    const std::size_t counter_limit = u.inherited_index + u.inherited_period;

    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    auto find = [&](const ChainState& s) -> std::optional<std::size_t> {
      auto it = seen.find(chain_key(s));
      if (it == seen.end()) return std::nullopt;
      for (std::size_t m : it->second) {
        if (u.chain[m] == s) return m;
      }
      return std::nullopt;
    };

    u.chain.push_back({start_label, 0});
    seen[chain_key(u.chain[0])].push_back(0);
    for (;;) {
      const ChainState cur = u.chain.back();
      ChainState next;
      next.label = d.image(cur.label, axis);
      for (const Predecessor& q : preds) {
        next.label |= d.image(run_unary(family.automata[q.position], cur.counter + 1).label, q.letter);
      }
      next.counter = cur.counter + 1 < counter_limit ? cur.counter + 1 : u.inherited_index;
      if (auto m = find(next)) {
        u.loop_target = *m;
        break;
      }
      if (u.chain.size() >= step_budget) {
        throw Error(ErrorKind::kBudgetExceeded, "chain at base " + format_point(u.base) + " did not close within " +
                                                    std::to_string(step_budget) + " states");
      }
      seen[chain_key(next)].push_back(u.chain.size());
      u.chain.push_back(next);
    }
  }
  return family;
}

std::optional<ParikhVector> decomposition_check(const DecompositionFamily& family, const LabelGrid& grid) {
  const Box& box = grid.box();
  const Letter axis = family.axis;
  if (!(family.dfa == grid.dfa())) throw Error(ErrorKind::kRegionMismatch, "family and grid come from different automata");
  if (box.dimension() != family.region.dimension()) throw Error(ErrorKind::kRegionMismatch, "dimension mismatch");
  for (std::size_t j = 0; j < box.dimension(); ++j) {
    if (j != axis && box.extent(j) > family.region.extent(j)) {
      throw Error(ErrorKind::kRegionMismatch, "region does not cover grid along axis " + std::to_string(j));
    }
  }
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    ParikhVector p = box.point(idx);
    const std::size_t steps = p[axis];
    p[axis] = 0;
    if (run_unary(family.at(p), steps).label != grid.at(idx)) return box.point(idx);
  }
  return std::nullopt;
}

bool shuffle_decomposition_accepts(const DecompositionFamily& family, std::span<const Letter> word) {
  ParikhVector p = parikh(word, family.dfa.letter_count());
  const std::size_t steps = p[family.axis];
  p[family.axis] = 0;
  return unary_language_membership(family.at(p), steps, family.dfa.final_set());
}

bool GroupPropertyReport::passed() const { return failures() == 0; }

std::size_t GroupPropertyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(chains.begin(), chains.end(), [](const ChainReport& c) { return !c.passed(); }));
}

GroupPropertyReport group_property_report(const Dfa& d, const DecompositionFamily& family) {
  if (!is_permutation_automaton(d)) throw Error(ErrorKind::kNotPermutation, "group properties need a permutation automaton");
  const Letter axis = family.axis;
  GroupPropertyReport report;
  report.axis = axis;
  report.letter_order = cycle_structure(d, axis).order;
  const std::uint64_t order = report.letter_order;

  for (const UnaryChainAutomaton& u : family.automata) {
    ChainReport r;
    r.base = u.base;
    r.profile = unary_index_period(u);
    const auto& chain = u.chain;
    const std::size_t tail = r.profile.index;

    for (std::size_t m = 0; m + 1 < chain.size(); ++m) {
      if (chain[m + 1].label.size() < chain[m].label.size()) r.cardinality_monotone = false;
    }
    for (std::size_t m = tail; m < chain.size(); ++m) {
      if (chain[m].label.size() != chain[tail].label.size()) r.cardinality_monotone = false;
    }

    r.period_divides_order = order % r.profile.period == 0;

    const std::size_t cycle_size = chain[tail].label.size();
    r.index_within_bound = r.profile.index <= (cycle_size - 1) * order;

    for (std::size_t m = 0; m < chain.size(); ++m) {
      const ChainState& s = chain[m];
      if (s.counter >= u.inherited_index) {
        const ChainState t = run_unary(u, m + order);
        const bool grows = t.label.size() > s.label.size();
        if (!(grows || t == s) || t.label.size() < s.label.size()) r.order_step_grows_or_fixes = false;
      }
      if (m >= u.inherited_index) {
        const std::uint64_t span = checked_lcm(u.inherited_period, subset_cycle_lcm(d, axis, s.label));
        const ChainState t = run_unary(u, m + span);
        if (t.label.size() == s.label.size() && (t != s || span % r.profile.period != 0)) r.cycle_detection_holds = false;
      }
    }
    report.chains.push_back(std::move(r));
  }
  return report;
}

}  // namespace permclosure
