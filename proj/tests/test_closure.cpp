#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "permclosure/closure.hpp"
#include "permclosure/oracle.hpp"
#include "support/random_automata.hpp"

using namespace permclosure;

namespace {

PhaseProfile profile(std::initializer_list<AxisProfile> axes) { return PhaseProfile{std::vector<AxisProfile>(axes)}; }

}  // namespace

TEST_CASE("phases from grid") {
  CHECK(phases_from_grid(sigma_grid(fixtures::perm_aut(), default_group_box(fixtures::perm_aut()))) ==
        profile({{2, 3}, {1, 2}}));
  CHECK(phases_from_grid(sigma_grid(fixtures::pure_cycle(5), Box::uniform(1, 12))) == profile({{0, 5}}));
  try {
    phases_from_grid(sigma_grid(fixtures::grid_aut(), Box::uniform(2, 10)));
    FAIL("expected NotStabilized");
  } catch (const NotStabilizedError& e) {
    CHECK(e.kind() == ErrorKind::kNotStabilized);
    CHECK_FALSE(e.failing_lines().empty());
    CHECK(e.failing_lines().size() == e.failing_axes().size());
    CHECK(std::string(e.what()).find("direction") != std::string::npos);
  }
}

TEST_CASE("phase automaton structure") {
  const PhaseProfile p = profile({{2, 3}, {1, 2}});
  CHECK(p.state_count() == 15);
  const PhaseAutomaton c = build_phase_automaton(p, fixtures::perm_aut());
  CHECK(c.state_count() == 15);
  CHECK(c.decode(c.encode({3, 1})) == std::vector<std::size_t>{3, 1});
  CHECK(c.decode(c.step(c.encode({4, 0}), 0)) == std::vector<std::size_t>{2, 0});
  CHECK(c.decode(c.step(c.encode({4, 2}), 1)) == std::vector<std::size_t>{4, 1});
  CHECK(c.decode(c.step(c.encode({1, 1}), 0)) == std::vector<std::size_t>{2, 1});
  CHECK(phase_of(0, {2, 3}) == 0);
  CHECK(phase_of(4, {2, 3}) == 4);
  CHECK(phase_of(5, {2, 3}) == 2);
  CHECK(phase_of(100, {2, 3}) == 2 + (100 - 2) % 3);

  const PhaseAutomaton trivial = build_phase_automaton(profile({{0, 1}, {0, 1}}), fixtures::perm_aut());
  CHECK(trivial.state_count() == 1);
  CHECK(trivial.finals()[0]);
  const Dfa empty(fixtures::letters(2), 3, 0, {}, fixtures::perm_aut().delta());
  CHECK_FALSE(build_phase_automaton(profile({{0, 1}, {0, 1}}), empty).finals()[0]);

  CHECK_THROWS_AS(build_phase_automaton(p, fixtures::perm_aut(), 10), Error);
}

TEST_CASE("finals from the grid agree with the pair search") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const Dfa d = fixtures::random_permutation_dfa(rng, 1 + rng() % 5, k);
    const LabelGrid g = sigma_grid(d, default_group_box(d));
    const PhaseProfile p = phases_from_grid(g);
    CHECK(grid_finals(p, g) == build_phase_automaton(p, d).finals());
  }
}

TEST_CASE("group bound") {
  CHECK(group_bound(fixtures::perm_aut()) == 54);
  CHECK(group_bound(fixtures::cubic_family(4)) == 128);
  CHECK(group_bound(Dfa(fixtures::letters(3), 1, 0, {0}, {{0}, {0}, {0}})) == 1);
  CHECK_THROWS_AS(group_bound(fixtures::grid_aut()), Error);
}

TEST_CASE("closure of the permutation automaton") {
  const Dfa perm = fixtures::perm_aut();
  ClosureOptions raw;
  raw.minimize = false;
  const ClosureResult r = build_closure(perm, raw);
  CHECK(r.dfa.state_count() == 15);
  CHECK(r.report.raw_size == 15);
  CHECK(r.report.group_bound == 54u);
  CHECK(r.report.bound_respected);
  CHECK_FALSE(r.report.minimized_size.has_value());
  CHECK(oracle::verify_closure(r.dfa, perm, 12).passed);

  const ClosureResult m = build_closure(perm);
  CHECK(m.report.minimized_size == m.dfa.state_count());
  CHECK(equivalent(m.dfa, r.dfa).equivalent);
}

TEST_CASE("closure of the cubic family") {
  for (std::size_t n : {2, 3, 4}) {
    ClosureOptions raw;
    raw.minimize = false;
    const ClosureResult r = build_closure(fixtures::cubic_family(n), raw);
    CHECK(r.report.raw_size <= 2 * n * n * n);
  }
}

TEST_CASE("closure of the empty language") {
  const Dfa empty(fixtures::letters(2), 3, 0, {}, fixtures::perm_aut().delta());
  const ClosureResult r = build_closure(empty);
  CHECK(r.dfa.finals().empty());
}

TEST_CASE("closure of non-group input needs a budget and may not stabilize") {
  CHECK_THROWS_AS(build_closure(fixtures::grid_aut()), Error);
  ClosureOptions opt;
  opt.budget = 12;
  CHECK_THROWS_AS(build_closure(fixtures::grid_aut(), opt), NotStabilizedError);

  // a1* a2*, closure a1^x a2^y for all x, y: regular, and stabilizes quickly.
  const Dfa star({"a1", "a2"}, 3, 0, {0, 1}, {{0, 2, 2}, {1, 1, 2}});
  opt.budget = 10;
  const ClosureResult r = build_closure(star, opt);
  CHECK(r.dfa.state_count() == 1);
  CHECK_FALSE(r.report.group_bound.has_value());
}

TEST_CASE("closure is commutative and respects the bound") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 60; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const Dfa d = fixtures::random_permutation_dfa(rng, 1 + rng() % 5, k);
    ClosureOptions raw;
    raw.minimize = false;
    const ClosureResult r = build_closure(d, raw);
    CHECK(transitions_commute(r.dfa));
    CHECK(r.report.raw_size <= group_bound(d));
    CHECK(oracle::verify_closure(r.dfa, d, k == 3 ? 7 : 10).passed);
  }
}

TEST_CASE("transitions commute") {
  CHECK(transitions_commute(fixtures::counter_product(2, 3)));
  CHECK_FALSE(transitions_commute(fixtures::perm_aut()));
  CHECK_FALSE(transitions_commute(fixtures::grid_aut()));
}

TEST_CASE("jumping automaton conversion") {
  const Dfa perm = fixtures::perm_aut();
  CHECK(equivalent(jfa_to_dfa(perm), build_closure(perm).dfa).equivalent);
  const Dfa counters = fixtures::counter_product(2, 3);
  CHECK(equivalent(jfa_to_dfa(counters), counters).equivalent);
  CHECK_THROWS_AS(jfa_to_dfa(fixtures::grid_aut()), Error);
}
