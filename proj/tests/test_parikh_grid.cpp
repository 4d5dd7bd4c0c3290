#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "permclosure/parikh_grid.hpp"
#include "support/random_automata.hpp"

using namespace permclosure;

namespace {

ParikhVector pt(std::initializer_list<std::size_t> c) { return ParikhVector(std::vector<std::size_t>(c)); }

StateSet set_of(std::initializer_list<State> states) {
  StateSet s;
  for (State q : states) s.insert(q);
  return s;
}

// Every distinct arrangement of the letters of p, run through d.
StateSet brute_sigma(const Dfa& d, const ParikhVector& p) {
  Word w;
  for (Letter a = 0; a < p.size(); ++a) w.insert(w.end(), p[a], a);
  StateSet out;
  do {
    out.insert(run(d, w));
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace

TEST_CASE("parikh vector") {
  CHECK(parikh("a1 a2 a1", fixtures::letters(2)) == pt({2, 1}));
  CHECK(parikh("", fixtures::letters(3)) == pt({0, 0, 0}));
  CHECK(parikh(Word{2, 0, 2}, 3) == pt({1, 0, 2}));
  CHECK((pt({1, 2}) + pt({3, 0})) == pt({4, 2}));
  CHECK(pt({4, 2}).total() == 6);
}

TEST_CASE("box") {
  const Box box({3, 4});
  CHECK(box.volume() == 12);
  CHECK(box.linear(pt({1, 2})) == 6);
  CHECK(box.point(6) == pt({1, 2}));
  CHECK(box.contains(pt({2, 3})));
  CHECK_FALSE(box.contains(pt({3, 0})));
  // Linear order is lexicographic order.
  for (std::size_t i = 1; i < box.volume(); ++i) CHECK(box.point(i - 1) < box.point(i));
}

TEST_CASE("state labels of the (a1 a2)* automaton") {
  const LabelGrid g = sigma_grid(fixtures::grid_aut(), Box::uniform(2, 5));
  CHECK(sigma(g, pt({0, 0})) == set_of({0}));
  CHECK(sigma(g, pt({1, 1})) == set_of({0, 2}));
  CHECK(sigma(g, pt({2, 1})) == set_of({1, 2}));
  CHECK(sigma(g, pt({2, 2})) == set_of({0, 2}));
  CHECK(sigma(g, pt({3, 1})) == set_of({2}));
  CHECK_FALSE(parikh_image_membership(g, pt({1, 0})));
  CHECK(parikh_image_membership(g, pt({3, 3})));
  CHECK_THROWS_AS(sigma(g, pt({5, 0})), Error);
}

TEST_CASE("state labels of the permutation automaton") {
  const LabelGrid g = sigma_grid(fixtures::perm_aut(), Box::uniform(2, 5));
  CHECK(sigma(g, pt({2, 1})) == set_of({0, 1, 2}));
  CHECK(sigma(g, pt({0, 1})) == set_of({1}));
  CHECK(sigma(g, pt({1, 1})) == set_of({0, 2}));
  CHECK(parikh_image_membership(g, pt({1, 1})));
  CHECK(parikh_image_membership(g, pt({0, 0})));
}

TEST_CASE("labels agree with brute-force enumeration") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const Dfa d = i % 2 ? fixtures::random_dfa(rng, 1 + rng() % 6, k) : fixtures::random_permutation_dfa(rng, 1 + rng() % 6, k);
    const std::size_t extent = k == 3 ? 3 : 5;
    const LabelGrid g = sigma_grid(d, Box::uniform(k, extent));
    for (std::size_t idx = 0; idx < g.box().volume(); ++idx) {
      const ParikhVector p = g.box().point(idx);
      if (p.total() > 8) continue;
      CHECK(g.at(idx) == brute_sigma(d, p));
    }
  }
}

TEST_CASE("labels satisfy the predecessor recurrence") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 40; ++i) {
    const Dfa d = fixtures::random_dfa(rng, 1 + rng() % 10, 2);
    const LabelGrid g = sigma_grid(d, Box::uniform(2, 9));
    CHECK(g.at(0) == StateSet::singleton(d.start()));
    for (std::size_t idx = 1; idx < g.box().volume(); ++idx) {
      const ParikhVector p = g.box().point(idx);
      StateSet expect;
      for (Letter b = 0; b < 2; ++b) {
        if (p[b] == 0) continue;
        ParikhVector q = p;
        --q[b];
        expect = expect | d.image(sigma(g, q), b);
      }
      CHECK(g.at(idx) == expect);
    }
  }
}

TEST_CASE("sigma grid guards") {
  CHECK_THROWS_AS(sigma_grid(fixtures::perm_aut(), Box::uniform(3, 2)), Error);
  try {
    sigma_grid(fixtures::perm_aut(), Box::uniform(2, 100), 50);
    FAIL("expected BoxTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBoxTooLarge);
  }
  std::vector<State> row(65);
  for (State s = 0; s < 65; ++s) row[s] = s;
  CHECK_THROWS_AS(sigma_grid(Dfa({"a"}, 65, 0, {}, {row}), Box::uniform(1, 2)), Error);
}

TEST_CASE("line phase detection") {
  const StateSet a = set_of({0}), b = set_of({1}), c = set_of({2});
  CHECK(detect_line_phase(std::vector<StateSet>{a, b, c, b, c, b, c}) == UnaryProfile{1, 2});
  CHECK(detect_line_phase(std::vector<StateSet>{a, a}) == UnaryProfile{0, 1});
  CHECK_FALSE(detect_line_phase(std::vector<StateSet>{a, b, c}).has_value());
  CHECK_FALSE(detect_line_phase(std::vector<StateSet>{a, b, c, a, c}).has_value());
}

TEST_CASE("axis phases of the permutation automaton") {
  const AxisPhases ph = detect_axis_phases(sigma_grid(fixtures::perm_aut(), Box::uniform(2, 9)));
  REQUIRE(ph.stabilized);
  CHECK(ph.axes[0].index == 2);
  CHECK(ph.axes[0].period == 3);
  CHECK(ph.axes[1].index == 1);
  CHECK(ph.axes[1].period == 2);
}

TEST_CASE("axis phases of the (a1 a2)* automaton never stabilize") {
  for (std::size_t e : {4, 8, 12}) {
    const AxisPhases ph = detect_axis_phases(sigma_grid(fixtures::grid_aut(), Box::uniform(2, e)));
    CHECK_FALSE(ph.stabilized);
    CHECK_FALSE(ph.unstabilized_lines(0).empty());
  }
}

TEST_CASE("single-letter phases match the unary profile") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const Dfa d = fixtures::random_dfa(rng, 1 + rng() % 12, 1);
    const AxisPhases ph = detect_axis_phases(sigma_grid(d, Box::uniform(1, 3 * d.state_count() + 2)));
    REQUIRE(ph.stabilized);
    const UnaryProfile up = unary_profile(d.letter_map(0), d.start());
    CHECK(ph.axes[0].index == up.index);
    CHECK(ph.axes[0].period == up.period);
  }
}
