#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "permclosure/closure.hpp"
#include "permclosure/oracle.hpp"
#include "support/random_automata.hpp"

using namespace permclosure;

namespace {

ParikhVector pt(std::initializer_list<std::size_t> c) { return ParikhVector(std::vector<std::size_t>(c)); }

// Some arrangement of w is accepted, by trying all of them.
bool some_permutation_accepted(const Dfa& d, Word w) {
  std::sort(w.begin(), w.end());
  do {
    if (accepts(d, w)) return true;
  } while (std::next_permutation(w.begin(), w.end()));
  return false;
}

}  // namespace

TEST_CASE("parikh set") {
  const oracle::ParikhSet perm = oracle::parikh_set(fixtures::perm_aut(), 2);
  CHECK(perm.contains(pt({0, 0})));
  CHECK(perm.contains(pt({1, 1})));
  CHECK_FALSE(perm.contains(pt({1, 0})));

  const oracle::ParikhSet grid = oracle::parikh_set(fixtures::grid_aut(), 4);
  CHECK(grid.members == std::set<ParikhVector>{pt({0, 0}), pt({1, 1}), pt({2, 2})});

  const Dfa empty(fixtures::letters(2), 3, 0, {}, fixtures::perm_aut().delta());
  CHECK(oracle::parikh_set(empty, 6).members.empty());

  CHECK_THROWS_AS(oracle::parikh_set(fixtures::perm_aut(), 100, 1000), Error);
}

TEST_CASE("parikh set grows with the length bound") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 30; ++i) {
    const Dfa d = fixtures::random_dfa(rng, 1 + rng() % 6, 1 + rng() % 3);
    const oracle::ParikhSet small = oracle::parikh_set(d, 4);
    const oracle::ParikhSet large = oracle::parikh_set(d, 6);
    for (const ParikhVector& p : small.members) CHECK(large.contains(p));
    for (const ParikhVector& p : large.members) CHECK((p.total() > 4 || small.contains(p)));
  }
}

TEST_CASE("closure membership oracle") {
  const Dfa grid = fixtures::grid_aut();
  const oracle::ParikhSet ps = oracle::parikh_set(grid, 4);
  CHECK(oracle::closure_membership_oracle(ps, parse_word(grid.alphabet(), "a2 a1")));
  CHECK(oracle::closure_membership_oracle(ps, Word{}) == grid.is_final(grid.start()));
  const Dfa perm = fixtures::perm_aut();
  CHECK_FALSE(oracle::closure_membership_oracle(oracle::parikh_set(perm, 4), Word{0}));
  CHECK_THROWS_AS(oracle::closure_membership_oracle(ps, Word(5, 0)), Error);
}

TEST_CASE("jumping acceptance") {
  const Dfa perm = fixtures::perm_aut();
  CHECK(oracle::jumping_accepts(perm, parse_word(perm.alphabet(), "a2 a1")));
  CHECK(oracle::jumping_accepts(perm, Word{}) == perm.is_final(perm.start()));
  CHECK_FALSE(oracle::jumping_accepts(perm, Word{0}));

  std::mt19937_64 rng(52);
  for (int i = 0; i < 30; ++i) {
    const std::size_t k = 1 + rng() % 3;
    const Dfa d = fixtures::random_dfa(rng, 1 + rng() % 6, k);
    const oracle::ParikhSet ps = oracle::parikh_set(d, 6);
    oracle::for_each_word(k, 6, [&](const Word& w) {
      const bool jfa = oracle::jumping_accepts(d, w);
      CHECK(jfa == oracle::closure_membership_oracle(ps, w));
      if (w.size() <= 5) CHECK(jfa == some_permutation_accepted(d, w));
      return true;
    });
  }
}

TEST_CASE("word enumeration is shortlex") {
  std::vector<Word> words;
  oracle::for_each_word(2, 2, [&](const Word& w) {
    words.push_back(w);
    return true;
  });
  CHECK(words == std::vector<Word>{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("shuffles are reproducible permutations") {
  std::mt19937_64 a(oracle::kDefaultSeed), b(oracle::kDefaultSeed);
  Word w1{0, 0, 1, 1, 2, 2, 2}, w2 = w1;
  oracle::shuffle_word(w1, a);
  oracle::shuffle_word(w2, b);
  CHECK(w1 == w2);
  std::sort(w1.begin(), w1.end());
  CHECK(w1 == Word{0, 0, 1, 1, 2, 2, 2});
  CHECK(oracle::canonical_word(pt({2, 0, 1})) == Word{0, 0, 2});
}

TEST_CASE("verify closure") {
  const Dfa perm = fixtures::perm_aut();
  const Dfa closed = build_closure(perm).dfa;
  const oracle::VerifyResult ok = oracle::verify_closure(closed, perm, 12);
  CHECK(ok.passed);
  CHECK(ok.representatives_only);

  // A commutative language is its own closure.
  CHECK(oracle::verify_closure(closed, closed, 10).passed);
  const Dfa counters = fixtures::counter_product(3, 2);
  CHECK(oracle::verify_closure(counters, counters, 10).passed);

  // The source itself is not commutative, so every word is checked.
  const oracle::VerifyResult bad = oracle::verify_closure(perm, perm, 6);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.representatives_only);
  CHECK(bad.counterexample->size() == 2);
}

TEST_CASE("corrupted finals are caught") {
  const Dfa perm = fixtures::perm_aut();
  ClosureOptions raw;
  raw.minimize = false;
  const Dfa closed = build_closure(perm, raw).dfa;
  for (State flip = 0; flip < closed.state_count(); ++flip) {
    std::vector<State> finals;
    for (State s = 0; s < closed.state_count(); ++s) {
      if (closed.is_final(s) != (s == flip)) finals.push_back(s);
    }
    const Dfa mutant(closed.alphabet(), closed.state_count(), closed.start(), finals, closed.delta());
    const oracle::VerifyResult r = oracle::verify_closure(mutant, perm, 12);
    CHECK_FALSE(r.passed);
    REQUIRE(r.counterexample.has_value());
    CHECK(accepts(mutant, *r.counterexample) != oracle::jumping_accepts(perm, *r.counterexample));
  }
}

TEST_CASE("enumeration budget") {
  const Dfa grid = fixtures::grid_aut();
  CHECK_THROWS_AS(oracle::verify_closure(grid, grid, 30, oracle::kDefaultSeed, 1000), Error);
}
