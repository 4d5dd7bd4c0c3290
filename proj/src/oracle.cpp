#include "permclosure/oracle.hpp"

#include <map>

#include "permclosure/closure.hpp"

namespace permclosure::oracle {

namespace {

// Mixed-radix enumeration of all vectors in [0, max_len]^k with sum <= max_len,
// ordered by total and then lexicographically.
std::vector<ParikhVector> vectors_up_to(std::size_t k, std::size_t max_len) {
  std::vector<std::vector<ParikhVector>> by_total(max_len + 1);
  ParikhVector p(k);
  for (;;) {
    const std::size_t total = p.total();
    if (total <= max_len) by_total[total].push_back(p);
    std::size_t j = k;
    while (j > 0 && p[j - 1] == max_len) p[--j] = 0;
    if (j == 0) break;
    ++p[j - 1];
  }
  std::vector<ParikhVector> out;
  for (auto& layer : by_total) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::vector<Letter> letter_mapping(const Dfa& from, const Dfa& to) {
  if (from.letter_count() != to.letter_count()) throw Error(ErrorKind::kAlphabetMismatch, "alphabets differ in size");
  std::vector<Letter> out(from.letter_count());
  for (Letter a = 0; a < from.letter_count(); ++a) {
    auto b = to.find_letter(from.alphabet()[a]);
    if (!b) throw Error(ErrorKind::kAlphabetMismatch, "symbol '" + from.alphabet()[a] + "' missing");
    out[a] = *b;
  }
  return out;
}

}  // namespace

ParikhSet parikh_set(const Dfa& d, std::size_t max_len, std::uint64_t budget) {
  const std::size_t k = d.letter_count();
  const std::size_t n = d.state_count();
  std::uint64_t cells = n;
  for (std::size_t j = 0; j < k; ++j) {
    cells = checked_mul(cells, max_len + 1);
    if (cells > budget) break;
  }
  if (cells > budget) {
    throw Error(ErrorKind::kBudgetExceeded, "Parikh enumeration needs more than " + std::to_string(budget) + " cells");
  }

  std::vector<std::size_t> stride(k, 1);
  for (std::size_t j = k; j-- > 1;) stride[j - 1] = stride[j] * (max_len + 1);

  // memo[code * n + q]: 0 unknown, 1 cannot finish, 2 can consume the remaining
  // letters from q and stop in a final state.
  std::vector<std::uint8_t> memo(cells, 0);
  ParikhVector remaining(k);
  auto can_finish = [&](auto&& self, std::size_t code, State q) -> bool {
    std::uint8_t& slot = memo[code * n + q];
    if (slot != 0) return slot == 2;
    bool ok = code == 0 && d.is_final(q);
    for (Letter b = 0; !ok && b < k; ++b) {
      if (remaining[b] == 0) continue;
      --remaining[b];
      ok = self(self, code - stride[b], d.next(q, b));
      ++remaining[b];
    }
    memo[code * n + q] = ok ? 2 : 1;
    return ok;
  };

  ParikhSet out;
  out.alphabet_size = k;
  out.max_len = max_len;
  for (const ParikhVector& p : vectors_up_to(k, max_len)) {
    remaining = p;
    std::size_t code = 0;
    for (std::size_t j = 0; j < k; ++j) code += p[j] * stride[j];
    if (can_finish(can_finish, code, d.start())) out.members.insert(p);
  }
  return out;
}

bool closure_membership_oracle(const ParikhSet& ps, std::span<const Letter> w) {
  if (w.size() > ps.max_len) {
    throw Error(ErrorKind::kLengthExceeded,
                "word of length " + std::to_string(w.size()) + " exceeds oracle bound " + std::to_string(ps.max_len));
  }
  return ps.contains(parikh(w, ps.alphabet_size));
}

bool jumping_accepts(const Dfa& d, std::span<const Letter> w) {
  // Frontier: remaining multiset -> states reachable after consuming the rest.
  std::map<std::vector<std::size_t>, std::set<State>> frontier;
  frontier[parikh(w, d.letter_count()).coords].insert(d.start());
  for (std::size_t step = 0; step < w.size(); ++step) {
    std::map<std::vector<std::size_t>, std::set<State>> next;
    for (const auto& [remaining, states] : frontier) {
      for (Letter b = 0; b < d.letter_count(); ++b) {
        if (remaining[b] == 0) continue;
        std::vector<std::size_t> rest = remaining;
        --rest[b];
        auto& target = next[rest];
        for (State q : states) target.insert(d.next(q, b));
      }
    }
    frontier = std::move(next);
  }
  for (const auto& [remaining, states] : frontier) {
    for (State q : states) {
      if (d.is_final(q)) return true;
    }
  }
  return false;
}

Word canonical_word(const ParikhVector& p) {
  Word w;
  for (Letter a = 0; a < p.size(); ++a) w.insert(w.end(), p[a], a);
  return w;
}

void shuffle_word(Word& w, std::mt19937_64& rng) {
  for (std::size_t i = w.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(w[i - 1], w[j]);
  }
}

VerifyResult verify_closure(const Dfa& candidate, const Dfa& original, std::size_t max_len, std::uint64_t seed,
                            std::uint64_t budget) {
  const std::vector<Letter> to_candidate = letter_mapping(original, candidate);
  const ParikhSet ps = parikh_set(original, max_len, budget);
  const std::size_t k = original.letter_count();

  VerifyResult result;
  auto check = [&](const Word& w) {
    ++result.words_checked;
    State q = candidate.start();
    for (Letter a : w) q = candidate.next(q, to_candidate[a]);
    if (candidate.is_final(q) != closure_membership_oracle(ps, w)) {
      result.passed = false;
      result.counterexample = w;
      return false;
    }
    return true;
  };

  if (transitions_commute(candidate)) {
    // Every rearrangement of a word reaches the same candidate state, so the
    // extra shuffles are spot checks only.
    result.representatives_only = true;
    std::mt19937_64 rng(seed);
    for (const ParikhVector& p : vectors_up_to(k, max_len)) {
      Word w = canonical_word(p);
      if (!check(w)) return result;
      for (int i = 0; i < 2; ++i) {
        shuffle_word(w, rng);
        if (!check(w)) return result;
      }
    }
    return result;
  }

  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    total += layer;
    if (total > budget) {
      throw Error(ErrorKind::kBudgetExceeded, "word enumeration exceeds " + std::to_string(budget) + " words");
    }
    if (len < max_len) layer = checked_mul(layer, k);
  }
  for_each_word(k, max_len, check);
  return result;
}

}  // namespace permclosure::oracle
