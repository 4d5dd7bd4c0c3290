#include "permclosure/dfa.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace permclosure {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDfa: return "InvalidDfa";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kUnknownSymbol: return "UnknownSymbol";
    case ErrorKind::kAlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::kNotPermutation: return "NotPermutation";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
    case ErrorKind::kOverflow: return "Overflow";
    case ErrorKind::kBoxTooLarge: return "BoxTooLarge";
    case ErrorKind::kOutOfBox: return "OutOfBox";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kChainOpen: return "ChainOpen";
    case ErrorKind::kRegionMismatch: return "RegionMismatch";
    case ErrorKind::kNotStabilized: return "NotStabilized";
    case ErrorKind::kStateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorKind::kLengthExceeded: return "LengthExceeded";
  }
  return "Unknown";
}

std::string format_state_list(StateSet set) {
  std::string out;
  set.for_each([&](State s) {
    if (!out.empty()) out += ',';
    out += 's';
    out += std::to_string(s);
  });
  return out;
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::kInvalidDfa, what); }

}  // namespace

Dfa::Dfa(std::vector<std::string> alphabet, std::size_t state_count, State start,
         std::vector<State> finals, std::vector<std::vector<State>> delta)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      start_(start),
      finals_(std::move(finals)),
      delta_(std::move(delta)) {
  if (state_count_ == 0) invalid("states: must be positive");
  if (start_ >= state_count_) invalid("start: state " + std::to_string(start_) + " out of range");
  {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      if (alphabet_[i].empty()) invalid("alphabet[" + std::to_string(i) + "]: empty symbol");
      if (!seen.insert(alphabet_[i]).second) {
        invalid("alphabet[" + std::to_string(i) + "]: duplicate symbol '" + alphabet_[i] + "'");
      }
    }
  }
  final_flags_.assign(state_count_, false);
  for (std::size_t i = 0; i < finals_.size(); ++i) {
    State f = finals_[i];
    if (f >= state_count_) invalid("finals[" + std::to_string(i) + "]: state " + std::to_string(f) + " out of range");
    if (final_flags_[f]) invalid("finals[" + std::to_string(i) + "]: duplicate state " + std::to_string(f));
    final_flags_[f] = true;
  }
  std::sort(finals_.begin(), finals_.end());
  if (delta_.size() != alphabet_.size()) {
    invalid("delta: expected " + std::to_string(alphabet_.size()) + " rows, got " + std::to_string(delta_.size()));
  }
  for (std::size_t a = 0; a < delta_.size(); ++a) {
    if (delta_[a].size() != state_count_) {
      invalid("delta[" + std::to_string(a) + "]: expected " + std::to_string(state_count_) + " entries, got " +
              std::to_string(delta_[a].size()));
    }
    for (std::size_t s = 0; s < state_count_; ++s) {
      if (delta_[a][s] >= state_count_) {
        invalid("delta[" + std::to_string(a) + "][" + std::to_string(s) + "]: target " + std::to_string(delta_[a][s]) +
                " out of range");
      }
    }
  }
}

std::optional<Letter> Dfa::find_letter(std::string_view name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<Letter>(it - alphabet_.begin());
}

StateSet Dfa::final_set() const {
  StateSet out;
  for (State f : finals_) out.insert(f);
  return out;
}

Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string symbol;
  while (in >> symbol) {
    auto it = std::find(alphabet.begin(), alphabet.end(), symbol);
    if (it == alphabet.end()) throw Error(ErrorKind::kUnknownSymbol, "unknown symbol '" + symbol + "'");
    out.push_back(static_cast<Letter>(it - alphabet.begin()));
  }
  return out;
}

std::string format_word(const std::vector<std::string>& alphabet, std::span<const Letter> word) {
  std::string out;
  for (Letter a : word) {
    if (!out.empty()) out += ' ';
    out += alphabet.at(a);
  }
  return out;
}

State run(const Dfa& d, std::span<const Letter> word) {
  State s = d.start();
  for (Letter a : word) {
    if (a >= d.letter_count()) throw Error(ErrorKind::kUnknownSymbol, "letter index " + std::to_string(a) + " outside alphabet");
    s = d.next(s, a);
  }
  return s;
}

State run(const Dfa& d, std::string_view word) { return run(d, parse_word(d.alphabet(), word)); }

bool accepts(const Dfa& d, std::span<const Letter> word) { return d.is_final(run(d, word)); }

bool is_permutation_letter(const Dfa& d, Letter a) {
  std::vector<bool> hit(d.state_count(), false);
  for (State t : d.letter_map(a)) {
    if (hit[t]) return false;
    hit[t] = true;
  }
  return true;
}

bool is_permutation_automaton(const Dfa& d) {
  for (Letter a = 0; a < d.letter_count(); ++a) {
    if (!is_permutation_letter(d, a)) return false;
  }
  return true;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, "integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

namespace {

void require_permutation(const Dfa& d, Letter a) {
  if (a >= d.letter_count()) throw Error(ErrorKind::kUnknownSymbol, "letter index " + std::to_string(a) + " outside alphabet");
  if (!is_permutation_letter(d, a)) {
    throw Error(ErrorKind::kNotPermutation, "letter " + d.alphabet()[a] + " is not a permutation");
  }
}

std::size_t cycle_length_of(const Dfa& d, Letter a, State s) {
  std::size_t len = 1;
  for (State t = d.next(s, a); t != s; t = d.next(t, a)) ++len;
  return len;
}

}  // namespace

CycleStructure cycle_structure(const Dfa& d, Letter a) {
  require_permutation(d, a);
  CycleStructure out;
  out.letter = a;
  std::vector<bool> seen(d.state_count(), false);
  for (State s = 0; s < d.state_count(); ++s) {
    if (seen[s]) continue;
    std::vector<State> cycle;
    for (State t = s; !seen[t]; t = d.next(t, a)) {
      seen[t] = true;
      cycle.push_back(t);
    }
    out.order = checked_lcm(out.order, cycle.size());
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

std::uint64_t subset_cycle_lcm(const Dfa& d, Letter a, StateSet subset) {
  require_permutation(d, a);
  std::uint64_t out = 1;
  subset.for_each([&](State s) { out = checked_lcm(out, cycle_length_of(d, a, s)); });
  return out;
}

bool subset_power_identity(const Dfa& d, Letter a, StateSet subset, std::uint64_t m) {
  require_permutation(d, a);
  bool fixed = true;
  subset.for_each([&](State s) {
    // a^m(s) depends only on m modulo the cycle length of s.
    std::uint64_t steps = m % cycle_length_of(d, a, s);
    State t = s;
    for (std::uint64_t i = 0; i < steps; ++i) t = d.next(t, a);
    fixed = fixed && t == s;
  });
  return fixed;
}

UnaryProfile unary_profile(std::span<const State> next, State start) {
  if (start >= next.size()) throw Error(ErrorKind::kPreconditionViolated, "start outside successor table");
  std::vector<std::size_t> first_visit(next.size(), SIZE_MAX);
  State s = start;
  for (std::size_t step = 0;; ++step) {
    if (first_visit[s] != SIZE_MAX) return UnaryProfile{first_visit[s], step - first_visit[s]};
    first_visit[s] = step;
    s = next[s];
    if (s >= next.size()) throw Error(ErrorKind::kPreconditionViolated, "successor table not total");
  }
}

bool unary_period_divides_check(const UnaryProfile& profile, std::span<const State> next, State start,
                                State s, std::uint64_t k) {
  if (k == 0) throw Error(ErrorKind::kPreconditionViolated, "k must be positive");
  State t = s;
  for (std::uint64_t i = 0; i < k; ++i) t = next[t];
  if (t != s) throw Error(ErrorKind::kPreconditionViolated, "next^k(s) != s");
  bool reachable = false;
  State u = start;
  for (std::size_t i = 0; i < profile.index + profile.period; ++i, u = next[u]) reachable = reachable || u == s;
  if (!reachable) throw Error(ErrorKind::kPreconditionViolated, "s is not reachable from start");
  return k % profile.period == 0;
}

namespace {

// Hopcroft partition refinement on a reachable, renumbered automaton.
std::vector<std::size_t> hopcroft_classes(const std::vector<std::vector<State>>& delta,
                                          const std::vector<bool>& is_final) {
  const std::size_t n = is_final.size();
  const std::size_t k = delta.size();

  // Inverse transitions in CSR form per letter.
  std::vector<std::vector<std::size_t>> inv_start(k, std::vector<std::size_t>(n + 1, 0));
  std::vector<std::vector<State>> inv(k, std::vector<State>(n));
  for (std::size_t a = 0; a < k; ++a) {
    for (State s = 0; s < n; ++s) ++inv_start[a][delta[a][s] + 1];
    for (State s = 0; s < n; ++s) inv_start[a][s + 1] += inv_start[a][s];
    std::vector<std::size_t> fill(inv_start[a].begin(), inv_start[a].end() - 1);
    for (State s = 0; s < n; ++s) inv[a][fill[delta[a][s]]++] = s;
  }

  std::vector<State> elems(n);
  std::vector<std::size_t> pos(n), block_of(n);
  std::vector<std::size_t> first, end, marked;

  std::size_t cursor = 0;
  for (bool want : {true, false}) {
    std::size_t begin = cursor;
    for (State s = 0; s < n; ++s) {
      if (is_final[s] == want) {
        elems[cursor] = s;
        pos[s] = cursor++;
      }
    }
    if (cursor > begin) {
      for (std::size_t i = begin; i < cursor; ++i) block_of[elems[i]] = first.size();
      first.push_back(begin);
      end.push_back(cursor);
      marked.push_back(0);
    }
  }

  std::vector<std::vector<bool>> in_work(k);
  std::vector<std::pair<std::size_t, Letter>> work;
  auto push = [&](std::size_t b, Letter a) {
    if (in_work[a].size() <= b) in_work[a].resize(b + 1, false);
    if (!in_work[a][b]) {
      in_work[a][b] = true;
      work.emplace_back(b, a);
    }
  };
  auto queued = [&](std::size_t b, Letter a) { return b < in_work[a].size() && in_work[a][b]; };
  for (std::size_t b = 0; b < first.size(); ++b) {
    for (Letter a = 0; a < k; ++a) push(b, a);
  }

  std::vector<State> splitter;
  std::vector<std::size_t> touched;
  while (!work.empty()) {
    auto [b, a] = work.back();
    work.pop_back();
    in_work[a][b] = false;

    splitter.assign(elems.begin() + static_cast<std::ptrdiff_t>(first[b]), elems.begin() + static_cast<std::ptrdiff_t>(end[b]));
    touched.clear();
    for (State t : splitter) {
      for (std::size_t i = inv_start[a][t]; i < inv_start[a][t + 1]; ++i) {
        State p = inv[a][i];
        std::size_t blk = block_of[p];
        std::size_t boundary = first[blk] + marked[blk];
        if (pos[p] < boundary) continue;
        State other = elems[boundary];
        std::swap(elems[boundary], elems[pos[p]]);
        pos[other] = pos[p];
        pos[p] = boundary;
        if (marked[blk]++ == 0) touched.push_back(blk);
      }
    }
    for (std::size_t blk : touched) {
      std::size_t size = end[blk] - first[blk];
      std::size_t m = marked[blk];
      marked[blk] = 0;
      if (m == size) continue;
      std::size_t nb = first.size();
      first.push_back(first[blk]);
      end.push_back(first[blk] + m);
      marked.push_back(0);
      first[blk] += m;
      for (std::size_t i = first[nb]; i < end[nb]; ++i) block_of[elems[i]] = nb;
      for (Letter c = 0; c < k; ++c) {
        if (queued(blk, c)) {
          push(nb, c);
        } else if (m <= size - m) {
          push(nb, c);
        } else {
          push(blk, c);
        }
      }
    }
  }
  return block_of;
}

}  // namespace

Dfa minimize(const Dfa& d) {
  const std::size_t k = d.letter_count();

  // Reachable states, BFS order.
  std::vector<std::size_t> reach_id(d.state_count(), SIZE_MAX);
  std::vector<State> order{d.start()};
  reach_id[d.start()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      State t = d.next(order[i], a);
      if (reach_id[t] == SIZE_MAX) {
        reach_id[t] = order.size();
        order.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<std::vector<State>> delta(k, std::vector<State>(n));
  std::vector<bool> is_final(n);
  for (std::size_t i = 0; i < n; ++i) {
    is_final[i] = d.is_final(order[i]);
    for (Letter a = 0; a < k; ++a) delta[a][i] = reach_id[d.next(order[i], a)];
  }

  std::vector<std::size_t> cls = hopcroft_classes(delta, is_final);

  // Renumber classes by BFS from the start class.
  std::vector<std::size_t> class_id(n, SIZE_MAX);
  std::vector<std::size_t> representative;
  class_id[cls[0]] = 0;
  representative.push_back(0);
  for (std::size_t i = 0; i < representative.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      std::size_t c = cls[delta[a][representative[i]]];
      if (class_id[c] == SIZE_MAX) {
        class_id[c] = representative.size();
        representative.push_back(delta[a][representative[i]]);
      }
    }
  }
  const std::size_t m = representative.size();
  std::vector<std::vector<State>> out_delta(k, std::vector<State>(m));
  std::vector<State> finals;
  for (std::size_t i = 0; i < m; ++i) {
    if (is_final[representative[i]]) finals.push_back(i);
    for (Letter a = 0; a < k; ++a) out_delta[a][i] = class_id[cls[delta[a][representative[i]]]];
  }
  return Dfa(d.alphabet(), m, 0, std::move(finals), std::move(out_delta));
}

EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
  const std::size_t k = a.letter_count();
  if (b.letter_count() != k) throw Error(ErrorKind::kAlphabetMismatch, "alphabets differ in size");
  std::vector<Letter> to_b(k);
  for (Letter x = 0; x < k; ++x) {
    auto y = b.find_letter(a.alphabet()[x]);
    if (!y) throw Error(ErrorKind::kAlphabetMismatch, "symbol '" + a.alphabet()[x] + "' missing from second automaton");
    to_b[x] = *y;
  }

  struct Node {
    State sa;
    State sb;
    std::size_t parent;
    Letter via;
  };
  const std::uint64_t nb = b.state_count();
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<Node> nodes{{a.start(), b.start(), SIZE_MAX, 0}};
  seen.emplace(std::uint64_t{a.start()} * nb + b.start(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node cur = nodes[i];
    if (a.is_final(cur.sa) != b.is_final(cur.sb)) {
      Word w;
      for (std::size_t j = i; nodes[j].parent != SIZE_MAX; j = nodes[j].parent) w.push_back(nodes[j].via);
      std::reverse(w.begin(), w.end());
      return EquivalenceResult{false, std::move(w)};
    }
    for (Letter x = 0; x < k; ++x) {
      State ta = a.next(cur.sa, x);
      State tb = b.next(cur.sb, to_b[x]);
      if (seen.emplace(std::uint64_t{ta} * nb + tb, nodes.size()).second) nodes.push_back({ta, tb, i, x});
    }
  }
  return EquivalenceResult{true, std::nullopt};
}

}  // namespace permclosure
