// permclosure: commutative closure of group languages from the command line.
//
// Exit codes: 0 ok, 1 parse/usage, 2 not a permutation automaton,
// 3 not stabilized, 4 inequivalent / oracle mismatch, 5 budget exceeded,
// 6 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permclosure/closure.hpp"
#include "permclosure/dfa.hpp"
#include "permclosure/io.hpp"
#include "permclosure/oracle.hpp"
#include "permclosure/parikh_grid.hpp"
#include "permclosure/unary_decomposition.hpp"

namespace fs = std::filesystem;
using namespace permclosure;

namespace {

enum Exit : int {
  kOk = 0,
  kParseExit = 1,
  kNotPermutationExit = 2,
  kNotStabilizedExit = 3,
  kInequivalentExit = 4,
  kBudgetExit = 5,
  kInternalExit = 6,
};

// Extent for non-permutation input when --budget is not given.
constexpr std::size_t kDefaultExplorationExtent = 32;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidDfa:
    case ErrorKind::kUnknownSymbol:
    case ErrorKind::kAlphabetMismatch:
      return kParseExit;
    case ErrorKind::kNotPermutation:
      return kNotPermutationExit;
    case ErrorKind::kNotStabilized:
      return kNotStabilizedExit;
    case ErrorKind::kBoxTooLarge:
    case ErrorKind::kBudgetExceeded:
    case ErrorKind::kStateBudgetExceeded:
    case ErrorKind::kLengthExceeded:
      return kBudgetExit;
    default:
      return kInternalExit;
  }
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kParse, "cannot write '" + path + "'");
  out << text;
}

// "5" or "5,7": one extent per letter, a single value broadcast.
std::vector<std::size_t> parse_extents(const std::string& text, std::size_t k) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "bad extent '" + item + "'");
    }
  }
  if (out.size() == 1) out.assign(k, out.front());
  if (out.size() != k) throw Error(ErrorKind::kParse, "expected 1 or " + std::to_string(k) + " extents");
  return out;
}

Letter parse_axis(const Dfa& d, const std::string& text) {
  if (auto a = d.find_letter(text)) return *a;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used == text.size() && v >= 1 && v <= d.letter_count()) return static_cast<Letter>(v - 1);
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kParse, "axis '" + text + "' is neither a symbol nor an index in 1.." +
                                     std::to_string(d.letter_count()));
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
  std::optional<std::string> text = flag;
  if (!text) {
    if (const char* env = std::getenv("PERMCLOSURE_SEED")) text = env;
  }
  if (!text) return oracle::kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(*text, &used, 0);
    if (used == text->size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kParse, "bad seed '" + *text + "'");
}

std::string format_cycles(const CycleStructure& cs) {
  std::string out;
  for (const auto& cycle : cs.cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? " s" : "s") + std::to_string(cycle[i]);
    out += ')';
  }
  return out;
}

int cmd_check(const std::string& path) {
  const Dfa d = io::load_automaton(path);
  bool group = true;
  std::string summary;
  for (Letter a = 0; a < d.letter_count(); ++a) {
    if (!is_permutation_letter(d, a)) {
      std::cout << "letter " << d.alphabet()[a] << ": not a permutation\n";
      group = false;
      continue;
    }
    const CycleStructure cs = cycle_structure(d, a);
    std::cout << "letter " << d.alphabet()[a] << ": permutation, cycles " << format_cycles(cs) << ", order "
              << cs.order << "\n";
    summary += (summary.empty() ? "" : " ") + ("L_" + std::to_string(a + 1) + "=" + std::to_string(cs.order));
  }
  if (!group) return kNotPermutationExit;
  summary += (summary.empty() ? "" : " ") + ("bound=" + std::to_string(group_bound(d)));
  std::cout << summary << "\n";
  return kOk;
}

int cmd_labels(const std::string& path, const std::string& extents, const std::string& format, const std::string& out) {
  const Dfa d = io::load_automaton(path);
  const LabelGrid grid = sigma_grid(d, Box(parse_extents(extents, d.letter_count())));
  write_output(format == "dot" ? io::grid_dot(grid) : io::grid_tsv(grid), out);
  return kOk;
}

int cmd_closure(const std::string& path, bool raw, std::optional<std::size_t> budget, const std::string& out,
                const std::string& report_path) {
  const Dfa d = io::load_automaton(path);
  ClosureOptions options;
  options.minimize = !raw;
  options.budget = budget;
  if (!options.budget && !is_permutation_automaton(d)) options.budget = kDefaultExplorationExtent;
  try {
    const ClosureResult result = build_closure(d, options);
    write_output(io::dump_automaton(result.dfa), out);
    const std::string report = io::report_json(result.report).dump(2) + "\n";
    if (report_path.empty()) {
      std::cerr << report;
    } else {
      write_output(report, report_path);
    }
    return kOk;
  } catch (const NotStabilizedError& e) {
    std::cerr << "not stabilized: " << e.what() << "\n";
    for (std::size_t i = 0; i < e.failing_lines().size(); ++i) {
      const LinePhase& line = e.failing_lines()[i];
      std::cerr << "  direction " << d.alphabet()[e.failing_axes()[i]] << " base (";
      for (std::size_t j = 0; j < line.base.size(); ++j) std::cerr << (j ? "," : "") << line.base[j];
      std::cerr << ")\n";
    }
    return kNotStabilizedExit;
  }
}

int cmd_decompose(const std::string& path, const std::string& axis_text, const std::string& region_text,
                  std::optional<std::size_t> step_budget, const std::string& out_dir) {
  const Dfa d = io::load_automaton(path);
  const Letter axis = parse_axis(d, axis_text);
  std::vector<std::size_t> extents = parse_extents(region_text, d.letter_count());
  extents[axis] = 1;
  const Box region(extents);
  const DecompositionFamily family =
      step_budget ? build_family(d, axis, region, *step_budget) : build_family(d, axis, region);

  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::ostringstream summary;
  summary << "base\tindex\tperiod\tinherited_index\tinherited_period\n";
  std::string dots;
  for (const UnaryChainAutomaton& u : family.automata) {
    std::string base;
    for (std::size_t j = 0; j < u.base.size(); ++j) base += (j ? "," : "") + std::to_string(u.base[j]);
    const UnaryProfile prof = unary_index_period(u);
    summary << "(" << base << ")\t" << prof.index << "\t" << prof.period << "\t" << u.inherited_index << "\t"
            << u.inherited_period << "\n";
    const std::string dot = io::chain_dot(u, d.alphabet());
    if (out_dir.empty()) {
      dots += dot;
    } else {
      std::string name = "chain";
      for (std::size_t j = 0; j < u.base.size(); ++j) name += "_" + std::to_string(u.base[j]);
      write_output(dot, (fs::path(out_dir) / (name + ".dot")).string());
    }
  }
  std::cout << summary.str() << dots;
  return kOk;
}

int cmd_equiv(const std::string& a_path, const std::string& b_path) {
  const Dfa a = io::load_automaton(a_path);
  const Dfa b = io::load_automaton(b_path);
  const EquivalenceResult r = equivalent(a, b);
  if (r.equivalent) {
    std::cout << "equivalent\n";
    return kOk;
  }
  std::cout << "counterexample: \"" << format_word(a.alphabet(), *r.counterexample) << "\"\n";
  return kInequivalentExit;
}

int cmd_oracle_check(const std::string& path, const std::string& candidate_path, std::size_t max_len,
                     const std::optional<std::string>& seed_flag) {
  const Dfa original = io::load_automaton(path);
  const std::uint64_t seed = resolve_seed(seed_flag);
  const Dfa candidate = candidate_path.empty() ? build_closure(original).dfa : io::load_automaton(candidate_path);
  const oracle::VerifyResult r = oracle::verify_closure(candidate, original, max_len, seed);
  if (r.passed) {
    std::cout << "pass: " << r.words_checked << " words up to length " << max_len
              << (r.representatives_only ? " (one representative per Parikh vector)" : "") << "\n";
    return kOk;
  }
  std::cout << "counterexample: \"" << format_word(original.alphabet(), *r.counterexample) << "\"\n";
  return kInequivalentExit;
}

int cmd_minimize(const std::string& path, const std::string& out) {
  write_output(io::dump_automaton(minimize(io::load_automaton(path))), out);
  return kOk;
}

int cmd_jfa2dfa(const std::string& path, const std::string& out) {
  write_output(io::dump_automaton(jfa_to_dfa(io::load_automaton(path))), out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commutative closure of group languages"};
  app.require_subcommand(1);

  std::string path, path_b, out, report_path, extents = "8", format = "tsv", axis = "1", region = "8", out_dir,
                                                candidate;
  bool raw = false;
  std::optional<std::size_t> budget, step_budget;
  std::size_t max_len = 10;
  std::optional<std::string> seed;

  auto* check = app.add_subcommand("check", "Permutation structure, letter orders and the group bound");
  check->add_option("automaton", path, "Automaton JSON file")->required();

  auto* labels = app.add_subcommand("labels", "Dump the state-label grid");
  labels->add_option("automaton", path)->required();
  labels->add_option("--extent", extents, "Extent per axis: N or N1,N2,...")->capture_default_str();
  labels->add_option("--format", format)->check(CLI::IsMember({"tsv", "dot"}))->capture_default_str();
  labels->add_option("--out", out, "Output file (default stdout)");

  auto* closure = app.add_subcommand("closure", "Build a DFA for the commutative closure");
  closure->add_option("automaton", path)->required();
  closure->add_flag("--raw", raw, "Keep the unminimized phase product");
  closure->add_option("--budget", budget, "Per-axis exploration extent (non-permutation input)");
  closure->add_option("--out", out, "Closure automaton file (default stdout)");
  closure->add_option("--report", report_path, "Report JSON file (default stderr)");

  auto* decompose = app.add_subcommand("decompose", "Unary chain automata along one letter");
  decompose->add_option("automaton", path)->required();
  decompose->add_option("--axis", axis, "Letter name or 1-based index")->capture_default_str();
  decompose->add_option("--region", region, "Region extent per axis: N or N1,N2,...")->capture_default_str();
  decompose->add_option("--step-budget", step_budget, "Maximum chain length");
  decompose->add_option("--out-dir", out_dir, "Directory for one DOT file per base point");
  std::string chain_format = "dot";
  decompose->add_option("--format", chain_format, "Chain export format")->check(CLI::IsMember({"dot"}));

  auto* equiv = app.add_subcommand("equiv", "Language equivalence with shortest counterexample");
  equiv->add_option("first", path)->required();
  equiv->add_option("second", path_b)->required();

  auto* oracle_check = app.add_subcommand("oracle-check", "Compare a closure against brute force");
  oracle_check->add_option("automaton", path, "Source automaton")->required();
  oracle_check->add_option("--candidate", candidate, "Closure automaton (default: build it)");
  oracle_check->add_option("--max-len", max_len, "Word length bound")->capture_default_str();
  oracle_check->add_option("--seed", seed, "Seed for shuffled spot checks (overrides PERMCLOSURE_SEED)");

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimal DFA in BFS numbering");
  minimize_cmd->add_option("automaton", path)->required();
  minimize_cmd->add_option("--out", out);

  auto* jfa = app.add_subcommand("jfa2dfa", "DFA for a permutation automaton read as a jumping automaton");
  jfa->add_option("automaton", path)->required();
  jfa->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseExit;
  }

  try {
    if (*check) return cmd_check(path);
    if (*labels) return cmd_labels(path, extents, format, out);
    if (*closure) return cmd_closure(path, raw, budget, out, report_path);
    if (*decompose) return cmd_decompose(path, axis, region, step_budget, out_dir);
    if (*equiv) return cmd_equiv(path, path_b);
    if (*oracle_check) return cmd_oracle_check(path, candidate, max_len, seed);
    if (*minimize_cmd) return cmd_minimize(path, out);
    if (*jfa) return cmd_jfa2dfa(path, out);
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalExit;
  }
  return kInternalExit;
}
