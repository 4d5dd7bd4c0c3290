#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "permclosure/closure.hpp"
#include "permclosure/dfa.hpp"
#include "permclosure/parikh_grid.hpp"
#include "permclosure/unary_decomposition.hpp"

namespace permclosure::io {

/// Strict AutomatonFile reader: exactly the keys alphabet, states, start,
/// finals, delta. Every failure throws `Error{kParse}` with the JSON path
/// (and byte offset for syntax errors).
Dfa parse_automaton(std::string_view text);
Dfa load_automaton(const std::filesystem::path& path);

/// Two-space indented JSON, keys in file order, trailing newline.
std::string dump_automaton(const Dfa& d);
void save_automaton(const Dfa& d, const std::filesystem::path& path);

/// One row per point in lexicographic order: coordinates, then the label.
std::string grid_tsv(const LabelGrid& grid);
/// Lattice of labelled points with one edge per letter step.
std::string grid_dot(const LabelGrid& grid);

/// Chain automaton as a left-to-right digraph of "({states}, counter)" nodes.
std::string chain_dot(const UnaryChainAutomaton& u, const std::vector<std::string>& alphabet);

nlohmann::ordered_json report_json(const ClosureReport& report);

}  // namespace permclosure::io
