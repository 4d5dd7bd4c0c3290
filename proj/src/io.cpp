#include "permclosure/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace permclosure::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParse, what); }

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer()) parse_error(where + ": expected a non-negative integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  auto i = v.get<std::int64_t>();
  if (i < 0) parse_error(where + ": expected a non-negative integer, got " + std::to_string(i));
  return static_cast<std::size_t>(i);
}

const json& array_at(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_array()) parse_error(std::string(key) + ": expected an array");
  return v;
}

std::string point_label(const ParikhVector& p) {
  std::string out;
  for (std::size_t j = 0; j < p.size(); ++j) out += (j ? "_" : "") + std::to_string(p[j]);
  return out;
}

}  // namespace

Dfa parse_automaton(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error("invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) parse_error("top level: expected an object");
  static const char* kKeys[] = {"alphabet", "states", "start", "finals", "delta"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) parse_error("unknown key '" + key + "'");
  }
  for (const char* key : kKeys) {
    if (!doc.contains(key)) parse_error(std::string("missing key '") + key + "'");
  }

  std::vector<std::string> alphabet;
  const json& alpha = array_at(doc, "alphabet");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!alpha[i].is_string()) parse_error("alphabet[" + std::to_string(i) + "]: expected a string");
    alphabet.push_back(alpha[i].get<std::string>());
  }
  const std::size_t states = as_index(doc.at("states"), "states");
  const State start = as_index(doc.at("start"), "start");

  std::vector<State> finals;
  const json& fin = array_at(doc, "finals");
  for (std::size_t i = 0; i < fin.size(); ++i) finals.push_back(as_index(fin[i], "finals[" + std::to_string(i) + "]"));

  std::vector<std::vector<State>> delta;
  const json& rows = array_at(doc, "delta");
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const std::string where = "delta[" + std::to_string(a) + "]";
    if (!rows[a].is_array()) parse_error(where + ": expected an array");
    std::vector<State> row;
    for (std::size_t s = 0; s < rows[a].size(); ++s) row.push_back(as_index(rows[a][s], where + "[" + std::to_string(s) + "]"));
    delta.push_back(std::move(row));
  }

  try {
    return Dfa(std::move(alphabet), states, start, std::move(finals), std::move(delta));
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

Dfa load_automaton(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_automaton(buf.str());
  } catch (const Error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

std::string dump_automaton(const Dfa& d) {
  nlohmann::ordered_json doc;
  doc["alphabet"] = d.alphabet();
  doc["states"] = d.state_count();
  doc["start"] = d.start();
  doc["finals"] = d.finals();
  doc["delta"] = d.delta();
  return doc.dump(2) + "\n";
}

void save_automaton(const Dfa& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kParse, "cannot write '" + path.string() + "'");
  out << dump_automaton(d);
}

std::string grid_tsv(const LabelGrid& grid) {
  std::string out;
  const Box& box = grid.box();
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    const ParikhVector p = box.point(idx);
    for (std::size_t j = 0; j < p.size(); ++j) {
      out += std::to_string(p[j]);
      out += '\t';
    }
    out += format_state_list(grid.at(idx));
    out += '\n';
  }
  return out;
}

std::string grid_dot(const LabelGrid& grid) {
  const Box& box = grid.box();
  const auto& alphabet = grid.dfa().alphabet();
  std::ostringstream out;
  out << "digraph labels {\n  node [shape=plaintext];\n";
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    const ParikhVector p = box.point(idx);
    out << "  p" << point_label(p) << " [label=\"{" << format_state_list(grid.at(idx)) << "}\"";
    // Two-dimensional grids are pinned to their coordinates, origin bottom left.
    if (p.size() == 2) out << ", pos=\"" << p[0] << "," << p[1] << "!\"";
    out << "];\n";
  }
  for (std::size_t idx = 0; idx < box.volume(); ++idx) {
    const ParikhVector p = box.point(idx);
    for (Letter a = 0; a < p.size(); ++a) {
      if (p[a] + 1 >= box.extent(a)) continue;
      ParikhVector q = p;
      ++q[a];
      out << "  p" << point_label(p) << " -> p" << point_label(q) << " [label=\"" << alphabet[a] << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string chain_dot(const UnaryChainAutomaton& u, const std::vector<std::string>& alphabet) {
  std::ostringstream out;
  out << "digraph chain_" << point_label(u.base) << " {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t m = 0; m < u.chain.size(); ++m) {
    out << "  c" << m << " [label=\"({" << format_state_list(u.chain[m].label) << "}, " << u.chain[m].counter << ")\"];\n";
  }
  const std::string& letter = alphabet.at(u.axis);
  for (std::size_t m = 0; m + 1 < u.chain.size(); ++m) out << "  c" << m << " -> c" << m + 1 << " [label=\"" << letter << "\"];\n";
  if (u.closed()) out << "  c" << u.chain.size() - 1 << " -> c" << *u.loop_target << " [label=\"" << letter << "\"];\n";
  out << "}\n";
  return out.str();
}

nlohmann::ordered_json report_json(const ClosureReport& report) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json profile = nlohmann::ordered_json::array();
  for (const AxisProfile& a : report.profile.axes) profile.push_back({{"index", a.index}, {"period", a.period}});
  doc["profile"] = profile;
  doc["raw_size"] = report.raw_size;
  doc["minimized_size"] = report.minimized_size ? nlohmann::ordered_json(*report.minimized_size) : nlohmann::ordered_json(nullptr);
  doc["group_bound"] = report.group_bound ? nlohmann::ordered_json(*report.group_bound) : nlohmann::ordered_json(nullptr);
  doc["bound_respected"] = report.bound_respected;
  doc["stabilized"] = report.stabilized;
  doc["asymptotic_bound"] = kAsymptoticBound;
  return doc;
}

}  // namespace permclosure::io
