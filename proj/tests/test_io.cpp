#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>

#include "permclosure/io.hpp"
#include "support/random_automata.hpp"

using namespace permclosure;

namespace {

ErrorKind parse_kind(std::string_view text) {
  try {
    io::parse_automaton(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::kParse;
}

std::string parse_message(std::string_view text) {
  try {
    io::parse_automaton(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a well-formed file") {
  const Dfa d = io::parse_automaton(
      R"({"alphabet":["a1","a2"],"states":3,"start":0,"finals":[0],"delta":[[1,2,0],[1,0,2]]})");
  CHECK(d == fixtures::perm_aut());
}

TEST_CASE("strict parsing") {
  CHECK(parse_kind("{") == ErrorKind::kParse);
  CHECK(parse_message("{\"alphabet\": [}").find("byte") != std::string::npos);
  CHECK(parse_kind(R"({"alphabet":["a"],"states":1,"start":0,"finals":[],"delta":[[0]],"extra":1})") ==
        ErrorKind::kParse);
  CHECK(parse_message(R"({"alphabet":["a"],"states":1,"start":0,"finals":[],"delta":[[0]],"extra":1})")
            .find("extra") != std::string::npos);
  CHECK(parse_message(R"({"alphabet":["a"],"states":1,"start":0,"finals":[]})").find("delta") != std::string::npos);
  CHECK(parse_message(R"({"alphabet":["a"],"states":1,"start":0,"finals":[-1],"delta":[[0]]})").find("finals[0]") !=
        std::string::npos);
  CHECK(parse_message(R"({"alphabet":["a"],"states":2,"start":0,"finals":[],"delta":[[0,"x"]]})")
            .find("delta[0][1]") != std::string::npos);
  CHECK(parse_message(R"({"alphabet":["a"],"states":2,"start":0,"finals":[],"delta":[[0,4]]})")
            .find("delta[0][1]") != std::string::npos);
  CHECK(parse_kind(R"([1,2])") == ErrorKind::kParse);
  CHECK(parse_kind(R"({"alphabet":[1],"states":1,"start":0,"finals":[],"delta":[[0]]})") == ErrorKind::kParse);
}

TEST_CASE("round trip and determinism") {
  std::mt19937_64 rng(61);
  const auto dir = std::filesystem::temp_directory_path() / "permclosure_io_test";
  std::filesystem::create_directories(dir);
  for (int i = 0; i < 50; ++i) {
    const Dfa d = fixtures::random_dfa(rng, 1 + rng() % 8, 1 + rng() % 3);
    const std::string text = io::dump_automaton(d);
    CHECK(io::parse_automaton(text) == d);
    CHECK(io::dump_automaton(io::parse_automaton(text)) == text);
    const auto path = dir / ("d" + std::to_string(i) + ".json");
    io::save_automaton(d, path);
    CHECK(io::load_automaton(path) == d);
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::load_automaton(dir / "missing.json"), Error);
}

TEST_CASE("grid exports") {
  const LabelGrid g = sigma_grid(fixtures::perm_aut(), Box::uniform(2, 5));
  const std::string tsv = io::grid_tsv(g);
  CHECK(tsv.find("2\t1\ts0,s1,s2\n") != std::string::npos);
  CHECK(tsv.rfind("0\t0\ts0\n", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 25);
  CHECK(io::grid_tsv(sigma_grid(fixtures::grid_aut(), Box::uniform(2, 5))).find("1\t1\ts0,s2\n") != std::string::npos);
  CHECK(io::grid_tsv(sigma_grid(fixtures::perm_aut(), Box::uniform(2, 1))) == "0\t0\ts0\n");

  const std::string dot = io::grid_dot(g);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("p2_1 [label=\"{s0,s1,s2}\"") != std::string::npos);
  CHECK(dot.find("p1_1 -> p2_1 [label=\"a1\"]") != std::string::npos);
  CHECK(dot == io::grid_dot(g));
}

TEST_CASE("chain export") {
  const DecompositionFamily fam = build_family(fixtures::grid_aut(), 1, Box({4, 1}));
  const std::string dot = io::chain_dot(fam.automata[1], fam.dfa.alphabet());
  CHECK(dot.find("({s0,s2}, 1)") != std::string::npos);
  CHECK(dot.find("c2 -> c2") != std::string::npos);
}

TEST_CASE("report json") {
  ClosureReport r;
  r.profile = PhaseProfile{{{2, 3}, {1, 2}}};
  r.raw_size = 15;
  r.group_bound = 54;
  const auto doc = io::report_json(r);
  CHECK(doc["profile"][0]["index"] == 2);
  CHECK(doc["raw_size"] == 15);
  CHECK(doc["minimized_size"].is_null());
  CHECK(doc["group_bound"] == 54);
  CHECK(doc["bound_respected"] == true);
  CHECK(doc.begin().key() == "profile");
}
