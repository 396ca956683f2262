#include <doctest.h>

#include <filesystem>
#include <unistd.h>

#include "gcode/io.hpp"
#include "gcode/rng.hpp"

using namespace gcode;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("gcode_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("graph line format on known values") {
  // n=3, edges {01, 02}: slots 0 and 1 set -> value 0b011 -> one hex digit
  CHECK(graph_to_line(graph_from_edges(3, {{0, 1}, {0, 2}})) == "n=3 edges=3");
  CHECK(graph_to_line(LabeledGraph(3)) == "n=3 edges=0");
  CHECK(graph_to_line(complete_graph(3)) == "n=3 edges=7");
  // n=4: 6 slots -> 2 hex digits, zero-padded
  CHECK(graph_to_line(graph_from_edges(4, {{0, 1}})) == "n=4 edges=01");
  CHECK(graph_to_line(complete_graph(4)) == "n=4 edges=3f");
}

TEST_CASE("graph line round-trip is bit-exact on random graphs") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(40));
    LabeledGraph g(n);
    for (std::size_t s = 0; s < g.slot_count(); ++s)
      if (rng.chance(0.5)) g.set_slot(s);
    CHECK(graph_from_line(graph_to_line(g)) == g);
  }
}

TEST_CASE("graph line rejects malformed input") {
  CHECK_THROWS_AS(graph_from_line("edges=3"), UsageError);
  CHECK_THROWS_AS(graph_from_line("n=3 edges=z"), UsageError);
  CHECK_THROWS_AS(graph_from_line("n=3 edges=33"), UsageError);  // wrong digit count
  CHECK_THROWS_AS(graph_from_line("n=3 edges=8"), UsageError);   // bit beyond C(3,2)
}

TEST_CASE("word hex round-trip") {
  CHECK(word_to_hex(0b1011, 4) == "b");
  CHECK(word_to_hex(0b1011, 6) == "0b");
  CHECK(word_from_hex("0b", 6) == 0b1011);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int length = 1 + static_cast<int>(rng.below(63));
    const Word w = rng.next() & ((Word{1} << length) - 1);
    CHECK(word_from_hex(word_to_hex(w, length), length) == w);
  }
}

TEST_CASE("factorization file round-trip") {
  TempDir dir;
  const OneFactorization f = kotzig_p1f(7);
  save_factorization(dir.file("f.json"), f);
  const OneFactorization loaded = load_factorization(dir.file("f.json"));
  CHECK(loaded.order == f.order);
  REQUIRE(loaded.factors.size() == f.factors.size());
  for (std::size_t i = 0; i < f.factors.size(); ++i) CHECK(loaded.factors[i] == f.factors[i]);
  CHECK(static_cast<bool>(verify_perfect(loaded)));
}

TEST_CASE("code file round-trip keeps the linear structure") {
  TempDir dir;
  const BinaryCode code = even_d4_linear(12);
  save_code(dir.file("c.json"), code);
  const BinaryCode loaded = load_code(dir.file("c.json"));
  CHECK(loaded.length == code.length);
  CHECK(loaded.distance_claim == code.distance_claim);
  CHECK(loaded.words == code.words);
  REQUIRE(loaded.linear.has_value());
  CHECK(loaded.linear->basis == code.linear->basis);
  CHECK(loaded.linear->parity_checks == code.linear->parity_checks);
}

TEST_CASE("unknown format versions are rejected") {
  TempDir dir;
  write_text_file(dir.file("bad.json"), R"({"format_version": 99, "order": 4, "factors": []})");
  CHECK_THROWS_AS(load_factorization(dir.file("bad.json")), UsageError);
  write_text_file(dir.file("none.json"), R"({"order": 4, "factors": []})");
  CHECK_THROWS_AS(load_factorization(dir.file("none.json")), UsageError);
}

TEST_CASE("treecode generator file round-trip and realization") {
  TempDir dir;
  const OneFactorization f = kotzig_p1f(17);
  const TreeCodeParams params = build_treecode(17, 3, f);
  save_code(dir.file("h.json"), params.h_code);

  TreeCodeGenSpec spec{"gv-partition", 17, 3, 17, "syndrome", dir.file("h.json"), 0};
  save_treecode_gen(dir.file("gen.json"), spec);
  const TreeCodeGenSpec loaded = load_treecode_gen(dir.file("gen.json"));
  CHECK(loaded.variant == spec.variant);
  CHECK(loaded.n == spec.n);
  CHECK(loaded.leaves == spec.leaves);
  CHECK(loaded.prime_p == spec.prime_p);

  const TreeCodeParams realized = realize_treecode(loaded);
  CHECK(realized.family_size() == params.family_size());
  // same construction -> bit-identical members
  for (std::uint64_t i : {0ULL, 5ULL, 77ULL, 32000ULL})
    CHECK(member(realized, i) == member(params, i));
}

TEST_CASE("grid family file round-trip") {
  TempDir dir;
  const auto family = search_grid_family(GridSpec{3, 3}, 2, 3);
  REQUIRE(family.has_value());
  save_grid_family(dir.file("g.json"), *family);
  const GridFamily loaded = load_grid_family(dir.file("g.json"));
  CHECK(loaded.spec.rows == 3);
  REQUIRE(loaded.members.size() == family->members.size());
  for (std::size_t i = 0; i < loaded.members.size(); ++i)
    CHECK(loaded.members[i] == family->members[i]);
  CHECK(static_cast<bool>(verify_grid_family(loaded)));
}
