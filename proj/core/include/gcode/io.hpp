#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcode/binary_code.hpp"
#include "gcode/blockers.hpp"
#include "gcode/factorization.hpp"
#include "gcode/graph.hpp"
#include "gcode/grid.hpp"
#include "gcode/oracle.hpp"
#include "gcode/tree_code.hpp"

namespace gcode {

inline constexpr int kFormatVersion = 1;

// Graph line format: "n=<n> edges=<hex>". The hex field encodes the edge
// bitset with the lowest canonical slot in the least significant bit,
// printed most significant nibble first and left-padded with zeros to
// ceil(C(n,2)/4) digits. Round-trips bit-exactly.
std::string graph_to_line(const LabeledGraph& g);
LabeledGraph graph_from_line(const std::string& line);

// Codeword hex with the same little-endian nibble convention, padded to
// ceil(length/4) digits.
std::string word_to_hex(Word w, int length);
Word word_from_hex(const std::string& hex, int length);

// JSON artifact files. Loaders validate the format-version field and reject
// unknown versions.
void save_factorization(const std::string& path, const OneFactorization& f);
OneFactorization load_factorization(const std::string& path);

void save_code(const std::string& path, const BinaryCode& code);
BinaryCode load_code(const std::string& path);

// Generator file for a tree-code family; the factorization is recorded by
// its Kotzig prime so reconstruction is deterministic.
struct TreeCodeGenSpec {
  std::string variant;   // "gv-partition" | "hamming"
  int n = 0;
  int leaves = 0;
  int prime_p = 0;       // K_{n+1} = Kotzig(p) with p = n
  std::string coloring;  // "syndrome" | "greedy" (gv variant)
  std::string h_code_file;
  std::uint64_t seed = 0;
};
void save_treecode_gen(const std::string& path, const TreeCodeGenSpec& spec);
TreeCodeGenSpec load_treecode_gen(const std::string& path);

// Rebuild the family a generator file describes (loads the H code file
// relative to the current directory as stored).
TreeCodeParams realize_treecode(const TreeCodeGenSpec& spec);

void save_blocker_report(const std::string& path, const BlockerReport& report);

void save_grid_family(const std::string& path, const GridFamily& family);
GridFamily load_grid_family(const std::string& path);

void save_oracle_result(const std::string& path, const OracleResult& result);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::vector<std::string> artifacts;
  std::uint64_t wall_ms = 0;
  std::uint64_t checks_passed = 0;
  std::uint64_t checks_failed = 0;
};
void save_manifest(const std::string& path, const RunManifest& manifest);
std::string manifest_to_json(const RunManifest& manifest);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gcode
