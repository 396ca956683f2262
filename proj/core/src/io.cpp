#include "gcode/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gcode {

using nlohmann::json;

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw UsageError(std::string("invalid hex digit: ") + c);
}

std::string bits_to_hex(const std::vector<bool>& bits) {
  const std::size_t digits = (bits.size() + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) {
      const std::size_t digit = i / 4;
      out[digits - 1 - digit] =
          kHexDigits[hex_value(out[digits - 1 - digit]) | (1 << (i % 4))];
    }
  return out;
}

std::vector<bool> hex_to_bits(const std::string& hex, std::size_t bit_count) {
  if (hex.size() != (bit_count + 3) / 4)
    throw UsageError("hex field has the wrong digit count");
  std::vector<bool> bits(bit_count, false);
  for (std::size_t i = 0; i < bit_count; ++i) {
    const std::size_t digit = i / 4;
    const int v = hex_value(hex[hex.size() - 1 - digit]);
    if ((v >> (i % 4)) & 1) bits[i] = true;
  }
  // Reject set bits beyond the bitset length.
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int v = hex_value(hex[hex.size() - 1 - d]);
    for (int b = 0; b < 4; ++b) {
      const std::size_t bit = d * 4 + static_cast<std::size_t>(b);
      if (bit >= bit_count && ((v >> b) & 1))
        throw UsageError("hex field sets bits beyond the declared length");
    }
  }
  return bits;
}

void require_version(const json& j, const std::string& what) {
  if (!j.contains("format_version") || !j["format_version"].is_number_integer())
    throw UsageError(what + ": missing format_version");
  if (j["format_version"].get<int>() != kFormatVersion)
    throw UsageError(what + ": unsupported format_version");
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void dump_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

std::string graph_to_line(const LabeledGraph& g) {
  std::vector<bool> bits(g.slot_count());
  for (std::size_t i = 0; i < g.slot_count(); ++i) bits[i] = g.slot(i);
  std::ostringstream out;
  out << "n=" << g.vertex_count() << " edges=" << bits_to_hex(bits);
  return out.str();
}

LabeledGraph graph_from_line(const std::string& line) {
  int n = 0;
  std::string hex;
  if (line.rfind("n=", 0) != 0) throw UsageError("graph line must start with n=");
  const std::size_t space = line.find(' ');
  if (space == std::string::npos || line.compare(space + 1, 6, "edges=") != 0)
    throw UsageError("graph line must contain ' edges='");
  n = std::stoi(line.substr(2, space - 2));
  hex = line.substr(space + 7);
  LabeledGraph g(n);
  const std::vector<bool> bits = hex_to_bits(hex, g.slot_count());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) g.set_slot(i);
  return g;
}

std::string word_to_hex(Word w, int length) {
  std::vector<bool> bits(length);
  for (int i = 0; i < length; ++i) bits[i] = (w >> i) & 1;
  return bits_to_hex(bits);
}

Word word_from_hex(const std::string& hex, int length) {
  const std::vector<bool> bits = hex_to_bits(hex, length);
  Word w = 0;
  for (int i = 0; i < length; ++i)
    if (bits[i]) w |= Word{1} << i;
  return w;
}

void save_factorization(const std::string& path, const OneFactorization& f) {
  json j;
  j["format_version"] = kFormatVersion;
  j["order"] = f.order;
  json factors = json::array();
  for (const auto& factor : f.factors) factors.push_back(graph_to_line(factor));
  j["factors"] = factors;
  dump_file(path, j);
}

OneFactorization load_factorization(const std::string& path) {
  const json j = parse_file(path);
  require_version(j, "factorization file");
  OneFactorization f;
  f.order = j.at("order").get<int>();
  for (const auto& line : j.at("factors"))
    f.factors.push_back(graph_from_line(line.get<std::string>()));
  return f;
}

void save_code(const std::string& path, const BinaryCode& code) {
  json j;
  j["format_version"] = kFormatVersion;
  j["length"] = code.length;
  j["distance_claim"] = code.distance_claim;
  json words = json::array();
  for (Word w : code.words) words.push_back(word_to_hex(w, code.length));
  j["words"] = words;
  if (code.linear) {
    json basis = json::array();
    for (Word w : code.linear->basis) basis.push_back(word_to_hex(w, code.length));
    j["linear_basis"] = basis;
    json checks = json::array();
    for (Word w : code.linear->parity_checks) checks.push_back(word_to_hex(w, code.length));
    j["parity_checks"] = checks;
  }
  dump_file(path, j);
}

BinaryCode load_code(const std::string& path) {
  const json j = parse_file(path);
  require_version(j, "code file");
  BinaryCode code;
  code.length = j.at("length").get<int>();
  code.distance_claim = j.at("distance_claim").get<int>();
  for (const auto& w : j.at("words"))
    code.words.push_back(word_from_hex(w.get<std::string>(), code.length));
  if (j.contains("linear_basis")) {
    LinearInfo linear;
    for (const auto& w : j["linear_basis"])
      linear.basis.push_back(word_from_hex(w.get<std::string>(), code.length));
    if (j.contains("parity_checks"))
      for (const auto& w : j["parity_checks"])
        linear.parity_checks.push_back(word_from_hex(w.get<std::string>(), code.length));
    code.linear = std::move(linear);
  }
  return code;
}

void save_treecode_gen(const std::string& path, const TreeCodeGenSpec& spec) {
  json j;
  j["format_version"] = kFormatVersion;
  j["variant"] = spec.variant;
  j["n"] = spec.n;
  j["ell"] = spec.leaves;
  j["prime_p"] = spec.prime_p;
  j["coloring"] = spec.coloring;
  j["h_code_file"] = spec.h_code_file;
  j["seed"] = spec.seed;
  dump_file(path, j);
}

TreeCodeGenSpec load_treecode_gen(const std::string& path) {
  const json j = parse_file(path);
  require_version(j, "tree-code generator file");
  TreeCodeGenSpec spec;
  spec.variant = j.at("variant").get<std::string>();
  spec.n = j.at("n").get<int>();
  spec.leaves = j.at("ell").get<int>();
  spec.prime_p = j.at("prime_p").get<int>();
  spec.coloring = j.at("coloring").get<std::string>();
  spec.h_code_file = j.at("h_code_file").get<std::string>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

TreeCodeParams realize_treecode(const TreeCodeGenSpec& spec) {
  const OneFactorization f = kotzig_p1f(spec.prime_p);
  if (spec.variant == "hamming") {
    int k = 0;
    while ((1 << k) - 1 < spec.n) ++k;
    if ((1 << k) - 1 != spec.n)
      throw UsageError("realize_treecode: hamming variant needs n = 2^k - 1");
    return build_hamming_treecode(k, spec.leaves, f);
  }
  if (spec.variant != "gv-partition")
    throw UsageError("realize_treecode: unknown variant " + spec.variant);
  const PartColoring coloring =
      spec.coloring == "greedy" ? PartColoring::greedy : PartColoring::syndrome;
  return build_treecode(spec.n, spec.leaves, f, coloring, ScanOrder::lexicographic,
                        spec.seed);
}

void save_blocker_report(const std::string& path, const BlockerReport& report) {
  json j;
  j["format_version"] = kFormatVersion;
  j["predicate"] = report.predicate;
  j["host"] = graph_to_line(report.host);
  j["n"] = report.host.vertex_count();
  j["edge_count"] = report.edge_count;
  j["dual_log_bound"] = report.dual_log_bound;
  j["predicate_blocked"] = report.predicate_blocked;
  json checks = json::object();
  for (const auto& [key, value] : report.witness_checks) checks[key] = value;
  j["witness_checks"] = checks;
  dump_file(path, j);
}

void save_grid_family(const std::string& path, const GridFamily& family) {
  json j;
  j["format_version"] = kFormatVersion;
  j["rows"] = family.spec.rows;
  j["cols"] = family.spec.cols;
  json members = json::array();
  for (const auto& member : family.members) members.push_back(graph_to_line(member));
  j["members"] = members;
  if (!family.generators.empty()) {
    json generators = json::array();
    for (const auto& gen : family.generators) generators.push_back(graph_to_line(gen));
    j["linear_basis"] = generators;
  }
  dump_file(path, j);
}

GridFamily load_grid_family(const std::string& path) {
  const json j = parse_file(path);
  require_version(j, "grid family file");
  GridFamily family;
  family.spec.rows = j.at("rows").get<int>();
  family.spec.cols = j.at("cols").get<int>();
  family.host = grid_graph(family.spec.rows, family.spec.cols);
  for (const auto& line : j.at("members"))
    family.members.push_back(graph_from_line(line.get<std::string>()));
  if (j.contains("linear_basis"))
    for (const auto& line : j["linear_basis"])
      family.generators.push_back(graph_from_line(line.get<std::string>()));
  return family;
}

void save_oracle_result(const std::string& path, const OracleResult& result) {
  json j;
  j["format_version"] = kFormatVersion;
  j["n"] = result.n;
  j["predicate"] = result.predicate;
  j["M_exact"] = result.m_exact;
  json witness = json::array();
  for (const auto& g : result.witness_family) witness.push_back(graph_to_line(g));
  j["witness_family"] = witness;
  if (result.d_exact) j["D_exact"] = *result.d_exact;
  if (result.bad_count) j["bad_count"] = *result.bad_count;
  dump_file(path, j);
}

namespace {

json manifest_json(const RunManifest& manifest) {
  json j;
  j["format_version"] = kFormatVersion;
  j["command"] = manifest.command;
  json params = json::object();
  for (const auto& [key, value] : manifest.parameters) params[key] = value;
  j["parameters"] = params;
  j["seed"] = manifest.seed;
  j["artifacts"] = manifest.artifacts;
  j["wall_ms"] = manifest.wall_ms;
  j["verification"] = {{"pass", manifest.checks_passed}, {"fail", manifest.checks_failed}};
  return j;
}

}  // namespace

void save_manifest(const std::string& path, const RunManifest& manifest) {
  dump_file(path, manifest_json(manifest));
}

std::string manifest_to_json(const RunManifest& manifest) {
  return manifest_json(manifest).dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << content;
}

}  // namespace gcode
