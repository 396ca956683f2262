#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcode/errors.hpp"

namespace gcode {

// Codewords are length-m bitstrings packed into a single 64-bit word,
// position 0 in the least significant bit. m <= 63 throughout.
using Word = std::uint64_t;

struct LinearInfo {
  std::vector<Word> basis;          // spanning set, linearly independent
  std::vector<Word> parity_checks;  // rows annihilating every codeword
};

struct BinaryCode {
  int length = 0;            // m
  int distance_claim = 0;    // verified lower bound on the minimum distance
  std::vector<Word> words;   // explicit roster; may be empty for implicit linear codes
  std::optional<LinearInfo> linear;

  std::size_t size() const { return words.size(); }
  std::uint64_t span_size() const {
    return linear ? (std::uint64_t{1} << linear->basis.size()) : words.size();
  }
};

enum class ScanOrder { lexicographic, seeded_permutation };

struct GvResult {
  BinaryCode code;
  bool shortfall = false;        // target requested but not reached on a full scan
  std::uint64_t gv_guarantee = 0;  // ceil(2^m / sum_{i<d} C(m,i)), the sphere-covering floor
};

// Deterministic greedy Gilbert-Varshamov code: scan all 2^m words in the
// given order and admit each one at Hamming distance >= d from everything
// admitted so far. Stops early once `target` words are found (nullopt scans
// everything). Full lexicographic or seeded-permutation scans need m <= 26.
GvResult gv_greedy(int m, int d, ScanOrder order = ScanOrder::lexicographic,
                   std::optional<std::uint64_t> target = std::nullopt,
                   std::uint64_t seed = 0);

// The [2^k-1, 2^k-1-k, 3] Hamming code from the parity-check matrix whose
// columns are all nonzero k-bit vectors (column j is the binary encoding of
// j+1). Words are materialized when the dimension is at most 16.
BinaryCode hamming_code(int k);

// Linear code of length m >= 4 with minimum distance >= 4 and all codeword
// weights even: a shortened extended Hamming code. Positions 0..m-2 carry
// the distinct nonzero column vectors 1..m-1, position m-1 the zero column,
// plus an overall parity row covering everything.
BinaryCode even_d4_linear(int m);

// Exact minimum distance: minimum nonzero codeword weight for linear codes
// (enumerated over the span), all-pairs minimum otherwise. The default
// budget admits linear dimensions up to 31.
int verify_min_distance(const BinaryCode& code, std::uint64_t budget = 2'200'000'000);

// Packed parity-check syndrome of v (row i of parity_checks contributes bit
// i). Constant on cosets; equal syndromes of distinct vectors imply their
// difference is a codeword.
std::uint32_t syndrome(const BinaryCode& code, Word v);

// Basis of the even-weight subcode of a linear code (one dimension lower
// when the code contains odd-weight words, otherwise the original basis).
std::vector<Word> even_weight_subbasis(const std::vector<Word>& basis);

// Expand the span of a basis into an explicit word list (dimension <= 26).
std::vector<Word> span_words(const std::vector<Word>& basis);

std::uint64_t binomial(int n, int k);

}  // namespace gcode
