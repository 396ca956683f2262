#include "gcode/binary_code.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>

#include "gcode/rng.hpp"

namespace gcode {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (r > ~std::uint64_t{0} / factor)
      throw ResourceError("binomial: value exceeds 64 bits");
    r = r * factor / i;
  }
  return r;
}

GvResult gv_greedy(int m, int d, ScanOrder order, std::optional<std::uint64_t> target,
                   std::uint64_t seed) {
  if (m < 1 || m > 63) throw UsageError("gv_greedy: length must be in [1, 63]");
  if (d < 1 || d > m) throw UsageError("gv_greedy: need 1 <= d <= m");
  if (m > 26) throw ResourceError("gv_greedy: full scan beyond length 26 is out of budget");
  if (order == ScanOrder::seeded_permutation && m > 22)
    throw ResourceError("gv_greedy: seeded permutation beyond length 22 is out of budget");

  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<Word> scan;
  if (order == ScanOrder::seeded_permutation) {
    scan.resize(total);
    std::iota(scan.begin(), scan.end(), 0);
    Rng rng = Rng::stream(seed, 0x67760u /* "gv" */);
    for (std::uint64_t i = total - 1; i > 0; --i)
      std::swap(scan[i], scan[rng.below(i + 1)]);
  }

  std::vector<Word> words;
  for (std::uint64_t i = 0; i < total; ++i) {
    const Word w = order == ScanOrder::lexicographic ? i : scan[i];
    bool ok = true;
    for (Word c : words)
      if (std::popcount(w ^ c) < d) {
        ok = false;
        break;
      }
    if (!ok) continue;
    words.push_back(w);
    if (target && words.size() >= *target) break;
  }

  std::uint64_t ball = 0;
  for (int i = 0; i < d; ++i) ball += binomial(m, i);
  const std::uint64_t guarantee = (total + ball - 1) / ball;

  GvResult result;
  result.code = BinaryCode{m, d, std::move(words), std::nullopt};
  result.shortfall = target && result.code.words.size() < *target;
  result.gv_guarantee = guarantee;
  return result;
}

namespace {

// Independent spanning subset with distinct top bits (xor-basis reduction).
std::vector<Word> row_reduce(const std::vector<Word>& rows) {
  std::array<Word, 64> by_top{};
  std::vector<Word> out;
  for (Word row : rows) {
    Word cur = row;
    while (cur) {
      const int top = 63 - std::countl_zero(cur);
      if (by_top[top]) {
        cur ^= by_top[top];
      } else {
        by_top[top] = cur;
        out.push_back(cur);
        break;
      }
    }
  }
  return out;
}

// Kernel basis of v -> (checks . v) over F_2^m, by augmented elimination on
// the column syndromes: a column that reduces to zero yields the kernel
// vector recorded in its combination mask.
std::vector<Word> kernel_basis(const std::vector<Word>& checks, int m) {
  const int rows = static_cast<int>(checks.size());
  if (rows > 32) throw UsageError("kernel_basis: more than 32 parity rows");
  std::vector<std::uint32_t> pivot_value(rows, 0);
  std::vector<Word> pivot_combo(rows, 0);
  std::vector<bool> has_pivot(rows, false);
  std::vector<Word> kernel;
  for (int j = 0; j < m; ++j) {
    std::uint32_t value = 0;
    for (int i = 0; i < rows; ++i)
      value |= static_cast<std::uint32_t>((checks[i] >> j) & 1) << i;
    Word combo = Word{1} << j;
    bool placed = false;
    for (int b = 0; b < rows && value; ++b) {
      if (!((value >> b) & 1)) continue;
      if (has_pivot[b]) {
        value ^= pivot_value[b];
        combo ^= pivot_combo[b];
      } else {
        has_pivot[b] = true;
        pivot_value[b] = value;
        pivot_combo[b] = combo;
        placed = true;
        break;
      }
    }
    if (!placed && value == 0) kernel.push_back(combo);
  }
  return kernel;
}

std::uint32_t apply_checks(const std::vector<Word>& checks, Word v) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < checks.size(); ++i)
    s |= static_cast<std::uint32_t>(std::popcount(checks[i] & v) & 1) << i;
  return s;
}

}  // namespace

std::vector<Word> span_words(const std::vector<Word>& basis) {
  if (basis.size() > 26) throw ResourceError("span_words: dimension above 26");
  std::vector<Word> words(std::uint64_t{1} << basis.size(), 0);
  for (std::uint64_t i = 1; i < words.size(); ++i) {
    const int bit = std::countr_zero(i);
    words[i] = words[i ^ (std::uint64_t{1} << bit)] ^ basis[bit];
  }
  return words;
}

BinaryCode hamming_code(int k) {
  if (k < 2) throw UsageError("hamming_code: need k >= 2");
  if (k > 5) throw ResourceError("hamming_code: k above 5 is out of budget");
  const int m = (1 << k) - 1;
  std::vector<Word> checks(k, 0);
  for (int j = 0; j < m; ++j) {
    const int column = j + 1;  // all nonzero k-bit vectors
    for (int i = 0; i < k; ++i)
      if ((column >> i) & 1) checks[i] |= Word{1} << j;
  }
  std::vector<Word> basis = kernel_basis(checks, m);
  BinaryCode code;
  code.length = m;
  code.distance_claim = 3;
  code.linear = LinearInfo{basis, checks};
  if (basis.size() <= 16) code.words = span_words(basis);
  if (verify_min_distance(code) != 3)
    throw VerificationError("hamming_code: verified distance is not 3");
  return code;
}

BinaryCode even_d4_linear(int m) {
  if (m < 4) throw UsageError("even_d4_linear: need m >= 4");
  if (m > 62) throw UsageError("even_d4_linear: length exceeds 62");
  int r = 1;
  while ((1 << r) < m) ++r;  // smallest r with 2^r >= m
  std::vector<Word> checks(r + 1, 0);
  for (int j = 0; j + 1 < m; ++j) {
    const int column = j + 1;  // distinct nonzero r-bit vectors; position m-1 gets 0
    for (int i = 0; i < r; ++i)
      if ((column >> i) & 1) checks[i] |= Word{1} << j;
  }
  checks[r] = (Word{1} << m) - 1;  // overall parity row

  std::vector<Word> basis = kernel_basis(checks, m);
  BinaryCode code;
  code.length = m;
  code.distance_claim = 4;
  code.linear = LinearInfo{std::move(basis), std::move(checks)};
  if (code.linear->basis.size() <= 16) code.words = span_words(code.linear->basis);

  // d >= 4 is exactly "no <= 3 parity-check columns are dependent"; checking
  // that is exhaustive and cheap at any length, unlike the full weight scan.
  std::vector<std::uint32_t> col(m, 0);
  for (int j = 0; j < m; ++j)
    for (std::size_t i = 0; i < code.linear->parity_checks.size(); ++i)
      col[j] |= static_cast<std::uint32_t>((code.linear->parity_checks[i] >> j) & 1) << i;
  for (int a = 0; a < m; ++a) {
    if (col[a] == 0) throw VerificationError("even_d4_linear: weight-1 codeword");
    for (int b = a + 1; b < m; ++b) {
      if (col[a] == col[b]) throw VerificationError("even_d4_linear: weight-2 codeword");
      for (int c = b + 1; c < m; ++c)
        if ((col[a] ^ col[b] ^ col[c]) == 0)
          throw VerificationError("even_d4_linear: weight-3 codeword");
    }
  }
  return code;
}

int verify_min_distance(const BinaryCode& code, std::uint64_t budget) {
  if (code.linear) {
    const auto& basis = code.linear->basis;
    if (basis.empty()) return code.length + 1;  // trivial code {0}: no nonzero word
    if (basis.size() > 40 || (std::uint64_t{1} << basis.size()) > budget)
      throw ResourceError("verify_min_distance: span too large for the weight scan");
    const std::uint64_t total = std::uint64_t{1} << basis.size();
    int best = std::numeric_limits<int>::max();
    Word current = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
      // Gray-code walk over the span: one basis flip per step.
      current ^= basis[std::countr_zero(i)];
      best = std::min(best, std::popcount(current));
    }
    return best;
  }
  if (code.words.size() < 2)
    throw UsageError("verify_min_distance: need at least 2 words or a linear basis");
  const std::size_t pairs = code.words.size() * (code.words.size() - 1) / 2;
  if (pairs > budget) throw ResourceError("verify_min_distance: pair budget exceeded");
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < code.words.size(); ++i)
    for (std::size_t j = i + 1; j < code.words.size(); ++j)
      best = std::min(best, std::popcount(code.words[i] ^ code.words[j]));
  return best;
}

std::uint32_t syndrome(const BinaryCode& code, Word v) {
  if (!code.linear || code.linear->parity_checks.empty())
    throw UsageError("syndrome: code has no parity checks");
  if (code.length < 63 && (v >> code.length) != 0)
    throw UsageError("syndrome: vector longer than the code length");
  return apply_checks(code.linear->parity_checks, v);
}

std::vector<Word> even_weight_subbasis(const std::vector<Word>& basis) {
  std::vector<Word> even, odd;
  for (Word b : basis) (std::popcount(b) % 2 == 0 ? even : odd).push_back(b);
  if (odd.empty()) return basis;
  for (std::size_t i = 1; i < odd.size(); ++i) even.push_back(odd[i] ^ odd[0]);
  return row_reduce(even);
}

}  // namespace gcode
