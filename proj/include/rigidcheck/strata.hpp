#pragma once

// Closed-form codimension bounds for the bad loci of each regularity
// condition, their aggregation into a bound on the non-regular locus, and a
// comparison against xi(M).

#include <algorithm>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rigidcheck/error.hpp"

namespace rigidcheck {

/// Keeps every quadratic expression in M inside 64 bits.
inline constexpr long long kMaxM = 1'000'000'000;

inline long long binom2(long long n) { return n * (n - 1) / 2; }

/// (M-9)(M-8)/2 + 12.
inline long long xi(long long M) {
  if (M < 9) throw InputError("xi(M) needs M >= 9");
  if (M > kMaxM) throw InputError("M too large");
  return (M - 9) * (M - 8) / 2 + 12;
}

struct CodimEntry {
  std::string name;
  std::string formula;
  long long value = 0;
};

struct CodimTable {
  long long M = 0;
  /// Points off the ramification divisor (u != 0).
  std::vector<CodimEntry> off_ram;
  /// Points on the ramification divisor (u = 0).
  std::vector<CodimEntry> on_ram;
  /// binom(M+1, d) for 2 <= d <= m: the prefix where q_1..q_d stops being
  /// regular. Only filled when m is given.
  std::vector<std::pair<long long, mpz_class>> prefix_bounds;
  long long boundA = 0;
  long long boundB = 0;
  long long theorem2 = 0;
  long long xi = 0;
};

/// Per-condition entries only; the prefix bounds need the degree m of g.
inline CodimTable condition_codims(long long M, long long m = 0) {
  if (M < 10) throw InputError("codimension table needs M >= 10");
  if (M > kMaxM) throw InputError("M too large");
  if (m != 0 && (m < 2 || m > M - 1)) throw InputError("m must lie in [2, M - 1]");
  CodimTable t;
  t.M = M;
  t.off_ram = {
      {"R0.1", "binom(M+1,2)", binom2(M + 1)},
      {"R0.2", "binom(M+2,2)", binom2(M + 2)},
      {"R2.1", "(M-4)(M-3)/2+5", (M - 4) * (M - 3) / 2 + 5},
  };
  t.on_ram = {
      {"R0.1", "binom(M+1,2)", binom2(M + 1)},
      {"R0.2", "binom(M+2,2)", binom2(M + 2)},
      {"R1.2", "binom(M,2)", binom2(M)},
      {"R2.2", "(M-4)(M-3)/2+4", (M - 4) * (M - 3) / 2 + 4},
      {"R2.3", "(M-5)(M-4)/2+6", (M - 5) * (M - 4) / 2 + 6},
      {"R2²-reducible", "binom(M+2,2)", binom2(M + 2)},
      {"R2²-square", "(M+4)(M+1)/2-1", (M + 4) * (M + 1) / 2 - 1},
      {"R2²-rank-pencil", "(M-9)(M-6)/2+20", (M - 9) * (M - 6) / 2 + 20},
      {"R2²-rank-cone", "(M-8)(M-5)/2+17", (M - 8) * (M - 5) / 2 + 17},
  };
  for (long long d = 2; d <= m; ++d) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(M + 1), static_cast<unsigned long>(d));
    t.prefix_bounds.emplace_back(d, b);
  }
  t.xi = xi(M);
  return t;
}

namespace detail {
inline long long min_entry(const std::vector<CodimEntry>& v) {
  return std::min_element(v.begin(), v.end(), [](const CodimEntry& a, const CodimEntry& b) {
           return a.value < b.value;
         })->value;
}
}  // namespace detail

/// Fills the aggregates: off-ram minimum minus M, on-ram minimum minus
/// (M - 1), and the smaller of the two.
inline CodimTable codim_table(long long M, long long m = 0) {
  CodimTable t = condition_codims(M, m);
  t.boundA = detail::min_entry(t.off_ram) - M;
  t.boundB = detail::min_entry(t.on_ram) - (M - 1);
  t.theorem2 = std::min(t.boundA, t.boundB);
  return t;
}

inline long long theorem2_bound(long long M) { return codim_table(M).theorem2; }

struct CrossCheckRow {
  long long M = 0;
  long long bound = 0;
  long long xi = 0;
  bool equal = false;
};

inline std::vector<CrossCheckRow> cross_check(long long lo, long long hi) {
  if (lo < 10 || lo > hi) throw InputError("cross-check range must satisfy 10 <= M_lo <= M_hi");
  std::vector<CrossCheckRow> rows;
  for (long long M = lo; M <= hi; ++M) {
    long long b = theorem2_bound(M), x = xi(M);
    rows.push_back({M, b, x, b == x});
  }
  return rows;
}

}  // namespace rigidcheck
