#pragma once

// Finite-field censuses and seeded Monte Carlo estimates of how often each
// regularity condition fails on random data.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rigidcheck/regularity.hpp"
#include "rigidcheck/strata.hpp"

namespace rigidcheck {

struct CensusResult {
  std::string description;
  long long ambient_dim = 0;
  std::uint64_t count = 0;
  std::uint64_t q = 0;
  double implied_dim = 0;    // log_q count; -inf when count = 0
  double implied_codim = 0;  // ambient_dim - implied_dim
};

inline constexpr double kCensusLimit = 1e8;

namespace detail {

/// Rank of a small dense matrix over F_q (q prime, entries in [0, q)).
inline int rank_mod(std::vector<std::uint32_t> a, int n, std::uint32_t q) {
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (a[r * n + c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[rank * n + k]);
    const std::uint64_t inv = inv_mod(a[rank * n + c], q);
    for (int r = rank + 1; r < n; ++r) {
      if (!a[r * n + c]) continue;
      const std::uint64_t f = a[r * n + c] * inv % q;
      for (int k = c; k < n; ++k) a[r * n + k] = static_cast<std::uint32_t>((a[r * n + k] + (q - f) * a[rank * n + k]) % q);
    }
    ++rank;
  }
  return rank;
}

/// Runs body(i) for i in [0, total) split into `jobs` contiguous shards;
/// each shard accumulates privately and shards are summed.
inline std::uint64_t sharded_count(std::uint64_t total, unsigned jobs,
                                   const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& shard) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || total < jobs) return shard(0, total);
  std::vector<std::uint64_t> partial(jobs, 0);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::uint64_t lo = total * j / jobs, hi = total * (j + 1) / jobs;
    pool.emplace_back([&, j, lo, hi] { partial[j] = shard(lo, hi); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t sum = 0;
  for (auto v : partial) sum += v;
  return sum;
}

}  // namespace detail

/// Exact number of symmetric n x n matrices over F_q of rank <= r, by
/// enumerating the upper triangle in lexicographic order.
inline CensusResult count_rank_leq(int n, int r, std::uint64_t q, unsigned jobs = 1) {
  if (n < 1 || r < 0 || r > n) throw InputError("census needs n >= 1 and 0 <= r <= n");
  Field::prime(q);  // validates q
  const int entries = n * (n + 1) / 2;
  const double size = std::pow(static_cast<double>(q), entries);
  if (size > kCensusLimit)
    throw InputError("census too large: q^(n(n+1)/2) = " + std::to_string(size) + " exceeds 1e8");
  std::uint64_t total = 1;
  for (int i = 0; i < entries; ++i) total *= q;

  auto shard = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t count = 0;
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(entries), 0);
    std::uint64_t v = lo;
    for (int i = entries - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v % q);
      v /= q;
    }
    std::vector<std::uint32_t> a(static_cast<std::size_t>(n * n));
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      int k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++k) a[i * n + j] = a[j * n + i] = digits[static_cast<std::size_t>(k)];
      if (detail::rank_mod(a, n, static_cast<std::uint32_t>(q)) <= r) ++count;
      for (int i = entries - 1; i >= 0; --i) {
        if (++digits[static_cast<std::size_t>(i)] < q) break;
        digits[static_cast<std::size_t>(i)] = 0;
      }
    }
    return count;
  };

  CensusResult res;
  res.description = "symmetric " + std::to_string(n) + "x" + std::to_string(n) + " matrices of rank <= " +
                    std::to_string(r) + " over F_" + std::to_string(q);
  res.ambient_dim = entries;
  res.q = q;
  res.count = detail::sharded_count(total, jobs, shard);
  res.implied_dim = res.count ? std::log(static_cast<double>(res.count)) / std::log(static_cast<double>(q))
                              : -std::numeric_limits<double>::infinity();
  res.implied_codim = static_cast<double>(entries) - res.implied_dim;
  return res;
}

struct FractionEstimate {
  std::string condition;
  std::uint64_t failures = 0;
  std::uint64_t samples = 0;
  double fraction = 0;
  double lo = 0;  // Wilson score interval
  double hi = 0;
  double z = 1.96;
  /// q^(-codim) from the stratum count, when the condition has one.
  std::optional<double> heuristic;
};

inline std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) throw InputError("Wilson interval of zero samples");
  const double p = static_cast<double>(k) / static_cast<double>(n), nn = static_cast<double>(n);
  const double denom = 1 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct SampleOptions {
  std::uint64_t q = 32003;
  std::uint64_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  double z = 1.96;
  FamilyParams params{4, 3, 2};
  /// R2.1-rank: matrix size and failing rank bound (defaults M + 1 and the
  /// toy threshold minus one).
  int n = 0;
  int r = -1;
  /// R0-prefix-d: length of the prefix q_1..q_d.
  int d = 2;
  Budget budget = Budget::from_env();
};

namespace detail {

inline FieldElem random_elem(const Field& f, SplitMix64& rng) {
  return f.from_int(static_cast<long long>(rng.below(f.characteristic())));
}

/// Dense random form of degree deg with uniform coefficients.
inline SparsePoly random_form(const Field& f, std::size_t nvars, unsigned deg, SplitMix64& rng) {
  std::vector<Term> ts;
  std::vector<unsigned> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t idx, unsigned left) -> void {
    if (idx + 1 == nvars) {
      e[idx] = left;
      FieldElem c = random_elem(f, rng);
      if (!c.is_zero()) ts.push_back({Monomial::from_exponents(e), c});
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[idx] = k;
      self(self, idx + 1, left - k);
    }
  };
  rec(rec, 0, deg);
  return SparsePoly::from_terms(f, nvars, std::move(ts));
}

inline SymMatrix random_sym(const Field& f, std::size_t n, SplitMix64& rng) {
  SymMatrix A(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) A.set(i, j, random_elem(f, rng));
  return A;
}

/// q_2 lies in the ideal of the linear forms l_1, l_2 (in degree 2): it
/// vanishes on their common kernel.
inline bool quadric_in_linear_ideal(const SparsePoly& q2, const std::vector<SparsePoly>& ls) {
  const Field f = q2.field();
  const std::size_t n = q2.nvars();
  std::vector<Vector> rows;
  for (const auto& l : ls) rows.push_back(linear_coefficients(l));
  Matrix m = Matrix::from_rows(f, rows, n);
  auto ker = kernel_basis(m);
  if (ker.empty()) return true;
  return restrict_linear(q2, LinearSubspace(f, n, ker)).is_zero();
}

/// Random pair (g, h) through a random point of weighted projective space;
/// on_ram forces u = 0.
inline LocalModel random_local_model(const FamilyParams& p, const Field& f, SplitMix64& rng, bool on_ram) {
  const std::size_t n = p.ambient();
  Vector o;
  do {
    o.clear();
    for (std::size_t i = 0; i < n; ++i) o.push_back(random_elem(f, rng));
  } while (std::all_of(o.begin(), o.end(), [](const FieldElem& c) { return c.is_zero(); }));
  std::size_t j = 0;
  while (o[j].is_zero()) ++j;
  SparsePoly g = random_form(f, n, static_cast<unsigned>(p.m), rng);
  SparsePoly xm = SparsePoly::variable(f, n, j).pow(static_cast<unsigned>(p.m));
  g -= xm.scaled(g.evaluate(o) / xm.evaluate(o));
  SparsePoly h = random_form(f, n, static_cast<unsigned>(2 * p.l), rng);
  FieldElem u = on_ram ? f.zero() : random_elem(f, rng);
  SparsePoly x2l = SparsePoly::variable(f, n, j).pow(static_cast<unsigned>(2 * p.l));
  h += x2l.scaled((u * u - h.evaluate(o)) / x2l.evaluate(o));
  return local_model(p, g, h, {o, u});
}

}  // namespace detail

inline const std::vector<std::string> kSampleConditions = {"R0-prefix-d", "R2.1-rank", "R1.2-membership",
                                                           "pencil-square", "genericity"};

/// Fraction of seeded random samples on which the named condition fails.
/// Sample i draws from its own stream derive_seed(seed, i), so the result is
/// independent of the number of workers.
inline FractionEstimate estimate_bad_fraction(const std::string& condition, const SampleOptions& o) {
  if (o.samples == 0) throw InputError("samples must be positive");
  const Field f = Field::prime(o.q);
  const FamilyParams& p = o.params;
  p.validate(Mode::Toy);
  const std::size_t k = p.local_vars();
  const double qd = static_cast<double>(o.q);
  FractionEstimate est;
  est.condition = condition;

  std::function<bool(SplitMix64&, std::uint64_t)> fails;
  if (condition == "R0-prefix-d") {
    if (o.d < 2 || o.d > p.m) throw InputError("R0-prefix-d needs 2 <= d <= m");
    fails = [&](SplitMix64& rng, std::uint64_t) {
      std::vector<SparsePoly> seq;
      for (int i = 1; i <= o.d; ++i) seq.push_back(detail::random_form(f, k, static_cast<unsigned>(i), rng));
      return !is_regular_sequence(seq, o.budget).regular;
    };
  } else if (condition == "R2.1-rank") {
    const int n = o.n ? o.n : static_cast<int>(k);
    const int r = o.r >= 0 ? o.r : std::max(0, static_cast<int>(thresholds(p, Mode::Toy).r21) - 1);
    if (n < 1 || r < 0 || r > n) throw InputError("R2.1-rank needs n >= 1 and 0 <= r <= n");
    est.heuristic = std::pow(qd, -static_cast<double>(rank_stratum_codim(n, r)));
    fails = [&, n, r](SplitMix64& rng, std::uint64_t) {
      return sym_rank(detail::random_sym(f, static_cast<std::size_t>(n), rng)) <= static_cast<std::size_t>(r);
    };
  } else if (condition == "R1.2-membership") {
    est.heuristic = std::pow(qd, -static_cast<double>(binom2(p.M)));
    fails = [&](SplitMix64& rng, std::uint64_t) {
      SparsePoly q1 = detail::random_form(f, k, 1, rng), w1 = detail::random_form(f, k, 1, rng);
      SparsePoly q2 = detail::random_form(f, k, 2, rng);
      return detail::quadric_in_linear_ideal(q2, {q1, w1});
    };
  } else if (condition == "pencil-square") {
    est.heuristic = std::pow(qd, -static_cast<double>(binom2(p.M + 2) - (p.M + 1) - 1));
    fails = [&](SplitMix64& rng, std::uint64_t) {
      SymMatrix Q2 = detail::random_sym(f, k, rng), W2 = detail::random_sym(f, k, rng);
      auto factors = pencil_invariant_factors(W2, Q2.scaled(-f.one()));
      std::size_t constant = 0;
      while (constant < factors.size() && factors[constant].degree() == 0) ++constant;
      return constant <= 1;
    };
  } else if (condition == "genericity") {
    // Even samples off the ramification divisor, odd samples on it.
    fails = [&](SplitMix64& rng, std::uint64_t i) {
      LocalModel lm = detail::random_local_model(p, f, rng, i % 2 == 1);
      RegularityOptions ro;
      ro.mode = Mode::Toy;
      ro.seed = rng.next();
      ro.trials = 2;
      ro.budget = o.budget;
      return check_point(lm, ro).overall != Outcome::Pass;
    };
  } else {
    throw InputError("unknown condition '" + condition + "'");
  }

  auto shard = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t i = lo; i < hi; ++i) {
      SplitMix64 rng(derive_seed(o.seed, i));
      c += fails(rng, i);
    }
    return c;
  };
  est.samples = o.samples;
  est.failures = detail::sharded_count(o.samples, o.jobs, shard);
  est.fraction = static_cast<double>(est.failures) / static_cast<double>(est.samples);
  est.z = o.z;
  std::tie(est.lo, est.hi) = wilson_interval(est.failures, est.samples, o.z);
  return est;
}

inline json to_json(const CensusResult& c) {
  json j = {{"description", c.description}, {"ambient_dim", c.ambient_dim}, {"count", c.count}, {"q", c.q}};
  if (c.count) {
    j["implied_dim"] = c.implied_dim;
    j["implied_codim"] = c.implied_codim;
  } else {
    j["implied_dim"] = nullptr;
    j["implied_codim"] = nullptr;
  }
  return j;
}

inline json to_json(const FractionEstimate& e) {
  json j = {{"condition", e.condition}, {"failures", e.failures}, {"samples", e.samples}, {"fraction", e.fraction},
            {"wilson", {{"lo", e.lo}, {"hi", e.hi}, {"z", e.z}}}};
  j["heuristic"] = e.heuristic ? json(*e.heuristic) : json(nullptr);
  return j;
}

}  // namespace rigidcheck
