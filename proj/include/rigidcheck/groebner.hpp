#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rigidcheck/poly.hpp"

namespace rigidcheck {

/// Caps for one Groebner computation. Exceeding either throws BudgetExceeded.
struct Budget {
  std::size_t max_basis = 20000;
  std::uint64_t max_reductions = 20'000'000;

  /// RIGIDCHECK_BUDGET, when set to a positive integer, replaces the
  /// reduction cap.
  static Budget from_env() { return from_env(Budget{}); }
  static Budget from_env(Budget base) {
    if (const char* s = std::getenv("RIGIDCHECK_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && *end == '\0' && v > 0) base.max_reductions = v;
    }
    return base;
  }
};

class Ideal {
 public:
  Ideal(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}
  Ideal(Field field, std::size_t nvars, const std::vector<SparsePoly>& gens) : Ideal(field, nvars) {
    for (const auto& g : gens) add(g);
  }

  void add(const SparsePoly& g) {
    if (g.field() != field_) throw DomainMismatch("generator over a different field");
    if (g.nvars() != nvars_) throw InputError("generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(g);
  }

  Field field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<SparsePoly>& gens() const { return gens_; }

 private:
  Field field_;
  std::size_t nvars_;
  std::vector<SparsePoly> gens_;
};

/// Reduced Groebner basis in degrevlex, leading coefficients 1, sorted by
/// decreasing leading monomial.
struct GroebnerBasis {
  Field field = Field::rationals();
  std::size_t nvars = 0;
  std::vector<SparsePoly> basis;
  std::string order = "degrevlex";

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant(); }
};

struct GroebnerStats {
  std::uint64_t reductions = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t pairs_skipped_coprime = 0;
  std::uint64_t pairs_skipped_chain = 0;
};

namespace detail {

/// Over Q: integer coefficients with unit content and positive leading
/// coefficient. Over F_p: monic.
inline SparsePoly normalize(const SparsePoly& f) {
  if (f.is_zero()) return f;
  if (!f.field().is_rational()) return f.scaled(f.leading_coeff().inverse());
  mpz_class den = 1, num = 0;
  for (const auto& t : f.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.rational().get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.rational().get_num_mpz_t());
  }
  if (sgn(f.leading_coeff().rational()) < 0) num = -num;
  if (den == 1 && num == 1) return f;
  return f.scaled(FieldElem(mpq_class(den, num)));
}

inline SparsePoly monic(const SparsePoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.leading_coeff().inverse());
}

/// gcd of numerators of all coefficients (rational, integral polys).
inline void strip_content(std::vector<Term>& a, std::vector<Term>& b) {
  mpz_class g = 0;
  for (const auto* v : {&a, &b})
    for (const auto& t : *v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.rational().get_num_mpz_t());
      if (g == 1) return;
    }
  if (g == 0 || g == 1) return;
  FieldElem inv(mpq_class(mpz_class(1), g));
  for (auto* v : {&a, &b})
    for (auto& t : *v) t.coeff *= inv;
}

/// a*f - b*m*g on term vectors, dropping the cancelled leading term.
inline std::vector<Term> axpy(const FieldElem& a, std::span<const Term> f, const FieldElem& b, const Monomial& m,
                              const std::vector<Term>& g) {
  std::vector<Term> r;
  r.reserve(f.size() + g.size());
  std::size_t i = 1, j = 1;  // leading terms cancel by construction
  const bool a_one = a.is_one();
  Monomial gm;
  if (j < g.size()) gm = g[j].mono * m;
  while (i < f.size() || j < g.size()) {
    int c = i == f.size() ? -1 : j == g.size() ? 1 : degrevlex_compare(f[i].mono, gm);
    if (c > 0) {
      r.push_back({f[i].mono, a_one ? f[i].coeff : a * f[i].coeff});
      ++i;
    } else {
      FieldElem v = -(b * g[j].coeff);
      if (c == 0) {
        v += a_one ? f[i].coeff : a * f[i].coeff;
        ++i;
      }
      if (!v.is_zero()) r.push_back({gm, std::move(v)});
      if (++j < g.size()) gm = g[j].mono * m;
    }
  }
  return r;
}

}  // namespace detail

/// Normal form of f modulo the reducers (full reduction, every term). Over Q
/// the result is correct up to a nonzero scalar, which is all ideal
/// membership and leading-term logic needs.
inline SparsePoly reduce(const SparsePoly& f, const std::vector<const SparsePoly*>& reducers, const Budget& budget,
                         GroebnerStats& stats) {
  const bool rational = f.field().is_rational();
  std::vector<Term> cur = detail::normalize(f).terms();
  std::size_t head = 0;  // cur[0, head) already moved to rem
  std::vector<Term> rem;
  while (head < cur.size()) {
    const Term& lt = cur[head];
    const SparsePoly* div = nullptr;
    for (const auto* g : reducers)
      if (g->leading_monomial().divides(lt.mono)) {
        div = g;
        break;
      }
    if (div == nullptr) {
      rem.push_back(std::move(cur[head++]));
      continue;
    }
    if (++stats.reductions > budget.max_reductions)
      throw BudgetExceeded("Groebner reduction budget of " + std::to_string(budget.max_reductions) + " exceeded");
    const Monomial m = lt.mono / div->leading_monomial();
    std::span<const Term> live(cur.data() + head, cur.size() - head);
    if (rational) {
      const mpq_class& cf = lt.coeff.rational();
      const mpq_class& cg = div->leading_coeff().rational();
      FieldElem a, b;
      if (cf.get_den() == 1 && cg.get_den() == 1) {
        mpz_class d = gcd(cf.get_num(), cg.get_num());
        a = FieldElem(mpq_class(mpz_class(cg.get_num() / d)));
        b = FieldElem(mpq_class(mpz_class(cf.get_num() / d)));
      } else {
        a = div->leading_coeff();
        b = lt.coeff;
      }
      cur = detail::axpy(a, live, b, m, div->terms());
      if (!a.is_one())
        for (auto& t : rem) t.coeff *= a;
      detail::strip_content(cur, rem);
    } else {
      FieldElem b = lt.coeff / div->leading_coeff();
      cur = detail::axpy(f.field().one(), live, b, m, div->terms());
    }
    head = 0;
  }
  return SparsePoly::from_sorted_terms(f.field(), f.nvars(), std::move(rem));
}

inline SparsePoly reduce(const SparsePoly& f, const std::vector<SparsePoly>& basis, const Budget& budget = {}) {
  std::vector<const SparsePoly*> rs;
  for (const auto& g : basis) rs.push_back(&g);
  GroebnerStats stats;
  return reduce(f, rs, budget, stats);
}

inline SparsePoly s_polynomial(const SparsePoly& f, const SparsePoly& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  return f.times_monomial(l / f.leading_monomial(), g.leading_coeff()) -
         g.times_monomial(l / g.leading_monomial(), f.leading_coeff());
}

/// Buchberger's algorithm, normal selection strategy, with the coprime
/// criterion and the chain criterion. The first `known_gb` generators are
/// assumed to already form a Groebner basis; their mutual pairs are skipped.
inline GroebnerBasis groebner(const Ideal& I, const Budget& budget, GroebnerStats& stats, std::size_t known_gb = 0) {
  GroebnerBasis out{I.field(), I.nvars(), {}, "degrevlex"};
  const Field field = I.field();
  std::vector<SparsePoly> G;
  std::vector<bool> active;  // usable as reducer (leading monomial not divisible by a later element's)

  struct PairLess {
    bool operator()(const std::tuple<Monomial, std::size_t, std::size_t>& a,
                    const std::tuple<Monomial, std::size_t, std::size_t>& b) const {
      int c = degrevlex_compare(std::get<0>(a), std::get<0>(b));
      if (c != 0) return c < 0;
      if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
      return std::get<1>(a) < std::get<1>(b);
    }
  };
  std::set<std::tuple<Monomial, std::size_t, std::size_t>, PairLess> queue;
  std::unordered_set<std::uint64_t> pending;
  auto key = [](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  };

  auto unit = [&]() {
    out.basis = {SparsePoly::constant(field, I.nvars(), 1)};
    return out;
  };

  auto reducers = [&]() {
    std::vector<const SparsePoly*> rs;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (active[i]) rs.push_back(&G[i]);
    return rs;
  };

  auto insert = [&](SparsePoly h, bool pairs_known) {
    if (G.size() + 1 > budget.max_basis)
      throw BudgetExceeded("Groebner basis size cap of " + std::to_string(budget.max_basis) + " exceeded");
    const std::size_t n = G.size();
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && h.leading_monomial().divides(G[i].leading_monomial())) active[i] = false;
    G.push_back(std::move(h));
    active.push_back(true);
    if (pairs_known) return;
    for (std::size_t i = 0; i < n; ++i) {
      queue.insert({lcm(G[i].leading_monomial(), G[n].leading_monomial()), i, n});
      pending.insert(key(i, n));
    }
  };

  {
    std::size_t idx = 0;
    for (const auto& g : I.gens()) {
      bool in_prefix = idx++ < known_gb;
      SparsePoly h = in_prefix ? detail::normalize(g) : reduce(g, reducers(), budget, stats);
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      // Members of a known basis need no pairs among themselves.
      insert(detail::normalize(h), in_prefix);
    }
  }

  while (!queue.empty()) {
    auto [l, i, j] = *queue.begin();
    queue.erase(queue.begin());
    pending.erase(key(i, j));
    if (coprime(G[i].leading_monomial(), G[j].leading_monomial())) {
      ++stats.pairs_skipped_coprime;
      continue;
    }
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!G[k].leading_monomial().divides(l)) continue;
      if (!pending.contains(key(i, k)) && !pending.contains(key(j, k))) chain = true;
    }
    if (chain) {
      ++stats.pairs_skipped_chain;
      continue;
    }
    ++stats.pairs_reduced;
    SparsePoly h = reduce(s_polynomial(G[i], G[j]), reducers(), budget, stats);
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit();
    insert(detail::normalize(h), false);
  }

  // Minimal basis, then interreduce tails.
  std::vector<SparsePoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = G[i].leading_monomial();
      const auto& mj = G[j].leading_monomial();
      if (mj.divides(mi) && (!(mj == mi) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [](const SparsePoly& a, const SparsePoly& b) {
    return degrevlex_compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  std::vector<SparsePoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const SparsePoly*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    // Leading term is irreducible by the others, so only the tail changes.
    reduced.push_back(detail::monic(reduce(minimal[i], others, budget, stats)));
  }
  out.basis = std::move(reduced);
  return out;
}

inline GroebnerBasis groebner(const Ideal& I, const Budget& budget = Budget::from_env()) {
  GroebnerStats stats;
  return groebner(I, budget, stats);
}

/// Checks the defining property: every S-polynomial of basis pairs and every
/// input generator reduces to zero.
inline bool verify_groebner(const GroebnerBasis& gb, const Ideal& I, const Budget& budget = Budget::from_env()) {
  for (std::size_t i = 0; i < gb.basis.size(); ++i)
    for (std::size_t j = i + 1; j < gb.basis.size(); ++j)
      if (!reduce(s_polynomial(gb.basis[i], gb.basis[j]), gb.basis, budget).is_zero()) return false;
  for (const auto& g : I.gens())
    if (!reduce(g, gb.basis, budget).is_zero()) return false;
  return true;
}

/// Largest set of variables independent modulo the leading monomials:
/// no leading monomial is supported inside the set.
inline int max_independent_set(const std::vector<std::uint32_t>& supports, std::size_t nvars) {
  int best = -1;
  auto ok = [&](std::uint32_t S) {
    for (auto s : supports)
      if ((s & ~S) == 0) return false;
    return true;
  };
  if (!ok(0)) return -1;
  auto dfs = [&](auto&& self, std::size_t idx, std::uint32_t S, int count) -> void {
    if (count + static_cast<int>(nvars - idx) <= best) return;
    if (idx == nvars) {
      best = count;
      return;
    }
    std::uint32_t with = S | (std::uint32_t{1} << idx);
    if (ok(with)) self(self, idx + 1, with, count + 1);
    self(self, idx + 1, S, count);
  };
  dfs(dfs, 0, 0, 0);
  return best;
}

inline int krull_dim(const GroebnerBasis& gb) {
  if (gb.is_unit()) return -1;
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb.basis) supports.push_back(g.leading_monomial().support());
  return max_independent_set(supports, gb.nvars);
}

inline void require_homogeneous(const Ideal& I) {
  for (const auto& g : I.gens())
    if (!g.is_homogeneous()) throw InputError("generator is not homogeneous: " + g.to_string());
}

/// Dimension of the affine cone V(I); -1 when I is the unit ideal.
inline int krull_dim(const Ideal& I, const Budget& budget = Budget::from_env()) {
  require_homogeneous(I);
  return krull_dim(groebner(I, budget));
}

struct RegularSequenceResult {
  bool regular = true;
  /// 1-based position of the first prefix with too large a zero locus.
  std::size_t failing_index = 0;
  int dim = 0;
  int expected_dim = 0;
};

/// Homogeneous f_1..f_k is regular iff each prefix f_1..f_d cuts a cone of
/// dimension n - d.
inline RegularSequenceResult is_regular_sequence(const std::vector<SparsePoly>& fs,
                                                 const Budget& budget = Budget::from_env()) {
  RegularSequenceResult res;
  if (fs.empty()) return res;
  const Field field = fs[0].field();
  const std::size_t n = fs[0].nvars();
  std::vector<SparsePoly> prefix_basis;
  for (std::size_t d = 1; d <= fs.size(); ++d) {
    const SparsePoly& f = fs[d - 1];
    if (f.nvars() != n) throw InputError("sequence elements live in different rings");
    res.expected_dim = static_cast<int>(n) - static_cast<int>(d);
    if (f.is_zero()) {
      res.regular = false;
      res.failing_index = d;
      res.dim = d == 1 ? static_cast<int>(n) : krull_dim(GroebnerBasis{field, n, prefix_basis});
      return res;
    }
    if (!f.is_homogeneous() || f.total_degree() < 1)
      throw InputError("regular-sequence elements must be homogeneous of positive degree");
    Ideal I(field, n, prefix_basis);
    std::size_t known = I.gens().size();
    I.add(f);
    GroebnerStats stats;
    GroebnerBasis gb = groebner(I, budget, stats, known);
    res.dim = krull_dim(gb);
    if (res.dim != res.expected_dim) {
      res.regular = false;
      res.failing_index = d;
      return res;
    }
    prefix_basis = gb.basis;
  }
  return res;
}

/// The projective zero set is empty: the affine cone is at most the origin.
inline bool projective_empty(const Ideal& I, const Budget& budget = Budget::from_env()) {
  return krull_dim(I, budget) <= 0;
}

/// Determinant of a square polynomial matrix by cofactor expansion.
inline SparsePoly poly_determinant(const std::vector<std::vector<SparsePoly>>& m, Field field, std::size_t nvars) {
  const std::size_t k = m.size();
  if (k == 0) return SparsePoly::constant(field, nvars, 1);
  if (k == 1) return m[0][0];
  if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  SparsePoly det(field, nvars);
  for (std::size_t c = 0; c < k; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<SparsePoly>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<SparsePoly> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    SparsePoly term = m[0][c] * poly_determinant(minor, field, nvars);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// All k x k minors of the k x n Jacobian of fs.
inline std::vector<SparsePoly> jacobian_maximal_minors(const std::vector<SparsePoly>& fs) {
  std::vector<SparsePoly> out;
  if (fs.empty()) return out;
  const std::size_t k = fs.size(), n = fs[0].nvars();
  auto J = jacobian(fs);
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  if (k > n) return out;
  for (;;) {
    std::vector<std::vector<SparsePoly>> sub(k);
    for (std::size_t r = 0; r < k; ++r)
      for (auto c : cols) sub[r].push_back(J[r][c]);
    SparsePoly d = poly_determinant(sub, fs[0].field(), n);
    if (!d.is_zero()) out.push_back(std::move(d));
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t t = i; t < k; ++t) cols[t] = cols[t - 1] + 1;
  }
  return out;
}

struct CompleteIntersectionReport {
  bool correct_codim = false;
  bool smooth = false;
  int dim = 0;
  int singular_dim = 0;  // cone dimension of the Jacobian-augmented ideal
};

/// Codimension k in A^n and emptiness of the projective singular locus
/// (Jacobian criterion with all k x k minors).
inline CompleteIntersectionReport smooth_complete_intersection(const std::vector<SparsePoly>& fs,
                                                               const Budget& budget = Budget::from_env()) {
  CompleteIntersectionReport rep;
  if (fs.empty()) throw InputError("empty system");
  const std::size_t k = fs.size(), n = fs[0].nvars();
  if (k > n) throw InputError("more equations than variables");
  const Field field = fs[0].field();
  Ideal I(field, n, fs);
  rep.dim = krull_dim(I, budget);
  rep.correct_codim = rep.dim == static_cast<int>(n - k);
  for (const auto& m : jacobian_maximal_minors(fs)) I.add(m);
  rep.singular_dim = krull_dim(I, budget);
  rep.smooth = rep.singular_dim <= 0;
  return rep;
}

}  // namespace rigidcheck
