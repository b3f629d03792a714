#pragma once

// Local model of a double hypersurface {g = 0, u^2 = h} at a point, the
// point taxonomy, and the per-class regularity checks.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rigidcheck/groebner.hpp"
#include "rigidcheck/pencil.hpp"
#include "rigidcheck/poly_json.hpp"
#include "rigidcheck/random.hpp"

namespace rigidcheck {

enum class Mode { Strict, Toy };

inline std::string to_string(Mode m) { return m == Mode::Strict ? "strict" : "toy"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "strict") return Mode::Strict;
  if (s == "toy") return Mode::Toy;
  throw InputError("mode must be 'strict' or 'toy', got '" + s + "'");
}

/// deg g = m, deg h = 2l, m + l = M + 1, in M + 2 weight-one variables.
struct FamilyParams {
  int M = 0;
  int m = 0;
  int l = 0;

  void validate(Mode mode) const {
    if (m < 2 || l < 2) throw InputError("family parameters need m >= 2 and l >= 2");
    if (m + l != M + 1) throw InputError("family parameters need m + l = M + 1");
    const int lo = mode == Mode::Strict ? 10 : 3;
    if (M < lo)
      throw InputError("M = " + std::to_string(M) + " is below the " + to_string(mode) + "-mode minimum " +
                       std::to_string(lo));
    if (M + 2 > static_cast<int>(kMaxVars)) throw InputError("M too large for the monomial representation");
  }
  std::size_t ambient() const { return static_cast<std::size_t>(M + 2); }
  std::size_t local_vars() const { return static_cast<std::size_t>(M + 1); }
};

/// [o' :_l u]; coords are the weight-one part.
struct WeightedPoint {
  Vector coords;
  FieldElem u;
};

enum class PointClass {
  NonSingularOffRam,
  NonSingularOnRam,
  QuadraticOffRam,
  QuadraticOnRamGSmooth,
  QuadraticOnRamGSing,
  BiQuadratic,
  Degenerate,
};

inline std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::NonSingularOffRam: return "NonSingularOffRam";
    case PointClass::NonSingularOnRam: return "NonSingularOnRam";
    case PointClass::QuadraticOffRam: return "QuadraticOffRam";
    case PointClass::QuadraticOnRamGSmooth: return "QuadraticOnRamGSmooth";
    case PointClass::QuadraticOnRamGSing: return "QuadraticOnRamGSing";
    case PointClass::BiQuadratic: return "BiQuadratic";
    case PointClass::Degenerate: return "Degenerate";
  }
  return "?";
}

/// g = q_1 + ... + q_m and h = w_0 + ... + w_{2l} in M + 1 local variables
/// centred at the point; q[0] is kept (zero) so that q[i] has degree i.
struct LocalModel {
  FamilyParams params;
  Field field = Field::rationals();
  std::vector<SparsePoly> q;  // size m + 1
  std::vector<SparsePoly> w;  // size 2l + 1
  std::size_t chart = 0;
  std::optional<WeightedPoint> point;

  const SparsePoly& qi(int i) const { return q.at(static_cast<std::size_t>(i)); }
  const SparsePoly& wj(int j) const { return w.at(static_cast<std::size_t>(j)); }
  FieldElem w0() const { return w[0].is_zero() ? field.zero() : w[0].terms()[0].coeff; }
  std::size_t nvars() const { return params.local_vars(); }

  /// Hand-built model: q lists q_1..q_m, w lists w_0..w_{2l}.
  static LocalModel from_components(const FamilyParams& params, Field field, std::vector<SparsePoly> q,
                                    std::vector<SparsePoly> w) {
    if (q.size() != static_cast<std::size_t>(params.m))
      throw InputError("expected " + std::to_string(params.m) + " components q_1..q_m");
    if (w.size() != static_cast<std::size_t>(2 * params.l + 1))
      throw InputError("expected " + std::to_string(2 * params.l + 1) + " components w_0..w_2l");
    LocalModel lm;
    lm.params = params;
    lm.field = field;
    lm.q.push_back(SparsePoly(field, params.local_vars()));
    for (auto& f : q) lm.q.push_back(std::move(f));
    lm.w = std::move(w);
    lm.validate();
    return lm;
  }

  void validate() const {
    auto check = [&](const SparsePoly& f, std::size_t d, const std::string& name) {
      if (f.field() != field) throw DomainMismatch(name + " lives over a different field");
      if (f.nvars() != nvars()) throw InputError(name + " must have " + std::to_string(nvars()) + " variables");
      if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != static_cast<int>(d)))
        throw InputError(name + " must be homogeneous of degree " + std::to_string(d));
    };
    for (std::size_t i = 0; i < q.size(); ++i) check(q[i], i, "q_" + std::to_string(i));
    for (std::size_t j = 0; j < w.size(); ++j) check(w[j], j, "w_" + std::to_string(j));
    if (!q[0].is_zero()) throw InputError("the point does not lie on g = 0");
  }
};

/// Dehomogenize at the first nonzero coordinate of o', centre at the point
/// and split into homogeneous components.
inline LocalModel local_model(const FamilyParams& params, const SparsePoly& g, const SparsePoly& h,
                              const WeightedPoint& o) {
  const std::size_t n = params.ambient();
  if (g.nvars() != n || h.nvars() != n)
    throw InputError("g and h must have M + 2 = " + std::to_string(n) + " variables");
  if (g.field() != h.field()) throw DomainMismatch("g and h live over different fields");
  const Field field = g.field();
  if (g.is_zero() || !g.is_homogeneous() || g.total_degree() != params.m)
    throw InputError("g must be homogeneous of degree m = " + std::to_string(params.m));
  if (h.is_zero() || !h.is_homogeneous() || h.total_degree() != 2 * params.l)
    throw InputError("h must be homogeneous of degree 2l = " + std::to_string(2 * params.l));
  if (o.coords.size() != n) throw InputError("point must have M + 2 = " + std::to_string(n) + " coordinates");
  for (const auto& c : o.coords)
    if (c.field() != field) throw DomainMismatch("point coordinates live over a different field");
  if (o.u.field() != field) throw DomainMismatch("point u coordinate lives over a different field");

  std::size_t j = n;
  for (std::size_t i = 0; i < n && j == n; ++i)
    if (!o.coords[i].is_zero()) j = i;
  if (j == n) throw InputError("o' = 0: the excluded point lies on no double hypersurface");
  if (!g.evaluate(o.coords).is_zero()) throw InputError("point not on V: g(o') != 0");
  if (!(o.u * o.u == h.evaluate(o.coords))) throw InputError("point not on V: u^2 != h(o')");

  const FieldElem inv = o.coords[j].inverse();
  const std::size_t k = params.local_vars();
  std::vector<SparsePoly> images;
  for (std::size_t i = 0, z = 0; i < n; ++i) {
    if (i == j) {
      images.push_back(SparsePoly::constant(field, k, field.one()));
      continue;
    }
    SparsePoly xi = SparsePoly::variable(field, k, z++);
    FieldElem p = o.coords[i] * inv;
    if (!p.is_zero()) xi += SparsePoly::constant(field, k, p);
    images.push_back(std::move(xi));
  }

  LocalModel lm;
  lm.params = params;
  lm.field = field;
  lm.chart = j;
  lm.point = o;
  lm.q = homogeneous_components(substitute(g, images));
  lm.w = homogeneous_components(substitute(h, images));
  lm.q.resize(static_cast<std::size_t>(params.m) + 1, SparsePoly(field, k));
  lm.w.resize(static_cast<std::size_t>(2 * params.l) + 1, SparsePoly(field, k));
  lm.validate();
  return lm;
}

/// y-coordinate of the point in the chart, u / o'_j^l.
inline FieldElem chart_y(const LocalModel& lm) {
  if (!lm.point) throw InputError("local model has no ambient point");
  FieldElem c = lm.point->coords[lm.chart];
  FieldElem d = lm.field.one();
  for (int i = 0; i < lm.params.l; ++i) d *= c;
  return lm.point->u / d;
}

/// Inverse of local_model at the point (1 : 0 : ... : 0): g and h whose local
/// model in chart 0 is lm. u must satisfy u^2 = w_0.
struct LiftedPair {
  SparsePoly g;
  SparsePoly h;
  WeightedPoint point;
};

inline LiftedPair lift_local_model(const LocalModel& lm, const FieldElem& u) {
  if (!(u * u == lm.w0())) throw InputError("u^2 must equal w_0");
  const std::size_t n = lm.params.ambient();
  std::vector<SparsePoly> images;
  for (std::size_t i = 1; i < n; ++i) images.push_back(SparsePoly::variable(lm.field, n, i));
  auto homogenize = [&](const std::vector<SparsePoly>& comps, int deg) {
    SparsePoly out(lm.field, n);
    for (std::size_t d = 0; d < comps.size(); ++d) {
      if (comps[d].is_zero()) continue;
      SparsePoly x0 = SparsePoly::variable(lm.field, n, 0).pow(static_cast<unsigned>(deg) - static_cast<unsigned>(d));
      out += substitute(comps[d], images) * x0;
    }
    return out;
  };
  LiftedPair out{homogenize(lm.q, lm.params.m), homogenize(lm.w, 2 * lm.params.l), {}};
  out.point.coords.assign(n, lm.field.zero());
  out.point.coords[0] = lm.field.one();
  out.point.u = u;
  return out;
}

/// The scalar with w_1 = lambda q_1, when it exists (q_1 nonzero).
inline std::optional<FieldElem> ramification_lambda(const LocalModel& lm) {
  const SparsePoly& q1 = lm.qi(1);
  const SparsePoly& w1 = lm.wj(1);
  if (q1.is_zero()) return std::nullopt;
  const FieldElem lambda = w1.coefficient(q1.leading_monomial()) / q1.leading_coeff();
  if (w1 == q1.scaled(lambda)) return lambda;
  return std::nullopt;
}

inline PointClass classify_point(const LocalModel& lm) {
  const bool q1 = !lm.qi(1).is_zero(), q2 = !lm.qi(2).is_zero(), w1 = !lm.wj(1).is_zero();
  if (!q1 && !q2) return PointClass::Degenerate;
  if (!lm.w0().is_zero()) return q1 ? PointClass::NonSingularOffRam : PointClass::QuadraticOffRam;
  if (q1) {
    if (ramification_lambda(lm)) return PointClass::QuadraticOnRamGSmooth;
    return PointClass::NonSingularOnRam;
  }
  return w1 ? PointClass::QuadraticOnRamGSing : PointClass::BiQuadratic;
}

// ---- verdicts ----

enum class Outcome { Pass, Fail, NotApplicable, Indeterminate };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::NotApplicable: return "not-applicable";
    case Outcome::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::NotApplicable;
  json witness;  // set on fail
  json details;  // optional context for pass / indeterminate

  static Verdict pass(json details = nullptr) { return {Outcome::Pass, nullptr, std::move(details)}; }
  static Verdict fail(json witness) { return {Outcome::Fail, std::move(witness), nullptr}; }
  static Verdict indeterminate(json details) { return {Outcome::Indeterminate, nullptr, std::move(details)}; }
};

inline const std::array<std::string, 8> kConditionNames = {"R0.1", "R0.2", "R1.1", "R1.2",
                                                           "R2.1", "R2.2", "R2.3", "R2²"};

struct Thresholds {
  std::size_t r21 = 7;
  std::size_t r22 = 6;
  std::size_t r23 = 7;
};

/// Toy mode caps each rank threshold at M - 3.
inline Thresholds thresholds(const FamilyParams& p, Mode mode) {
  Thresholds t;
  if (mode == Mode::Toy) {
    const std::size_t cap = static_cast<std::size_t>(std::max(p.M - 3, 0));
    t.r21 = std::min(t.r21, cap);
    t.r22 = std::min(t.r22, cap);
    t.r23 = std::min(t.r23, cap);
  }
  return t;
}

struct RegularityOptions {
  Mode mode = Mode::Strict;
  std::size_t subspace_dim = 0;  // 0: min(11, M + 2)
  std::size_t trials = 4;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  Budget budget = Budget::from_env();
  int coeff_bound = 5;
  /// Try each R2² trial modulo a large prime first; a pass there certifies a
  /// pass over Q (the singular locus can only grow under reduction).
  bool modular = true;
  std::uint64_t modulus = 2147483647;
};

inline std::size_t default_subspace_dim(const FamilyParams& p) {
  return std::min<std::size_t>(11, p.ambient());
}

struct RegularityReport {
  PointClass cls = PointClass::Degenerate;
  std::vector<std::pair<std::string, Verdict>> checks;
  Outcome overall = Outcome::Pass;
  Mode mode = Mode::Strict;
  std::uint64_t seed = kDefaultSeed;

  const Verdict& at(const std::string& name) const {
    for (const auto& [k, v] : checks)
      if (k == name) return v;
    throw std::out_of_range("unknown condition " + name);
  }
  Verdict& at(const std::string& name) { return const_cast<Verdict&>(std::as_const(*this).at(name)); }
};

/// (R0.1) on q_1..q_m when q_1 != 0, else (R0.2) on q_2..q_m. The returned
/// name tells which one ran. Witness indices are component indices i of q_i.
inline std::pair<std::string, Verdict> check_R0(const LocalModel& lm, const Budget& budget = Budget::from_env()) {
  const bool linear = !lm.qi(1).is_zero();
  const std::string name = linear ? "R0.1" : "R0.2";
  const int start = linear ? 1 : 2;
  if (!linear && lm.qi(2).is_zero())
    return {name, Verdict::fail({{"index", 2}, {"reason", "q_1 and q_2 both vanish"}})};
  std::vector<SparsePoly> seq(lm.q.begin() + start, lm.q.end());
  try {
    auto r = is_regular_sequence(seq, budget);
    if (r.regular) return {name, Verdict::pass()};
    json w = {{"index", static_cast<int>(r.failing_index) + start - 1},
              {"dim", r.dim},
              {"expected_dim", r.expected_dim}};
    if (seq[r.failing_index - 1].is_zero()) w["reason"] = "zero component";
    return {name, Verdict::fail(std::move(w))};
  } catch (const BudgetExceeded& e) {
    return {name, Verdict::indeterminate({{"reason", e.what()}})};
  }
}

inline Verdict check_R1_2(const LocalModel& lm) {
  Matrix K = kernel_of_forms({lm.qi(1), lm.wj(1)}, lm.field, lm.nvars());
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    Vector v;
    for (std::size_t r = 0; r < K.rows(); ++r) v.push_back(K(r, c));
    cols.push_back(std::move(v));
  }
  SparsePoly restricted = restrict_linear(lm.qi(2), LinearSubspace(lm.field, lm.nvars(), cols));
  if (!restricted.is_zero()) return Verdict::pass();
  return Verdict::fail({{"reason", "q_2 vanishes on q_1 = w_1 = 0"}});
}

namespace detail {

inline Verdict rank_verdict(std::size_t rank, std::size_t threshold, json extra = json::object()) {
  extra["rank"] = rank;
  extra["threshold"] = threshold;
  if (rank >= threshold) return Verdict::pass(std::move(extra));
  return Verdict::fail(std::move(extra));
}

inline json upoly_to_json(const UPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.to_string());
  return a;
}

enum class TrialStatus { Pass, Fail, Budget };

struct TrialResult {
  TrialStatus status = TrialStatus::Fail;
  bool y_vanishes = false;
  bool modular = false;
};

}  // namespace detail

inline Verdict check_R2_1(const LocalModel& lm, const Thresholds& t) {
  return detail::rank_verdict(sym_rank(quad_to_sym(lm.qi(2))), t.r21);
}

inline Verdict check_R2_2(const LocalModel& lm, const Thresholds& t) {
  auto lambda = ramification_lambda(lm);
  if (!lambda) throw InputError("R2.2 needs w_1 = lambda q_1");
  SparsePoly form = lm.wj(2) - lm.qi(2).scaled(*lambda);
  return detail::rank_verdict(restrict_rank(form, {lm.qi(1)}), t.r22, {{"lambda", lambda->to_string()}});
}

inline Verdict check_R2_3(const LocalModel& lm, const Thresholds& t) {
  return detail::rank_verdict(restrict_rank(lm.qi(2), {lm.wj(1)}), t.r23);
}

/// Bi-quadratic case: structural obstructions first, then random s-dimensional
/// slices of the (z, y)-space checked for a smooth codimension-2 intersection.
inline Verdict check_R22(const LocalModel& lm, const RegularityOptions& opts) {
  const Field field = lm.field;
  const std::size_t k = lm.nvars(), n = k + 1;
  const std::size_t s = opts.subspace_dim ? opts.subspace_dim : default_subspace_dim(lm.params);
  if (s < 4 || s > default_subspace_dim(lm.params))
    throw InputError("subspace dimension must lie in [4, min(11, M + 2)], got " + std::to_string(s));
  const SparsePoly& q2 = lm.qi(2);
  const SparsePoly& w2 = lm.wj(2);

  if (q2.is_zero()) return Verdict::fail({{"reason", "q_2 vanishes"}});
  const SymMatrix Q2 = quad_to_sym(q2);
  const std::size_t rq = sym_rank(Q2);
  if (rq <= 2) return Verdict::fail({{"reason", "q_2 reducible"}, {"rank", rq}});

  // w_2 - lambda q_2 of rank <= 1 for some lambda in the closure.
  const SymMatrix W2 = quad_to_sym(w2);
  {
    auto factors = pencil_invariant_factors(W2, Q2.scaled(-field.one()));
    std::size_t constant = 0;
    while (constant < factors.size() && factors[constant].degree() == 0) ++constant;
    if (constant <= 1) {
      json w = {{"reason", "pencil member is a square"}, {"rank", constant}};
      if (constant < factors.size()) {
        const UPoly& f = factors[constant];
        if (f.degree() == 1)
          w["lambda"] = (-f.coeffs()[0] / f.coeffs()[1]).to_string();
        else
          w["lambda_minpoly"] = detail::upoly_to_json(f.monic());
      }
      return Verdict::fail(std::move(w));
    }
  }

  // W(lambda) = lambda_1 q_2 + lambda_2 (y^2 - w_2) in the k + 1 variables (z, y).
  const SparsePoly y = SparsePoly::variable(field, n, k);
  const SparsePoly Q = extend_vars(q2, n);
  const SparsePoly F = y * y - extend_vars(w2, n);
  {
    auto pr = pencil_min_rank(quad_to_sym(F), quad_to_sym(Q));
    // Rank <= s - 2 leaves a vertex of projective dimension >= 1 in every
    // slice; it meets the other quadric in singular points of the slice.
    if (pr.min_rank + 2 <= s)
      return Verdict::fail({{"reason", "low pencil rank"}, {"rank", pr.min_rank}, {"threshold", s - 2}});
  }

  std::optional<Field> mod;
  if (field.is_rational() && opts.modular) mod = Field::prime(opts.modulus);

  auto trial = [&](std::size_t index) {
    detail::TrialResult res;
    SplitMix64 rng(derive_seed(opts.seed, index));
    std::vector<Vector> basis;
    while (basis.size() < s) {
      Vector v;
      for (std::size_t i = 0; i < n; ++i) v.push_back(field.from_int(rng.range(-opts.coeff_bound, opts.coeff_bound)));
      basis.push_back(std::move(v));
      if (rank(Matrix::from_rows(field, basis, n)) != basis.size()) basis.pop_back();
    }
    res.y_vanishes = std::all_of(basis.begin(), basis.end(), [&](const Vector& v) { return v[k].is_zero(); });
    LinearSubspace P(field, n, std::move(basis));
    SparsePoly a = restrict_linear(Q, P), b = restrict_linear(F, P);
    try {
      if (mod) {
        SparsePoly ap = change_field(a, *mod), bp = change_field(b, *mod);
        auto rep = smooth_complete_intersection({ap, bp}, opts.budget);
        if (rep.correct_codim && rep.smooth) {
          res.status = detail::TrialStatus::Pass;
          res.modular = true;
          return res;
        }
      }
      auto rep = smooth_complete_intersection({a, b}, opts.budget);
      res.status = rep.correct_codim && rep.smooth ? detail::TrialStatus::Pass : detail::TrialStatus::Fail;
    } catch (const BudgetExceeded&) {
      res.status = detail::TrialStatus::Budget;
    }
    return res;
  };

  // Batches of `jobs` trials; stopping after the first batch with a pass
  // reports the lowest passing index whatever the batch size.
  const std::size_t jobs = std::max(1u, opts.jobs);
  std::vector<detail::TrialResult> results;
  std::optional<std::size_t> passed;
  for (std::size_t lo = 0; lo < opts.trials && !passed; lo += jobs) {
    const std::size_t hi = std::min(opts.trials, lo + jobs);
    results.resize(hi);
    if (hi - lo == 1) {
      results[lo] = trial(lo);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t i = lo; i < hi; ++i) pool.emplace_back([&, i] { results[i] = trial(i); });
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = lo; i < hi && !passed; ++i)
      if (results[i].status == detail::TrialStatus::Pass) passed = i;
  }
  const std::size_t run = passed ? *passed + 1 : results.size();
  std::size_t y_zero = 0, budget_hits = 0;
  for (std::size_t i = 0; i < run; ++i) {
    y_zero += results[i].y_vanishes;
    budget_hits += results[i].status == detail::TrialStatus::Budget;
  }
  json d = {{"subspace_dim", s}, {"trials_run", run}, {"y_vanished_trials", y_zero}};
  if (passed) {
    d["passing_trial"] = *passed;
    d["certified_over"] = results[*passed].modular ? mod->name() : field.name();
    return Verdict::pass(std::move(d));
  }
  d["budget_exceeded_trials"] = budget_hits;
  d["reason"] = "no trial slice was smooth and no structural obstruction was found";
  return Verdict::indeterminate(std::move(d));
}

inline RegularityReport check_point(const LocalModel& lm, const RegularityOptions& opts = {}) {
  lm.params.validate(opts.mode);
  RegularityReport rep;
  rep.mode = opts.mode;
  rep.seed = opts.seed;
  rep.cls = classify_point(lm);
  for (const auto& name : kConditionNames) rep.checks.emplace_back(name, Verdict{});
  const Thresholds t = thresholds(lm.params, opts.mode);

  auto [r0name, r0] = check_R0(lm, opts.budget);
  rep.at(r0name) = std::move(r0);
  switch (rep.cls) {
    case PointClass::NonSingularOffRam: rep.at("R1.1") = Verdict::pass(); break;
    case PointClass::NonSingularOnRam: rep.at("R1.2") = check_R1_2(lm); break;
    case PointClass::QuadraticOffRam: rep.at("R2.1") = check_R2_1(lm, t); break;
    case PointClass::QuadraticOnRamGSmooth: rep.at("R2.2") = check_R2_2(lm, t); break;
    case PointClass::QuadraticOnRamGSing: rep.at("R2.3") = check_R2_3(lm, t); break;
    case PointClass::BiQuadratic:
      try {
        rep.at("R2²") = check_R22(lm, opts);
      } catch (const BudgetExceeded& e) {
        rep.at("R2²") = Verdict::indeterminate({{"reason", e.what()}});
      }
      break;
    case PointClass::Degenerate: break;
  }

  bool fail = rep.cls == PointClass::Degenerate, unknown = false;
  for (const auto& [name, v] : rep.checks) {
    fail |= v.outcome == Outcome::Fail;
    unknown |= v.outcome == Outcome::Indeterminate;
  }
  rep.overall = fail ? Outcome::Fail : unknown ? Outcome::Indeterminate : Outcome::Pass;
  return rep;
}

// ---- JSON ----

inline json to_json(const RegularityReport& r) {
  json checks = json::object();
  for (const auto& [name, v] : r.checks) {
    json c = {{"verdict", to_string(v.outcome)}};
    if (!v.witness.is_null()) c["witness"] = v.witness;
    if (!v.details.is_null()) c["details"] = v.details;
    checks[name] = std::move(c);
  }
  return {{"class", to_string(r.cls)},
          {"checks", std::move(checks)},
          {"overall", r.overall == Outcome::Pass},
          {"verdict", to_string(r.overall)},
          {"mode", to_string(r.mode)},
          {"seed", r.seed},
          {"notes", {"irreducibility of g and h is assumed, not checked"}}};
}

inline json to_json(const LocalModel& lm) {
  json q = json::array(), w = json::array();
  for (std::size_t i = 1; i < lm.q.size(); ++i) q.push_back(poly_to_json(lm.q[i]));
  for (const auto& f : lm.w) w.push_back(poly_to_json(f));
  json out = {{"params", {{"M", lm.params.M}, {"m", lm.params.m}, {"l", lm.params.l}}},
              {"chart", lm.chart},
              {"class", to_string(classify_point(lm))},
              {"q", std::move(q)},
              {"w", std::move(w)}};
  if (auto lambda = ramification_lambda(lm); lambda && lm.w0().is_zero()) out["lambda"] = lambda->to_string();
  return out;
}

/// {"coords": ["..."], "u": "..."}
inline WeightedPoint point_from_json(const json& j, const Field& field) {
  if (!j.is_object()) throw InputError("point: expected an object");
  if (!j.contains("coords") || !j["coords"].is_array()) throw InputError("point.coords: expected an array");
  if (!j.contains("u")) throw InputError("point.u: missing");
  WeightedPoint p{{}, field.zero()};
  for (std::size_t i = 0; i < j["coords"].size(); ++i)
    p.coords.push_back(parse_coeff(field, j["coords"][i], "point.coords[" + std::to_string(i) + "]"));
  p.u = parse_coeff(field, j["u"], "point.u");
  if (p.coords.empty()) throw InputError("point.coords: empty");
  return p;
}

inline json point_to_json(const WeightedPoint& p) {
  json c = json::array();
  for (const auto& x : p.coords) c.push_back(x.to_string());
  return {{"coords", std::move(c)}, {"u", p.u.to_string()}};
}

}  // namespace rigidcheck
