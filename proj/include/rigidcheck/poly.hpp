#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rigidcheck/field.hpp"
#include "rigidcheck/matrix.hpp"
#include "rigidcheck/monomial.hpp"

namespace rigidcheck {

struct Term {
  Monomial mono;
  FieldElem coeff;
};

/// Sparse multivariate polynomial. Terms are kept strictly decreasing in
/// degrevlex with no zero coefficients; the zero polynomial has no terms.
class SparsePoly {
 public:
  SparsePoly() : SparsePoly(Field::rationals(), 0) {}
  SparsePoly(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {
    if (nvars > kMaxVars) throw InputError("at most 32 variables are supported");
  }

  static SparsePoly constant(Field field, std::size_t nvars, const FieldElem& c) {
    SparsePoly p(field, nvars);
    if (!c.is_zero()) p.terms_.push_back({Monomial::one(), c});
    return p;
  }
  static SparsePoly constant(Field field, std::size_t nvars, long long c) {
    return constant(field, nvars, field.from_int(c));
  }

  static SparsePoly variable(Field field, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw InputError("variable index out of range");
    SparsePoly p(field, nvars);
    p.terms_.push_back({Monomial::var(i), field.one()});
    return p;
  }

  static SparsePoly monomial(Field field, std::size_t nvars, const Monomial& m, const FieldElem& c) {
    SparsePoly p(field, nvars);
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }

  /// Combines like terms and drops zeros; terms may come in any order.
  static SparsePoly from_terms(Field field, std::size_t nvars, std::vector<Term> terms) {
    SparsePoly p(field, nvars);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return degrevlex_compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    return p;
  }

  /// Trusts the caller: terms strictly decreasing, nonzero.
  static SparsePoly from_sorted_terms(Field field, std::size_t nvars, std::vector<Term> terms) {
    SparsePoly p(field, nvars);
    p.terms_ = std::move(terms);
    return p;
  }

  Field field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const FieldElem& leading_coeff() const { return terms_.front().coeff; }

  /// -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.deg); }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.deg != terms_.front().mono.deg) return false;
    return true;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.deg == 0); }

  FieldElem coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return field_.zero();
  }

  FieldElem evaluate(std::span<const FieldElem> point) const {
    if (point.size() != nvars_) throw InputError("evaluation point has wrong dimension");
    FieldElem sum = field_.zero();
    for (const auto& t : terms_) {
      FieldElem v = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < t.mono.exp[i]; ++k) v *= point[i];
      sum += v;
    }
    return sum;
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return combine(a, b, false); }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return combine(a, b, true); }
  SparsePoly& operator+=(const SparsePoly& b) { return *this = *this + b; }
  SparsePoly& operator-=(const SparsePoly& b) { return *this = *this - b; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    check_compatible(a, b);
    std::vector<Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) prods.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return from_terms(a.field_, a.nvars_, std::move(prods));
  }
  SparsePoly& operator*=(const SparsePoly& b) { return *this = *this * b; }

  SparsePoly scaled(const FieldElem& c) const {
    if (c.is_zero()) return SparsePoly(field_, nvars_);
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  SparsePoly times_monomial(const Monomial& m, const FieldElem& c) const {
    if (c.is_zero()) return SparsePoly(field_, nvars_);
    SparsePoly r = *this;
    for (auto& t : r.terms_) {
      t.mono = t.mono * m;
      t.coeff *= c;
    }
    return r;
  }

  SparsePoly pow(unsigned k) const {
    SparsePoly r = constant(field_, nvars_, 1);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.field_ != b.field_ || a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  std::string to_string(const std::string& var = "x") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      std::string c = t.coeff.to_string();
      bool neg = t.coeff.is_rational() && sgn(t.coeff.rational()) < 0;
      if (neg) c = c.substr(1);
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string m = rigidcheck::to_string(t.mono, nvars_, var);
      if (t.mono.deg == 0)
        out += c;
      else if (c == "1")
        out += m;
      else
        out += c + "*" + m;
    }
    return out;
  }

 private:
  static void check_compatible(const SparsePoly& a, const SparsePoly& b) {
    if (a.field_ != b.field_) throw DomainMismatch("polynomials over different fields");
    if (a.nvars_ != b.nvars_) throw InputError("polynomials in different numbers of variables");
  }

  static SparsePoly combine(const SparsePoly& a, const SparsePoly& b, bool subtract) {
    check_compatible(a, b);
    SparsePoly r(a.field_, a.nvars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c = i == a.terms_.size()   ? -1
              : j == b.terms_.size() ? 1
                                     : degrevlex_compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({b.terms_[j].mono, subtract ? -b.terms_[j].coeff : b.terms_[j].coeff});
        ++j;
      } else {
        FieldElem s = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Field field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Component d holds exactly the degree-d terms; trailing zero components are
/// omitted, so the zero polynomial yields an empty list.
inline std::vector<SparsePoly> homogeneous_components(const SparsePoly& f) {
  std::vector<SparsePoly> out;
  if (f.is_zero()) return out;
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(f.total_degree()) + 1);
  for (const auto& t : f.terms()) buckets[t.mono.deg].push_back(t);
  for (auto& b : buckets) out.push_back(SparsePoly::from_sorted_terms(f.field(), f.nvars(), std::move(b)));
  return out;
}

/// Replaces variable i by images[i]; all images share a target ring.
inline SparsePoly substitute(const SparsePoly& f, const std::vector<SparsePoly>& images) {
  if (images.size() != f.nvars()) throw InputError("substitution arity does not match nvars");
  if (images.empty()) return f;
  const Field field = images[0].field();
  const std::size_t target = images[0].nvars();
  std::vector<std::vector<SparsePoly>> powers(images.size());
  auto power = [&](std::size_t i, unsigned k) -> const SparsePoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(SparsePoly::constant(field, target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    SparsePoly v = SparsePoly::constant(field, target, t.coeff);
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (t.mono.exp[i] != 0) v *= power(i, t.mono.exp[i]);
    acc.insert(acc.end(), v.terms().begin(), v.terms().end());
  }
  return SparsePoly::from_terms(field, target, std::move(acc));
}

/// f(z + p).
inline SparsePoly shift_to_point(const SparsePoly& f, std::span<const FieldElem> p) {
  if (p.size() != f.nvars()) throw InputError("shift point has wrong dimension");
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < f.nvars(); ++i)
    images.push_back(SparsePoly::variable(f.field(), f.nvars(), i) + SparsePoly::constant(f.field(), f.nvars(), p[i]));
  return substitute(f, images);
}

/// Embeds f into a ring with more variables (new variables appended).
inline SparsePoly extend_vars(const SparsePoly& f, std::size_t nvars) {
  if (nvars < f.nvars()) throw InputError("cannot shrink variable count");
  return SparsePoly::from_sorted_terms(f.field(), nvars, f.terms());
}

/// Linear subspace of K^n given by s linearly independent basis vectors.
class LinearSubspace {
 public:
  LinearSubspace(Field field, std::size_t ambient, std::vector<Vector> basis)
      : field_(field), ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.size() > ambient_) throw InputError("subspace has more basis vectors than the ambient dimension");
    if (!basis_.empty() && rank(Matrix::from_rows(field_, basis_, ambient_)) != basis_.size())
      throw InputError("subspace basis vectors are linearly dependent");
  }

  static LinearSubspace full(Field field, std::size_t n) {
    std::vector<Vector> b;
    for (std::size_t i = 0; i < n; ++i) {
      Vector v(n, field.zero());
      v[i] = field.one();
      b.push_back(std::move(v));
    }
    return LinearSubspace(field, n, std::move(b));
  }

  Field field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }

  /// Sum_j t_j b_j.
  Vector point(std::span<const FieldElem> t) const {
    Vector x(ambient_, field_.zero());
    for (std::size_t j = 0; j < basis_.size(); ++j)
      for (std::size_t i = 0; i < ambient_; ++i) x[i] += t[j] * basis_[j][i];
    return x;
  }

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<Vector> basis_;
};

/// g(t_1..t_s) = f(sum_j t_j b_j).
inline SparsePoly restrict_linear(const SparsePoly& f, const LinearSubspace& P) {
  if (P.ambient() != f.nvars()) throw InputError("subspace ambient dimension does not match nvars");
  if (P.field() != f.field()) throw DomainMismatch("subspace and polynomial over different fields");
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    std::vector<Term> ts;
    for (std::size_t j = 0; j < P.dim(); ++j)
      if (!P.basis()[j][i].is_zero()) ts.push_back({Monomial::var(j), P.basis()[j][i]});
    images.push_back(SparsePoly::from_terms(f.field(), P.dim(), std::move(ts)));
  }
  if (images.empty()) return f;
  return substitute(f, images);
}

inline SparsePoly derivative(const SparsePoly& f, std::size_t j) {
  if (j >= f.nvars()) throw InputError("derivative variable out of range");
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    if (t.mono.exp[j] == 0) continue;
    Monomial m = t.mono;
    FieldElem c = t.coeff * f.field().from_int(m.exp[j]);
    --m.exp[j];
    --m.deg;
    if (!c.is_zero()) ts.push_back({m, std::move(c)});
  }
  // Dividing by x_j is order-preserving, so the surviving terms stay sorted.
  return SparsePoly::from_sorted_terms(f.field(), f.nvars(), std::move(ts));
}

/// Entry (i, j) is d f_i / d x_j.
inline std::vector<std::vector<SparsePoly>> jacobian(const std::vector<SparsePoly>& fs) {
  std::vector<std::vector<SparsePoly>> J;
  if (fs.empty()) return J;
  const std::size_t n = fs[0].nvars();
  for (const auto& f : fs) {
    if (f.nvars() != n) throw InputError("jacobian of polynomials in different rings");
    std::vector<SparsePoly> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(derivative(f, j));
    J.push_back(std::move(row));
  }
  return J;
}

/// Coefficient vector of a linear form (homogeneous of degree 1 or zero).
inline Vector linear_coefficients(const SparsePoly& f) {
  Vector v(f.nvars(), f.field().zero());
  for (const auto& t : f.terms()) {
    if (t.mono.deg != 1) throw InputError("expected a linear form, got " + f.to_string());
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (t.mono.exp[i] == 1) v[i] = t.coeff;
  }
  return v;
}

inline SparsePoly linear_form(Field field, const Vector& coeffs) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) ts.push_back({Monomial::var(i), coeffs[i]});
  return SparsePoly::from_terms(field, coeffs.size(), std::move(ts));
}

inline bool linearly_independent(const std::vector<SparsePoly>& forms) {
  if (forms.empty()) return true;
  std::vector<Vector> rows;
  for (const auto& f : forms) rows.push_back(linear_coefficients(f));
  return rank(Matrix::from_rows(forms[0].field(), rows, forms[0].nvars())) == forms.size();
}

/// Maps every coefficient into another field (Q -> F_p reduction, or identity).
inline SparsePoly change_field(const SparsePoly& f, Field target) {
  if (f.field() == target) return f;
  if (!f.field().is_rational()) throw DomainMismatch("can only reduce rational polynomials");
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    FieldElem c = target.from_rational(t.coeff.rational());
    if (!c.is_zero()) ts.push_back({t.mono, std::move(c)});
  }
  return SparsePoly::from_sorted_terms(target, f.nvars(), std::move(ts));
}

}  // namespace rigidcheck
