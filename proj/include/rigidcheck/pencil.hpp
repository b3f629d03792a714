#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rigidcheck/linalg.hpp"

namespace rigidcheck {

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
class UPoly {
 public:
  explicit UPoly(Field field) : field_(field) {}
  UPoly(Field field, std::vector<FieldElem> c) : field_(field), c_(std::move(c)) { trim(); }

  Field field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const FieldElem& lead() const { return c_.back(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(a.field_, std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(a.field_, std::move(c));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
    std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(a.field_, std::move(c));
  }

  /// (quotient, remainder); b must be nonzero.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    UPoly r = a;
    std::vector<FieldElem> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, a.field_.zero());
    const FieldElem inv = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      FieldElem f = r.lead() * inv;
      for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= f * b.c_[i];
      q[shift] = f;
      r.trim();
    }
    return {UPoly(a.field_, std::move(q)), std::move(r)};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    FieldElem inv = lead().inverse();
    for (auto& x : r.c_) x *= inv;
    return r;
  }

  FieldElem evaluate(const FieldElem& x) const {
    FieldElem v = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  friend UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field field_;
  std::vector<FieldElem> c_;
};

namespace detail {

inline std::vector<UPoly> smith_from_diagonal(std::vector<UPoly> diag) {
  // diag(a, b) is equivalent to diag(gcd, lcm) over a PID.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      UPoly g = gcd(diag[i], diag[j]);
      UPoly l = divmod(diag[i] * diag[j], g).first.monic();
      diag[i] = std::move(g);
      diag[j] = std::move(l);
    }
  return diag;
}

}  // namespace detail

/// Invariant factors (monic, each dividing the next) of the pencil A + t B
/// over K[t]; there are as many as the generic rank. Euclidean elimination
/// with unimodular row and column operations.
inline std::vector<UPoly> pencil_invariant_factors(const SymMatrix& A, const SymMatrix& B) {
  const Field field = A.field();
  const std::size_t n = A.size();
  std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n, UPoly(field)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = UPoly(field, {A(i, j), B(i, j)});

  std::vector<UPoly> diag;
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      std::size_t pi = n, pj = n;
      int best = -1;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!m[i][j].is_zero() && (best < 0 || m[i][j].degree() < best)) {
            best = m[i][j].degree();
            pi = i;
            pj = j;
          }
      if (pi == n) return detail::smith_from_diagonal(std::move(diag));
      std::swap(m[k], m[pi]);
      for (std::size_t r = 0; r < n; ++r) std::swap(m[r][k], m[r][pj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m[i][k].is_zero()) continue;
        UPoly q = divmod(m[i][k], m[k][k]).first;
        for (std::size_t j = k; j < n; ++j) m[i][j] = m[i][j] - q * m[k][j];
        if (!m[i][k].is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m[k][j].is_zero()) continue;
        UPoly q = divmod(m[k][j], m[k][k]).first;
        for (std::size_t i = k; i < n; ++i) m[i][j] = m[i][j] - q * m[i][k];
        if (!m[k][j].is_zero()) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(m[k][k].monic());
  }
  return detail::smith_from_diagonal(std::move(diag));
}

/// Minimal rank of a*A + b*B over (a : b) in P^1 of the algebraic closure.
struct PencilRank {
  std::size_t min_rank = 0;
  std::size_t generic_rank = 0;
  /// The minimum is attained at the member B (a = 0).
  bool attained_at_B = false;
  /// Members A + tB of minimal rank are the roots of this factor (constant
  /// when the minimum is only attained at B or equals the generic rank).
  std::optional<UPoly> root_factor;
};

inline PencilRank pencil_min_rank(const SymMatrix& A, const SymMatrix& B) {
  PencilRank out;
  auto factors = pencil_invariant_factors(A, B);
  out.generic_rank = factors.size();
  std::size_t constant = 0;
  while (constant < factors.size() && factors[constant].degree() == 0) ++constant;
  out.min_rank = constant;
  if (constant < factors.size()) out.root_factor = factors[constant];
  std::size_t rb = sym_rank(B);
  if (rb < out.min_rank) {
    out.min_rank = rb;
    out.attained_at_B = true;
    out.root_factor.reset();
  }
  return out;
}

}  // namespace rigidcheck
