#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rigidcheck/matrix.hpp"
#include "rigidcheck/poly.hpp"

namespace rigidcheck {

/// Symmetric n x n matrix; symmetry is checked on construction.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InputError("symmetric matrix must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i + 1; j < m_.cols(); ++j)
        if (!(m_(i, j) == m_(j, i))) throw InputError("matrix is not symmetric");
  }
  SymMatrix(Field field, std::size_t n) : m_(field, n, n) {}

  std::size_t size() const { return m_.rows(); }
  Field field() const { return m_.field(); }
  const FieldElem& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, const FieldElem& v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix& matrix() const { return m_; }

  /// v^t A v.
  FieldElem quadratic_value(std::span<const FieldElem> v) const {
    FieldElem s = field().zero();
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!m_(i, j).is_zero()) s += v[i] * m_(i, j) * v[j];
    return s;
  }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    SymMatrix c(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) c.m_(i, j) = a(i, j) + b(i, j);
    return c;
  }
  SymMatrix scaled(const FieldElem& s) const {
    SymMatrix c = *this;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) c.m_(i, j) *= s;
    return c;
  }

 private:
  Matrix m_;
};

/// Symmetric matrix of a quadratic form: diagonal entries are the square
/// coefficients, off-diagonal entries half the mixed coefficients.
inline SymMatrix quad_to_sym(const SparsePoly& q) {
  const Field field = q.field();
  const std::size_t n = q.nvars();
  SymMatrix A(field, n);
  const FieldElem half = field.from_int(2).inverse();
  for (const auto& t : q.terms()) {
    if (t.mono.deg != 2) throw InputError("expected a quadratic form, got a term of degree " + std::to_string(t.mono.deg));
    std::size_t i = n, j = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (t.mono.exp[k] == 2) i = j = k;
      if (t.mono.exp[k] == 1) (i == n ? i : j) = k;
    }
    if (i == j)
      A.set(i, i, t.coeff);
    else
      A.set(i, j, t.coeff * half);
  }
  return A;
}

inline SparsePoly sym_to_quad(const SymMatrix& A) {
  const Field field = A.field();
  const std::size_t n = A.size();
  std::vector<Term> ts;
  const FieldElem two = field.from_int(2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (A(i, j).is_zero()) continue;
      Monomial m = Monomial::var(i) * Monomial::var(j);
      ts.push_back({m, i == j ? A(i, j) : A(i, j) * two});
    }
  return SparsePoly::from_terms(field, n, std::move(ts));
}

/// P^t A P.
inline SymMatrix congruence(const SymMatrix& A, const Matrix& P) {
  return SymMatrix(P.transpose() * A.matrix() * P);
}

/// Rank by congruence diagonalization: pivot on the lowest-index nonzero
/// diagonal entry; if the diagonal of the remaining block vanishes, fold a
/// row into another (x_i += x_j) to create one, which needs char != 2.
inline std::size_t sym_rank(const SymMatrix& S) {
  Matrix a = S.matrix();
  const std::size_t n = a.rows();
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (!a(i, i).is_zero()) piv = i;
    if (piv == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;  // remaining block is zero
      // row_i += row_j, col_i += col_j; new a(i,i) = 2 a(i,j).
      for (std::size_t c = k; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = k; r < n; ++r) a(r, pi) += a(r, pj);
      piv = pi;
    }
    if (piv != k) {
      a.swap_rows(piv, k);
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, piv), a(r, k));
    }
    const FieldElem inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const FieldElem f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t r = k; r < n; ++r) a(r, i) -= f * a(r, k);
    }
    ++rank;
  }
  return rank;
}

/// Basis (as columns of an n x (n-k) matrix) of the common kernel of
/// independent linear forms; throws if the forms are dependent.
inline Matrix kernel_of_forms(const std::vector<SparsePoly>& cuts, Field field, std::size_t n) {
  if (cuts.empty()) return Matrix::identity(field, n);
  std::vector<Vector> rows;
  for (const auto& c : cuts) {
    if (c.nvars() != n) throw InputError("cut lives in a different ring");
    rows.push_back(linear_coefficients(c));
  }
  Matrix m = Matrix::from_rows(field, rows, n);
  if (rank(m) != cuts.size()) throw InputError("restriction cuts are linearly dependent");
  auto basis = kernel_basis(m);
  Matrix K(field, n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) K(i, j) = basis[j][i];
  return K;
}

/// Rank of q restricted to the common zero set of the cuts.
inline std::size_t restrict_rank(const SparsePoly& q, const std::vector<SparsePoly>& cuts) {
  SymMatrix A = quad_to_sym(q);
  if (cuts.empty()) return sym_rank(A);
  Matrix K = kernel_of_forms(cuts, q.field(), q.nvars());
  return sym_rank(congruence(A, K));
}

/// Codimension of {rank <= r} in symmetric n x n matrices: (n+1-r)(n-r)/2.
inline long long rank_stratum_codim(long long n, long long r) {
  if (n < 0 || r < 0 || r > n) throw InputError("rank bound out of range");
  return (n + 1 - r) * (n - r) / 2;
}

}  // namespace rigidcheck
