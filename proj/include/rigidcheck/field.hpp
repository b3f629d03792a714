#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "rigidcheck/error.hpp"

namespace rigidcheck {

/// Residue class modulo an odd prime, always kept in [0, modulus).
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

class FieldElem;

/// Coefficient field: the rationals or a prime field F_p with p odd.
class Field {
 public:
  static Field rationals() { return Field(0); }

  /// Characteristic 2 is rejected: symmetric-matrix arguments need 1/2.
  static Field prime(std::uint64_t p) {
    if (p == 2) throw InputError("characteristic 2 is not supported");
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw InputError("field modulus must be an odd prime below 2^31, got " + std::to_string(p));
    return Field(p);
  }

  bool is_rational() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long long v) const;
  FieldElem from_mpz(const mpz_class& v) const;
  FieldElem from_rational(const mpq_class& v) const;
  /// Accepts "17", "-3", "5/6".
  FieldElem parse(std::string_view text) const;

  std::string name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class FieldElem;
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

namespace detail {

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

inline std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_ui();
}

}  // namespace detail

/// Exact field element: an mpq rational or a residue modulo p.
class FieldElem {
 public:
  FieldElem() : v_(mpq_class(0)) {}
  explicit FieldElem(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
  explicit FieldElem(Residue r) : v_(r) {}

  Field field() const {
    if (auto* r = std::get_if<Residue>(&v_)) return Field(r->modulus);
    return Field::rationals();
  }
  bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }

  bool is_zero() const {
    if (auto* r = std::get_if<Residue>(&v_)) return r->value == 0;
    return sgn(std::get<mpq_class>(v_)) == 0;
  }
  bool is_one() const {
    if (auto* r = std::get_if<Residue>(&v_)) return r->value == 1;
    return std::get<mpq_class>(v_) == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  const Residue& residue() const { return std::get<Residue>(v_); }

  FieldElem& operator+=(const FieldElem& o) {
    if (auto* r = std::get_if<Residue>(&v_)) {
      const Residue& s = o.checked_residue(r->modulus);
      r->value += s.value;
      if (r->value >= r->modulus) r->value -= r->modulus;
    } else {
      std::get<mpq_class>(v_) += o.checked_rational();
    }
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    if (auto* r = std::get_if<Residue>(&v_)) {
      const Residue& s = o.checked_residue(r->modulus);
      r->value = r->value >= s.value ? r->value - s.value : r->value + r->modulus - s.value;
    } else {
      std::get<mpq_class>(v_) -= o.checked_rational();
    }
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    if (auto* r = std::get_if<Residue>(&v_)) {
      const Residue& s = o.checked_residue(r->modulus);
      r->value = (r->value * s.value) % r->modulus;
    } else {
      std::get<mpq_class>(v_) *= o.checked_rational();
    }
    return *this;
  }
  FieldElem& operator/=(const FieldElem& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in field");
    return *this *= o.inverse();
  }

  FieldElem inverse() const {
    if (is_zero()) throw std::domain_error("zero has no inverse");
    if (auto* r = std::get_if<Residue>(&v_))
      return FieldElem(Residue{detail::inv_mod(r->value, r->modulus), r->modulus});
    mpq_class q = 1 / std::get<mpq_class>(v_);
    return FieldElem(std::move(q));
  }

  FieldElem operator-() const {
    if (auto* r = std::get_if<Residue>(&v_))
      return FieldElem(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
    return FieldElem(mpq_class(-std::get<mpq_class>(v_)));
  }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (auto* r = std::get_if<Residue>(&a.v_)) return *r == std::get<Residue>(b.v_);
    return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
  }

  /// "a" or "a/b" for rationals, the canonical representative for residues.
  std::string to_string() const {
    if (auto* r = std::get_if<Residue>(&v_)) return std::to_string(r->value);
    return std::get<mpq_class>(v_).get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElem& e) { return os << e.to_string(); }

 private:
  const Residue& checked_residue(std::uint64_t modulus) const {
    auto* s = std::get_if<Residue>(&v_);
    if (s == nullptr || s->modulus != modulus)
      throw DomainMismatch("arithmetic mixes coefficient fields");
    return *s;
  }
  const mpq_class& checked_rational() const {
    auto* q = std::get_if<mpq_class>(&v_);
    if (q == nullptr) throw DomainMismatch("arithmetic mixes coefficient fields");
    return *q;
  }

  std::variant<mpq_class, Residue> v_;
};

inline FieldElem Field::zero() const { return from_int(0); }
inline FieldElem Field::one() const { return from_int(1); }

inline FieldElem Field::from_int(long long v) const {
  if (is_rational()) return FieldElem(mpq_class(static_cast<long>(v)));
  long long m = static_cast<long long>(p_);
  long long r = v % m;
  if (r < 0) r += m;
  return FieldElem(Residue{static_cast<std::uint64_t>(r), p_});
}

inline FieldElem Field::from_mpz(const mpz_class& v) const {
  if (is_rational()) return FieldElem(mpq_class(v));
  return FieldElem(Residue{detail::reduce_mpz(v, p_), p_});
}

inline FieldElem Field::from_rational(const mpq_class& v) const {
  if (is_rational()) return FieldElem(v);
  std::uint64_t den = detail::reduce_mpz(v.get_den(), p_);
  if (den == 0) throw InputError("denominator vanishes modulo " + std::to_string(p_));
  std::uint64_t num = detail::reduce_mpz(v.get_num(), p_);
  return FieldElem(Residue{(num * detail::inv_mod(den, p_)) % p_, p_});
}

inline FieldElem Field::parse(std::string_view text) const {
  std::string s(text);
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || (slash != std::string::npos && den[0] == '-'))
    throw InputError("malformed coefficient '" + s + "'");
  mpq_class q(mpz_class(strip_plus(num)), mpz_class(strip_plus(den)));
  if (q.get_den() == 0) throw InputError("zero denominator in coefficient '" + s + "'");
  q.canonicalize();
  return from_rational(q);
}

}  // namespace rigidcheck
