#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "rigidcheck/error.hpp"

namespace rigidcheck {

inline constexpr std::size_t kMaxVars = 32;

/// Dense exponent vector. Slots beyond the ring's variable count stay zero,
/// so comparisons never need to know nvars.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t deg = 0;

  static Monomial one() { return {}; }

  static Monomial from_exponents(std::span<const unsigned> e) {
    if (e.size() > kMaxVars) throw InputError("at most 32 variables are supported");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0xFFFF) throw InputError("exponent too large");
      m.exp[i] = static_cast<std::uint16_t>(e[i]);
      m.deg += e[i];
    }
    return m;
  }

  static Monomial var(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.exp[i] = static_cast<std::uint16_t>(power);
    m.deg = power;
    return m;
  }

  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  /// Bit i set iff variable i occurs.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] != 0) s |= (std::uint32_t{1} << i);
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
    m.deg = a.deg + b.deg;
    return m;
  }

  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    m.deg = a.deg - b.deg;
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      m.exp[i] = std::max(a.exp[i], b.exp[i]);
      m.deg += m.exp[i];
    }
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exp[i] != 0 && b.exp[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg == b.deg && a.exp == b.exp; }
};

/// Graded reverse lexicographic comparison: -1, 0 or +1.
inline int degrevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  }
  return 0;
}

struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_compare(a, b) > 0; }
};

inline std::string to_string(const Monomial& m, std::size_t nvars, const std::string& var = "x") {
  std::string out;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (m.exp[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += var + std::to_string(i);
    if (m.exp[i] > 1) out += '^' + std::to_string(m.exp[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace rigidcheck
