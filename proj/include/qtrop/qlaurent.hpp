#pragma once

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrop/numeric.hpp"

namespace qtrop {

struct NotDivisible : std::runtime_error {
  explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

// Laurent polynomial in q with rational exponents and rational coefficients.
// Canonical form: no zero coefficient is stored.
class QLaurent {
 public:
  QLaurent() = default;
  QLaurent(int c) { add_term(Rat(0), Rat(c)); }                 // NOLINT(runtime/explicit)
  QLaurent(const Rat& c) { add_term(Rat(0), c); }               // NOLINT(runtime/explicit)

  static QLaurent monomial(const Rat& coeff, const Rat& exponent) {
    QLaurent p;
    p.add_term(exponent, coeff);
    return p;
  }

  const std::map<Rat, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Rat coeff(const Rat& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Rat& exponent, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QLaurent operator-() const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  QLaurent& operator+=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QLaurent& operator-=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }

  friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

  QLaurent scaled(const Rat& c) const {
    QLaurent r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
  }

  friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const QLaurent& a, const QLaurent& b) { return !(a == b); }

  Rat eval_at_one() const {
    Rat s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  // Substitution q -> q^{-1}.
  QLaurent inverted_q() const {
    QLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  bool symmetric_under_q_inverse() const { return *this == inverted_q(); }

  // Ascending exponents, each term "c*q^(e)".
  std::string text() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << rat_to_string(c) << "*q^(" << rat_to_string(e) << ")";
    }
    return os.str();
  }

  // Canonical form: ascending exponent; entries (exp num, exp den, coeff num, coeff den).
  std::vector<std::array<Int, 4>> serialized() const {
    std::vector<std::array<Int, 4>> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_)
      out.push_back({rat_num(e), rat_den(e), rat_num(c), rat_den(c)});
    return out;
  }

  static QLaurent deserialized(const std::vector<std::array<Int, 4>>& data) {
    QLaurent p;
    for (const auto& t : data) p.add_term(make_rat(t[0], t[1]), make_rat(t[2], t[3]));
    return p;
  }

 private:
  std::map<Rat, Rat> terms_;
};

inline QLaurent pow(const QLaurent& base, unsigned long n) {
  QLaurent r(1);
  QLaurent b = base;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// <a>_+ = q^a + q^{-a}
inline QLaurent bracket_plus(const Rat& a) {
  QLaurent p = QLaurent::monomial(1, a);
  p.add_term(-a, 1);
  return p;
}

// <a>_- = q^a - q^{-a}
inline QLaurent bracket_minus(const Rat& a) {
  QLaurent p = QLaurent::monomial(1, a);
  p.add_term(-a, -1);
  return p;
}

// [a]_q = (q^{a/2} - q^{-a/2})/(q^{1/2} - q^{-1/2}) = sum of a symmetric half-integer powers.
inline QLaurent q_analog(long a) {
  if (a < 1) throw std::invalid_argument("q_analog requires a >= 1");
  QLaurent p;
  for (long k = 0; k < a; ++k) p.add_term(Rat(a - 1 - 2 * k, 2), 1);
  return p;
}

namespace detail {

inline Int lcm_int(const Int& a, const Int& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

// Common exponent denominator of both operands, doubled so half-integer
// brackets always stay integral in the rewritten variable u = q^{1/scale}.
inline Int common_exponent_scale(const QLaurent& a, const QLaurent& b) {
  Int d = 1;
  for (const auto& [e, c] : a.terms()) d = lcm_int(d, rat_den(e));
  for (const auto& [e, c] : b.terms()) d = lcm_int(d, rat_den(e));
  return 2 * d;
}

}  // namespace detail

// Exact quotient; throws NotDivisible when the remainder is nonzero.
inline QLaurent div_exact(const QLaurent& a, const QLaurent& b) {
  if (b.is_zero()) throw NotDivisible("division by zero polynomial");
  if (a.is_zero()) return QLaurent();

  const Int scale = detail::common_exponent_scale(a, b);
  auto to_integer_exponents = [&scale](const QLaurent& p) {
    std::map<Int, Rat> m;
    for (const auto& [e, c] : p.terms()) {
      Rat k = e * Rat(scale);
      m.emplace(rat_num(k), c);  // denominator is 1 by construction
    }
    return m;
  };
  std::map<Int, Rat> A = to_integer_exponents(a);
  std::map<Int, Rat> B = to_integer_exponents(b);

  const Int blo = B.begin()->first, bhi = B.rbegin()->first;
  std::map<Int, Rat> quotient;
  while (!A.empty()) {
    const Int ahi = A.rbegin()->first;
    const Int shift = ahi - bhi;
    if (ahi - A.begin()->first < bhi - blo) throw NotDivisible("nonzero remainder");
    const Rat c = A.rbegin()->second / B.rbegin()->second;
    quotient.emplace(shift, c);
    for (const auto& [e, bc] : B) {
      const Int k = e + shift;
      auto it = A.find(k);
      const Rat delta = c * bc;
      if (it == A.end()) {
        A.emplace(k, -delta);
      } else {
        it->second -= delta;
        if (it->second == 0) A.erase(it);
      }
    }
    if (!A.empty() && A.rbegin()->first >= ahi) throw NotDivisible("nonzero remainder");
  }

  QLaurent q;
  for (const auto& [k, c] : quotient) q.add_term(make_rat(k, scale), c);
  return q;
}

}  // namespace qtrop
