#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qtrop {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Rat& r) { return r.sign(); }

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rat(num, den);
}

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
  Int q = rat_num(r) / rat_den(r);
  if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
  return q;
}

// Representative of r mod 1 in [0,1).
inline Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

inline std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << rat_num(r);
  if (rat_den(r) != 1) os << '/' << rat_den(r);
  return os.str();
}

// Accepts "n", "-n", "n/d".
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

// Single source of randomness; every randomized routine takes one of these
// so a run is reproducible from its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }

  // Uniform-ish rational with |numerator| up to 2^63 and small denominator.
  Rat big_rat() {
    std::int64_t num = int_in(std::numeric_limits<std::int64_t>::min() + 2,
                              std::numeric_limits<std::int64_t>::max() - 1);
    std::int64_t den = int_in(1, 1 << 16);
    return Rat(Int(num), Int(den));
  }

  // Rational in the open interval (0,1) with denominator <= max_den.
  Rat unit_rat(std::int64_t max_den = 1000) {
    std::int64_t den = int_in(2, max_den);
    std::int64_t num = int_in(1, den - 1);
    return Rat(Int(num), Int(den));
  }

  Rat small_rat(std::int64_t max_abs_num, std::int64_t max_den) {
    std::int64_t den = int_in(1, max_den);
    std::int64_t num = int_in(-max_abs_num, max_abs_num);
    return Rat(Int(num), Int(den));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace qtrop
