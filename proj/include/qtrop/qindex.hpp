#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtrop/lattice.hpp"

namespace qtrop {

struct MissingInfinity : std::invalid_argument {
  MissingInfinity()
      : std::invalid_argument("parametrization needs its last real point at infinity") {}
};
struct NotHalfInteger : std::runtime_error {
  explicit NotHalfInteger(double residual)
      : std::runtime_error("quantum index residual " + std::to_string(residual) +
                           " exceeds tolerance") {}
};
struct RealMomentDegenerate : std::runtime_error {
  RealMomentDegenerate()
      : std::runtime_error("complex point has a real moment coordinate") {}
};
struct SingularMatrix : std::invalid_argument {
  SingularMatrix() : std::invalid_argument("pushforward matrix is singular") {}
};

struct RealPoint {
  std::optional<Rat> alpha;  // boundary coordinate; empty marks the point at infinity
  Vec2 slope;                // exponent vector of this zero/pole in (x(t), y(t))
};

struct ComplexPair {
  Rat re;  // upper half plane representative of the conjugate pair
  Rat im;  // > 0
  Vec2 slope;
};

// Oriented real rational curve in the torus, presented by the divisors of its
// two coordinate functions on the projective line: real zeroes/poles alpha_i
// with exponent vectors n_i and complex conjugate pairs beta_j with exponent
// vectors n'_j.  The orientation of the half with positive imaginary
// coordinate is the one induced from the upper half plane; reversing it is
// t -> -t, i.e. negating every alpha_i and Re beta_j.
struct RealParam {
  std::vector<RealPoint> real_points;
  std::vector<ComplexPair> complex_pairs;

  void validate() const {
    if (real_points.empty() || real_points.back().alpha.has_value()) throw MissingInfinity();
    std::vector<Rat> alphas;
    for (std::size_t i = 0; i + 1 < real_points.size(); ++i) {
      if (!real_points[i].alpha.has_value())
        throw std::invalid_argument("only the last real point may sit at infinity");
      alphas.push_back(*real_points[i].alpha);
    }
    std::sort(alphas.begin(), alphas.end());
    if (std::adjacent_find(alphas.begin(), alphas.end()) != alphas.end())
      throw std::invalid_argument("real points must be distinct");
    Vec2 total{0, 0};
    for (const RealPoint& p : real_points) {
      if (p.slope == Vec2{}) throw ZeroVector();
      total = total + p.slope;
    }
    std::vector<std::pair<Rat, Rat>> betas;
    for (const ComplexPair& p : complex_pairs) {
      if (p.slope == Vec2{}) throw ZeroVector();
      if (p.im <= 0)
        throw std::invalid_argument("complex pair representative must have Im > 0");
      betas.emplace_back(p.re, p.im);
      total = total + 2 * p.slope;
    }
    std::sort(betas.begin(), betas.end());
    if (std::adjacent_find(betas.begin(), betas.end()) != betas.end())
      throw std::invalid_argument("complex pairs must be distinct");
    if (!(total == Vec2{})) throw std::invalid_argument("exponent vectors do not balance");
  }
};

struct ArctanTerm {
  std::int64_t coeff = 0;  // contributes coeff * 2*pi * arctan(arg) to the area
  Rat arg;
  friend bool operator==(const ArctanTerm&, const ArctanTerm&) = default;
};

struct LogArea {
  Rat half_units;                       // coefficient of pi^2/2
  std::vector<ArctanTerm> arctan_terms;
  double numeric_value = 0;             // area divided by pi^2
};

// Signed area of the image of the positive half of the curve under
// (log|x|, log|y|), as a pure pairwise sum over the marked points.  Only the
// finite points carry terms: the point at infinity is the normalization.
// The real-complex coefficient is omega(n_i, n'_j) against
// arctan((Re beta_j - alpha_i) / Im beta_j); this is the orientation the
// parabola model realizes, and the only one for which the boundary-argument
// correction below lands on half-integers.
inline LogArea log_area(const RealParam& curve) {
  curve.validate();
  const auto& reals = curve.real_points;
  const auto& pairs = curve.complex_pairs;
  const std::size_t r = reals.size() - 1;
  LogArea out;
  std::int64_t half = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = i + 1; k < r; ++k) {
      int sgn = *reals[i].alpha < *reals[k].alpha ? 1 : -1;
      half += omega(reals[i].slope, reals[k].slope) * sgn;
    }
  out.half_units = half;
  for (std::size_t i = 0; i < r; ++i)
    for (const ComplexPair& p : pairs) {
      std::int64_t c = omega(reals[i].slope, p.slope);
      if (c != 0) out.arctan_terms.push_back({c, Rat((p.re - *reals[i].alpha) / p.im)});
    }
  for (std::size_t j = 0; j < pairs.size(); ++j)
    for (std::size_t k = j + 1; k < pairs.size(); ++k) {
      std::int64_t c = omega(pairs[j].slope, pairs[k].slope);
      if (c != 0)
        out.arctan_terms.push_back(
            {2 * c, Rat((pairs[k].re - pairs[j].re) / (pairs[j].im + pairs[k].im))});
    }
  double acc = static_cast<double>(half) / 2;
  for (const ArctanTerm& t : out.arctan_terms)
    acc += static_cast<double>(t.coeff) * 2 / std::numbers::pi * std::atan(rat_to_double(t.arg));
  out.numeric_value = acc;
  return out;
}

struct BoundaryArgument {
  int sign = 1;      // epsilon_j
  double angle = 0;  // theta_j in (0, pi)
};

// Argument of the moment coordinate of each complex pair: the monomial with
// exponent (-n'_y, n'_x) in the two coordinate functions, evaluated at
// beta_j.  Its own vanishing factor enters with total exponent zero, so the
// value is finite and nonzero; the real leading constants chi only contribute
// their sign.  Throws when some argument degenerates to 0 or pi, i.e. the
// complex point has real moment and the curve is not generic.
inline std::vector<BoundaryArgument> boundary_arguments(const RealParam& curve,
                                                        const Rat& chi_x = 1,
                                                        const Rat& chi_y = 1,
                                                        double tol = 1e-9) {
  curve.validate();
  if (chi_x == 0 || chi_y == 0)
    throw std::invalid_argument("leading constants must be nonzero");
  constexpr double pi = std::numbers::pi;
  const auto& reals = curve.real_points;
  const auto& pairs = curve.complex_pairs;
  const std::size_t r = reals.size() - 1;
  std::vector<BoundaryArgument> out;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const Vec2 m{-pairs[j].slope.y, pairs[j].slope.x};
    double s = 0;
    if ((chi_x < 0 && m.x % 2 != 0) != (chi_y < 0 && m.y % 2 != 0)) s = pi;
    double bre = rat_to_double(pairs[j].re), bim = rat_to_double(pairs[j].im);
    for (std::size_t i = 0; i < r; ++i)
      s += static_cast<double>(omega(pairs[j].slope, reals[i].slope)) *
           std::atan2(bim, bre - rat_to_double(*reals[i].alpha));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (k == j) continue;
      double cre = rat_to_double(pairs[k].re), cim = rat_to_double(pairs[k].im);
      s += static_cast<double>(omega(pairs[j].slope, pairs[k].slope)) *
           (std::atan2(bim - cim, bre - cre) + std::atan2(bim + cim, bre - cre));
    }
    double w = std::remainder(s, 2 * pi);
    double theta = std::abs(w);
    if (theta <= tol || theta >= pi - tol) throw RealMomentDegenerate();
    out.push_back({w > 0 ? 1 : -1, theta});
  }
  return out;
}

struct QuantumIndex {
  Rat k;               // nearest half-integer
  double residual = 0; // distance of 2k to the nearest integer before rounding
};

// k * pi^2 = area - pi * sum_j eps_j (2 theta_j - pi).  Landing on a
// half-integer is the correctness certificate for the whole computation.
inline QuantumIndex quantum_index(const RealParam& curve, double tol = 1e-6) {
  const LogArea area = log_area(curve);
  double k = area.numeric_value;
  for (const BoundaryArgument& b : boundary_arguments(curve))
    k -= b.sign * (2 * b.angle / std::numbers::pi - 1);
  const double two_k = 2 * k;
  const long long nearest = std::llround(two_k);
  const double residual = std::abs(two_k - static_cast<double>(nearest));
  if (residual > tol) throw NotHalfInteger(residual);
  return {Rat(nearest) / 2, residual};
}

struct IntMat2 {
  std::int64_t a = 1, b = 0;  // first row
  std::int64_t c = 0, d = 1;  // second row
  std::int64_t det() const { return a * d - b * c; }
  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
};

// Composing the curve with a monomial map of exponent matrix m transforms all
// exponent vectors linearly and scales the area by det(m).
inline RealParam monomial_pushforward(const RealParam& curve, const IntMat2& m) {
  if (m.det() == 0) throw SingularMatrix();
  RealParam out = curve;
  for (RealPoint& p : out.real_points) p.slope = m.apply(p.slope);
  for (ComplexPair& p : out.complex_pairs) p.slope = m.apply(p.slope);
  return out;
}

}  // namespace qtrop
