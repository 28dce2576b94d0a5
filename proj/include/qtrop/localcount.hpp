#pragma once

#include <cstdlib>
#include <string>

#include "qtrop/lattice.hpp"
#include "qtrop/qlaurent.hpp"

namespace qtrop {

struct CollinearInput : std::invalid_argument {
  explicit CollinearInput(const std::string& what) : std::invalid_argument(what) {}
};
struct DegenerateArgument : std::invalid_argument {
  explicit DegenerateArgument(const std::string& what) : std::invalid_argument(what) {}
};
struct OnRegionBoundary : std::invalid_argument {
  explicit OnRegionBoundary(const std::string& what) : std::invalid_argument(what) {}
};

enum class Parity { odd, even };

inline void require_unit_interval(const Rat& t, const char* name) {
  if (t <= 0 || t >= 1)
    throw std::invalid_argument(std::string(name) + " must lie strictly between 0 and 1");
}

// Curves through two fixed generic moments on the first two divisors: one
// solution per intersection point with the third divisor.
inline std::int64_t trivalent_complex_count(Vec2 n1, Vec2 n2) {
  std::int64_t w = omega(n1, n2);
  if (w == 0) throw CollinearInput("directions must be independent");
  return std::abs(w);
}

// Oriented real curves through two fixed real moments: 4<m/2>_-.
inline QLaurent trivalent_real_count(std::int64_t m_delta) {
  if (m_delta < 1) throw std::invalid_argument("multiplicity must be positive");
  return bracket_minus(Rat(m_delta, 2)).scaled(4);
}

// Oriented real curves with a fixed pair of conjugate primitive moments
// e^{+-i pi theta} on one divisor: 2<l1(2theta-1)>_+ <m/2>_- / <l1>_-.
inline QLaurent parabola_count_primitive(std::int64_t l1, std::int64_t m_delta,
                                         const Rat& theta) {
  require_unit_interval(theta, "theta");
  if (l1 < 1 || m_delta < 1 || m_delta % (2 * l1) != 0)
    throw NotDivisible("m_delta must be 2*l1*h1 for a positive integer h1");
  QLaurent num =
      bracket_plus(Rat(l1) * (2 * theta - 1)) * bracket_minus(Rat(m_delta, 2));
  return div_exact(num.scaled(2), bracket_minus(Rat(l1)));
}

// The same count as the literal sum over the h1 solutions per point choice.
inline QLaurent parabola_bruteforce(std::int64_t l1, std::int64_t m_delta, const Rat& theta) {
  require_unit_interval(theta, "theta");
  if (l1 < 1 || m_delta < 1 || m_delta % (2 * l1) != 0)
    throw NotDivisible("m_delta must be 2*l1*h1 for a positive integer h1");
  std::int64_t h1 = m_delta / (2 * l1);
  QLaurent out;
  for (const Rat& t : {theta, Rat(1 - theta)})
    for (std::int64_t k = 0; k < h1; ++k)
      out += QLaurent::monomial(2, Rat(l1) * (2 * t + 2 * k - h1));
  return out;
}

// Conjugate pair with fixed full (non-primitive) moments:
// 4<2theta-1>_+ <m/2>_- / <1>_-.
inline QLaurent parabola_count_full(std::int64_t m_delta, const Rat& theta) {
  require_unit_interval(theta, "theta");
  if (m_delta < 2 || m_delta % 2 != 0)
    throw std::invalid_argument("m_delta must be a positive even integer");
  QLaurent num = bracket_plus(2 * theta - 1) * bracket_minus(Rat(m_delta, 2));
  return div_exact(num.scaled(4), bracket_minus(Rat(1)));
}

// Tangent ellipse with two fixed conjugate pairs of primitive moments; the
// literal signed sums, split by the parity of m1/l3.
inline QLaurent ellipse_count_primitive(std::int64_t l1, std::int64_t l3, std::int64_t h1,
                                        std::int64_t h3, Parity parity, const Rat& theta1,
                                        const Rat& theta3) {
  require_unit_interval(theta1, "theta1");
  require_unit_interval(theta3, "theta3");
  if (l1 < 1 || l3 < 1 || h1 < 1 || h3 < 1)
    throw std::invalid_argument("side data must be positive");
  if (l1 * h1 != l3 * h3) throw std::invalid_argument("tangency condition l1*h1 = l3*h3");
  QLaurent out;
  for (int c1 : {0, 1})
    for (int c3 : {0, 1}) {
      Rat a = c1 ? 1 - theta1 : theta1;
      Rat b = c3 ? 1 - theta3 : theta3;
      int eps = (c1 + c3) % 2;
      for (std::int64_t k1 = 0; k1 < h1; ++k1)
        for (std::int64_t k3 = 0; k3 < h3; ++k3) {
          if (parity == Parity::even && (k1 + k3) % 2 != eps) continue;
          Rat e = 2 * l3 * (b + k3) - 2 * l1 * (a + k1);
          if (e == 0) throw DegenerateArgument("vanishing exponent: non-generic moments");
          Rat coeff(parity == Parity::even ? 2 : 1);
          out += QLaurent::monomial(e > 0 ? coeff : -coeff, e);
        }
    }
  return out;
}

// Sum of the primitive counts over the four point choices; independent of
// the parity.
inline QLaurent ellipse_count_symmetrized(std::int64_t l1, std::int64_t l3, std::int64_t h1,
                                          std::int64_t h3, const Rat& theta1,
                                          const Rat& theta3) {
  return ellipse_count_primitive(l1, l3, h1, h3, Parity::odd, theta1, theta3).scaled(4);
}

namespace detail {

// 0: theta<varphi, sum<1; 1: theta>varphi, sum>1; 2: theta>varphi, sum<1;
// 3: theta<varphi, sum>1
inline int s_region(const Rat& theta, const Rat& varphi) {
  if (theta == varphi || theta + varphi == 1)
    throw OnRegionBoundary("need theta != varphi and theta + varphi != 1");
  if (theta < varphi) return theta + varphi < 1 ? 0 : 3;
  return theta + varphi > 1 ? 1 : 2;
}

inline QLaurent s_region_factor(int region, const Rat& theta, const Rat& varphi) {
  switch (region) {
    case 0: return bracket_plus(2 * varphi - 1) * bracket_plus(2 * theta);
    case 1: return bracket_plus(2 * varphi - 1) * bracket_plus(2 * (1 - theta));
    case 2: return bracket_plus(2 * varphi) * bracket_plus(2 * theta - 1);
    default: return bracket_plus(2 * (1 - varphi)) * bracket_plus(2 * theta - 1);
  }
}

}  // namespace detail

// Literal square sum S(theta, varphi) over [0,n)^2 with term signs given by
// the sign of each total exponent.
inline QLaurent s_sum_bruteforce(std::int64_t n, const Rat& theta, const Rat& varphi) {
  require_unit_interval(theta, "theta");
  require_unit_interval(varphi, "varphi");
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (theta == varphi || theta + varphi == 1)
    throw OnRegionBoundary("need theta != varphi and theta + varphi != 1");
  QLaurent out;
  Rat diff = 2 * (varphi - theta), wrap = 2 * (1 - varphi - theta);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      for (const Rat& base : {diff, Rat(-diff), wrap, Rat(-wrap)}) {
        Rat e = base + 2 * j - 2 * i;
        out += QLaurent::monomial(e > 0 ? 1 : -1, e);
      }
  return out;
}

// Closed form of the same sum; n may be any positive rational (the square
// side enters only through <2n>_- and the prefactor 2n).
inline QLaurent s_sum_closed(const Rat& n, const Rat& theta, const Rat& varphi) {
  require_unit_interval(theta, "theta");
  require_unit_interval(varphi, "varphi");
  if (n <= 0) throw std::invalid_argument("n must be positive");
  int region = detail::s_region(theta, varphi);
  QLaurent one_minus = bracket_minus(Rat(1));
  QLaurent num = bracket_plus(2 * varphi - 1) * bracket_plus(2 * theta - 1) *
                 bracket_minus(2 * n);
  num -= (detail::s_region_factor(region, theta, varphi) * one_minus).scaled(2 * n);
  return div_exact(num, one_minus * one_minus);
}

// Tangent ellipse with two fixed conjugate pairs of full moments.
inline QLaurent ellipse_count_full(std::int64_t m_delta, const Rat& theta1, const Rat& theta3) {
  require_unit_interval(theta1, "theta1");
  require_unit_interval(theta3, "theta3");
  if (m_delta < 4 || m_delta % 4 != 0)
    throw std::invalid_argument("m_delta must be a positive multiple of 4");
  int region = detail::s_region(theta1, theta3);
  QLaurent one_minus = bracket_minus(Rat(1));
  QLaurent num = bracket_plus(2 * theta3 - 1) * bracket_plus(2 * theta1 - 1) *
                 bracket_minus(Rat(m_delta, 2));
  num -= (detail::s_region_factor(region, theta1, theta3) * one_minus).scaled(Rat(m_delta, 2));
  return div_exact(num, one_minus * one_minus);
}

}  // namespace qtrop
