#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "qtrop/qindex.hpp"

using namespace qtrop;

namespace {

constexpr double pi = std::numbers::pi;

RealParam line_param() {
  return {{{Rat(0), {-1, 0}}, {Rat(1), {0, -1}}, {std::nullopt, {1, 1}}}, {}};
}

// t -> (t + c, (t^2 + 1)/(t + c)) up to constants: the oriented parabola
// whose area grows with c
RealParam parabola_param(const Rat& c) {
  return {{{Rat(-c), {1, -1}}, {std::nullopt, {-1, -1}}}, {{Rat(0), Rat(1), {0, 1}}}};
}

// ellipse tangent to both axes, complex points on the unit circle at angles
// phi = 2 arctan(u2) (exponent (1,0)) and theta = 2 arctan(u1) (exponent
// (0,1)); u1 < u2 in (0,1) gives theta < phi and theta + phi < pi
RealParam ellipse_param(const Rat& u1, const Rat& u2) {
  auto beta = [](const Rat& u) {
    return std::pair<Rat, Rat>{Rat((1 - u * u) / (1 + u * u)), Rat(2 * u / (1 + u * u))};
  };
  auto [re2, im2] = beta(u2);
  auto [re1, im1] = beta(u1);
  return {{{std::nullopt, {-2, -2}}},
          {{re2, im2, {1, 0}}, {re1, im1, {0, 1}}}};
}

RealParam reversed(const RealParam& p) {
  RealParam out = p;
  for (RealPoint& q : out.real_points)
    if (q.alpha) q.alpha = Rat(-*q.alpha);
  for (ComplexPair& q : out.complex_pairs) q.re = -q.re;
  return out;
}

// small random curve: distinct rational data, exponents in [-2,2]^2, total
// lattice size at most 8, last point at infinity absorbing the balance
RealParam random_param(Rng& rng) {
  for (;;) {
    int s = static_cast<int>(rng.int_in(0, 2));
    int f = static_cast<int>(rng.int_in(s == 0 ? 1 : 0, 3));
    RealParam p;
    Vec2 total{0, 0};
    std::int64_t size = 0;
    std::set<Rat> alphas;
    std::set<std::pair<Rat, Rat>> betas;
    bool ok = true;
    for (int i = 0; i < f && ok; ++i) {
      Vec2 n{rng.int_in(-2, 2), rng.int_in(-2, 2)};
      Rat a = rng.small_rat(6, 5);
      if (n == Vec2{} || !alphas.insert(a).second) {
        ok = false;
        break;
      }
      p.real_points.push_back({a, n});
      total = total + n;
      size += lattice_length(n);
    }
    for (int j = 0; j < s && ok; ++j) {
      Vec2 n{rng.int_in(-2, 2), rng.int_in(-2, 2)};
      Rat re = rng.small_rat(4, 4);
      Rat im(rng.int_in(1, 12), rng.int_in(1, 4));
      if (n == Vec2{} || !betas.insert({re, im}).second) {
        ok = false;
        break;
      }
      p.complex_pairs.push_back({re, im, n});
      total = total + 2 * n;
      size += 2 * lattice_length(n);
    }
    if (!ok || total == Vec2{}) continue;
    p.real_points.push_back({std::nullopt, -total});
    if (size + lattice_length(total) > 8) continue;
    return p;
  }
}

}  // namespace

TEST_CASE("log-area and quantum index of the line") {
  LogArea a = log_area(line_param());
  CHECK(a.half_units == 1);
  CHECK(a.arctan_terms.empty());
  CHECK(a.numeric_value == 0.5);

  QuantumIndex qi = quantum_index(line_param());
  CHECK(qi.k == Rat(1, 2));
  CHECK(qi.residual < 1e-12);

  // negating every exponent vector reparametrizes the same curve
  RealParam flipped = monomial_pushforward(line_param(), {-1, 0, 0, -1});
  CHECK(log_area(flipped).half_units == 1);
  CHECK(quantum_index(flipped).k == Rat(1, 2));
}

TEST_CASE("parabola family: linear arctan area, constant index") {
  for (int c = -3; c <= 3; ++c) {
    RealParam p = parabola_param(Rat(c));
    LogArea a = log_area(p);
    CHECK(a.half_units == 0);
    REQUIRE(a.arctan_terms.size() == 1);
    CHECK(a.arctan_terms[0] == ArctanTerm{1, Rat(c)});
    CHECK(std::abs(a.numeric_value * pi * pi - 2 * pi * std::atan(c)) < 1e-10);

    QuantumIndex qi = quantum_index(p);
    CHECK(qi.k == 0);
    CHECK(qi.residual < 1e-12);
  }

  SECTION("purely imaginary moment at c = 0") {
    auto ba = boundary_arguments(parabola_param(Rat(0)));
    REQUIRE(ba.size() == 1);
    CHECK(ba[0].sign == -1);
    CHECK(std::abs(ba[0].angle - pi / 2) < 1e-15);
    CHECK(quantum_index(parabola_param(Rat(0))).residual == 0);
  }

  SECTION("negative leading constants shift the moment argument by pi") {
    auto ba = boundary_arguments(parabola_param(Rat(0)), Rat(-1), Rat(1));
    REQUIRE(ba.size() == 1);
    CHECK(ba[0].sign == 1);
    CHECK(std::abs(ba[0].angle - pi / 2) < 1e-15);
    // chi_y enters with even exponent here, so its sign is invisible
    auto bb = boundary_arguments(parabola_param(Rat(0)), Rat(1), Rat(-7));
    CHECK(bb[0].sign == -1);
  }
}

TEST_CASE("tangent ellipse: area is the angle gap") {
  Rng rng(0x00e11);
  int done = 0;
  while (done < 8) {
    Rat u1 = rng.unit_rat(40), u2 = rng.unit_rat(40);
    if (u1 == u2) continue;
    if (u2 < u1) std::swap(u1, u2);
    RealParam p = ellipse_param(u1, u2);
    LogArea a = log_area(p);
    CHECK(a.half_units == 0);
    REQUIRE(a.arctan_terms.size() == 1);
    CHECK(a.arctan_terms[0].coeff == 2);
    double phi = 2 * std::atan(rat_to_double(u2));
    double theta = 2 * std::atan(rat_to_double(u1));
    CHECK(std::abs(a.numeric_value * pi * pi - 2 * pi * (phi - theta)) < 1e-10);

    QuantumIndex qi = quantum_index(p);
    CHECK(qi.k == 0);
    CHECK(qi.residual < 1e-11);
    ++done;
  }
}

TEST_CASE("orientation reversal negates the area and the index") {
  Rng rng(0x0ee02);
  int done = 0;
  while (done < 20) {
    RealParam p = random_param(rng);
    RealParam q = reversed(p);
    LogArea a = log_area(p), b = log_area(q);
    CHECK(b.half_units == Rat(-a.half_units));
    REQUIRE(b.arctan_terms.size() == a.arctan_terms.size());
    for (std::size_t t = 0; t < a.arctan_terms.size(); ++t) {
      CHECK(b.arctan_terms[t].coeff == a.arctan_terms[t].coeff);
      CHECK(b.arctan_terms[t].arg == Rat(-a.arctan_terms[t].arg));
    }
    CHECK(b.numeric_value == -a.numeric_value);
    try {
      QuantumIndex qp = quantum_index(p), qq = quantum_index(q);
      CHECK(qq.k == Rat(-qp.k));
    } catch (const RealMomentDegenerate&) {
      continue;  // degenerate either way round; draw another curve
    }
    ++done;
  }
}

TEST_CASE("area is a pairwise sum over marked points") {
  Rng rng(0x0ee03);
  for (int trial = 0; trial < 25; ++trial) {
    RealParam p = random_param(rng);
    const auto& re = p.real_points;
    const auto& cp = p.complex_pairs;
    std::size_t r = re.size() - 1;
    double oracle = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = i + 1; k < r; ++k)
        oracle += omega(re[i].slope, re[k].slope) *
                  (*re[i].alpha < *re[k].alpha ? 0.5 : -0.5);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cp.size(); ++j)
        oracle += omega(re[i].slope, cp[j].slope) * (2 / pi) *
                  std::atan(rat_to_double(Rat((cp[j].re - *re[i].alpha) / cp[j].im)));
    for (std::size_t j = 0; j < cp.size(); ++j)
      for (std::size_t k = j + 1; k < cp.size(); ++k)
        oracle += omega(cp[j].slope, cp[k].slope) * (4 / pi) *
                  std::atan(rat_to_double(Rat((cp[k].re - cp[j].re) / (cp[j].im + cp[k].im))));
    CHECK(std::abs(log_area(p).numeric_value - oracle) < 1e-12);
  }
}

TEST_CASE("quantum index is a half-integer on random curves") {
  Rng rng(0x0ee04);
  int done = 0, attempts = 0;
  while (done < 200 && attempts < 4000) {
    ++attempts;
    RealParam p = random_param(rng);
    try {
      QuantumIndex qi = quantum_index(p);
      CHECK(qi.residual < 1e-9);
      ++done;
    } catch (const RealMomentDegenerate&) {
    }
  }
  REQUIRE(done == 200);
}

TEST_CASE("monomial pushforward") {
  SECTION("identity, doubling and reflection on the line") {
    RealParam p = line_param();
    LogArea base = log_area(p);
    CHECK(log_area(monomial_pushforward(p, {})).half_units == base.half_units);

    LogArea doubled = log_area(monomial_pushforward(p, {2, 0, 0, 1}));
    CHECK(doubled.half_units == 2);
    CHECK(doubled.numeric_value == 1.0);

    LogArea swapped = log_area(monomial_pushforward(p, {0, 1, 1, 0}));
    CHECK(swapped.half_units == -1);

    CHECK_THROWS_AS(monomial_pushforward(p, {1, 2, 2, 4}), SingularMatrix);
  }

  SECTION("parameters survive, only exponents move") {
    RealParam p = parabola_param(Rat(2));
    RealParam q = monomial_pushforward(p, {1, 1, 0, 1});
    CHECK(q.real_points[0].alpha == p.real_points[0].alpha);
    CHECK(q.complex_pairs[0].re == p.complex_pairs[0].re);
    CHECK(q.complex_pairs[0].im == p.complex_pairs[0].im);
    CHECK(q.real_points[0].slope == Vec2{0, -1});
  }

  SECTION("area scales by the determinant") {
    Rng rng(0x0ee05);
    int done = 0;
    while (done < 50) {
      RealParam p = random_param(rng);
      IntMat2 m{rng.int_in(-3, 3), rng.int_in(-3, 3), rng.int_in(-3, 3), rng.int_in(-3, 3)};
      if (m.det() == 0 || std::abs(m.det()) > 5) continue;
      LogArea base = log_area(p);
      LogArea pushed = log_area(monomial_pushforward(p, m));
      CHECK(pushed.half_units == Rat(m.det() * base.half_units));
      REQUIRE(pushed.arctan_terms.size() == base.arctan_terms.size());
      for (std::size_t t = 0; t < base.arctan_terms.size(); ++t) {
        CHECK(pushed.arctan_terms[t].coeff == m.det() * base.arctan_terms[t].coeff);
        CHECK(pushed.arctan_terms[t].arg == base.arctan_terms[t].arg);
      }
      double want = static_cast<double>(m.det()) * base.numeric_value;
      CHECK(std::abs(pushed.numeric_value - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      ++done;
    }
  }
}

TEST_CASE("parametrization validation") {
  CHECK_THROWS_AS(log_area({}), MissingInfinity);
  CHECK_THROWS_AS(log_area({{{Rat(0), {-1, 0}}, {Rat(1), {1, 0}}}, {}}), MissingInfinity);
  CHECK_THROWS_AS(
      log_area({{{std::nullopt, {1, 1}}, {Rat(0), {-1, 0}}, {Rat(1), {0, -1}}}, {}}),
      std::invalid_argument);
  // duplicate real point
  CHECK_THROWS_AS(
      log_area({{{Rat(0), {-1, 0}}, {Rat(0), {0, -1}}, {std::nullopt, {1, 1}}}, {}}),
      std::invalid_argument);
  // zero exponent vector
  CHECK_THROWS_AS(
      log_area({{{Rat(0), {0, 0}}, {Rat(1), {0, 0}}, {std::nullopt, {0, 0}}}, {}}),
      ZeroVector);
  // lower half plane representative
  CHECK_THROWS_AS(log_area({{{std::nullopt, {-2, 0}}}, {{Rat(0), Rat(-1), {1, 0}}}}),
                  std::invalid_argument);
  // duplicate pair
  CHECK_THROWS_AS(log_area({{{std::nullopt, {-4, 0}}},
                            {{Rat(0), Rat(1), {1, 0}}, {Rat(0), Rat(1), {1, 0}}}}),
                  std::invalid_argument);
  // unbalanced exponents
  CHECK_THROWS_AS(log_area({{{Rat(0), {1, 0}}, {std::nullopt, {1, 1}}}, {}}),
                  std::invalid_argument);

  SECTION("degenerate real moment") {
    RealParam p{{{std::nullopt, {-2, 0}}}, {{Rat(0), Rat(1), {1, 0}}}};
    p.validate();
    CHECK_THROWS_AS(boundary_arguments(p), RealMomentDegenerate);
    CHECK_THROWS_AS(quantum_index(p), RealMomentDegenerate);
  }

  SECTION("tolerance violation reports the residual") {
    RealParam p = ellipse_param(Rat(2, 7), Rat(5, 9));
    double r0 = quantum_index(p).residual;
    REQUIRE(r0 > 0);
    CHECK_THROWS_AS(quantum_index(p, r0 / 2), NotHalfInteger);
  }
}
