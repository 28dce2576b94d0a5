// Acceptance battery: one line per criterion, exit status counts failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtrop/enumerate.hpp"
#include "qtrop/invariants.hpp"
#include "qtrop/localcount.hpp"
#include "qtrop/qindex.hpp"
#include "qtrop/realstruct.hpp"

using namespace qtrop;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<Solution> draw_solutions(const Degree& ds, Rng& rng) {
  for (int retry = 0;; ++retry) {
    try {
      return enumerate_solutions(ds, random_generic_moments(ds, rng));
    } catch (const DegenerateConfig&) {
      if (retry >= 8) throw;
    }
  }
}

QLaurent refined_total(const std::vector<Solution>& sols) {
  QLaurent n(0);
  for (const Solution& s : sols) n += s.curve.refined_mult();
  return n;
}

QLaurent product_form(const TropCurve& c, std::size_t p) {
  QLaurent out(4);
  for (int v = c.comb().m; v < c.comb().num_vertices(); ++v)
    out *= bracket_minus(Rat(c.vertex_mult(v), 2));
  return div_exact(out.scaled(Rat(Int(1) << p)),
                   pow(bracket_minus(Rat(1)), static_cast<unsigned long>(p)));
}

QLaurent folm_generic(const TropCurve& c, std::size_t p, Rng& rng) {
  for (int tries = 0;; ++tries) {
    std::vector<Rat> th;
    for (std::size_t i = 0; i < p; ++i) th.push_back(rng.unit_rat(499));
    try {
      return first_order_multiplicity(c, th);
    } catch (const OnRegionBoundary&) {
      if (tries > 64) throw;
    }
  }
}

int s_region_of(const Rat& theta, const Rat& phi) {
  if (theta < phi) return theta + phi < 1 ? 0 : 3;
  return theta + phi > 1 ? 1 : 2;
}

RealParam line_param() {
  return {{{Rat(0), {-1, 0}}, {Rat(1), {0, -1}}, {std::nullopt, {1, 1}}}, {}};
}

RealParam parabola_param(const Rat& c) {
  return {{{Rat(-c), {1, -1}}, {std::nullopt, {-1, -1}}}, {{Rat(0), Rat(1), {0, 1}}}};
}

RealParam ellipse_param(const Rat& u1, const Rat& u2) {
  auto beta = [](const Rat& u) {
    return std::pair<Rat, Rat>{Rat((1 - u * u) / (1 + u * u)), Rat(2 * u / (1 + u * u))};
  };
  auto [re2, im2] = beta(u2);
  auto [re1, im1] = beta(u1);
  return {{{std::nullopt, {-2, -2}}}, {{re2, im2, {1, 0}}, {re1, im1, {0, 1}}}};
}

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

struct Runner {
  int failed = 0;
  std::vector<Solution> pool;  // everything enumerated in criteria 1-2

  void run(int idx, const char* desc, double limit_s, bool (*body)(Runner&, std::string&)) {
    std::string note;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(*this, note);
    } catch (const std::exception& e) {
      note = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
      ok = false;
      note += (note.empty() ? "" : "; ") + std::string("over the ") +
              std::to_string(limit_s) + "s budget";
    }
    std::printf("[%d] %-58s %s (%.2fs)%s%s\n", idx, desc, ok ? "PASS" : "FAIL", secs,
                note.empty() ? "" : "  ", note.c_str());
    if (!ok) ++failed;
  }
};

bool c1_line(Runner& r, std::string& note) {
  Degree d1 = standard_degree(1);
  Rng rng(0xacc1);
  bool ok = true;
  for (int draw = 0; draw < 5; ++draw) {
    auto sols = draw_solutions(d1, rng);
    ok = ok && refined_total(sols) == QLaurent(1);
    for (Solution& s : sols) r.pool.push_back(std::move(s));
  }
  QLaurent rr = classical_invariant(d1, SplitSpec::zeros(d1), QLaurent(1), 3);
  ok = ok && rr == bracket_minus(Rat(1, 2));
  if (!ok) note = "line count or invariant off";
  return ok;
}

bool c2_invariance(Runner& r, std::string& note) {
  Degree d2 = standard_degree(2);
  Rng rng(0xacc2);
  for (const SplitSpec& spec :
       {SplitSpec::zeros(d2), SplitSpec{{1, 0, 0}}}) {
    Degree ds = make_delta_s(d2, spec);
    QLaurent first;
    for (int draw = 0; draw < 10; ++draw) {
      auto sols = draw_solutions(ds, rng);
      QLaurent n = refined_total(sols);
      if (draw == 0)
        first = n;
      else if (!(n == first)) {
        note = "count moved between draws";
        return false;
      }
      for (Solution& s : sols) r.pool.push_back(std::move(s));
    }
  }
  return true;
}

bool c3_determinants(Runner& r, std::string& note) {
  if (r.pool.empty()) {
    note = "nothing enumerated";
    return false;
  }
  for (const Solution& sol : r.pool) {
    Int prod = 1;
    const TropCurve& c = sol.curve;
    for (int v = c.comb().m; v < c.comb().num_vertices(); ++v) prod *= c.vertex_mult(v);
    if (sol.abs_det != prod) {
      note = "determinant is not the product of vertex multiplicities";
      return false;
    }
  }
  note = std::to_string(r.pool.size()) + " curves";
  return true;
}

bool c4_s_lemma(Runner&, std::string&) {
  Rng rng(0xacc4);
  for (int region = 0; region < 4; ++region) {
    int done = 0;
    while (done < 20) {
      Rat theta = rng.unit_rat(199), phi = rng.unit_rat(199);
      if (theta == phi || theta + phi == 1 || s_region_of(theta, phi) != region) continue;
      for (std::int64_t n = 1; n <= 6; ++n)
        if (!(s_sum_closed(Rat(n), theta, phi) == s_sum_bruteforce(n, theta, phi))) return false;
      ++done;
    }
  }
  return true;
}

bool c5_parabola(Runner&, std::string&) {
  Rng rng(0xacc5);
  for (std::int64_t l1 = 1; l1 <= 3; ++l1)
    for (std::int64_t h1 = 1; h1 <= 3; ++h1)
      for (int rep = 0; rep < 10; ++rep) {
        Rat theta = rng.unit_rat(199);
        std::int64_t m = 2 * l1 * h1;
        if (!(parabola_count_primitive(l1, m, theta) == parabola_bruteforce(l1, m, theta)))
          return false;
      }
  for (std::int64_t l = 1; l <= 4; ++l)
    for (int rep = 0; rep < 10; ++rep) {
      Rat theta = rng.unit_rat(199);
      QLaurent sum(0);
      for (std::int64_t k = 0; k < l; ++k) sum += bracket_plus(Rat(2 * theta + 2 * k - l));
      if (!(sum == div_exact(bracket_plus(Rat(2 * theta - 1)) * bracket_minus(Rat(l)),
                             bracket_minus(Rat(1)))))
        return false;
    }
  return true;
}

bool c6_branch_lemma(Runner&, std::string& note) {
  Rng rng(0xacc6);
  QLaurent m_half = bracket_minus(Rat(2));
  int done = 0;
  for (int attempt = 0; attempt < 3000 && done < 100; ++attempt) {
    std::vector<BranchData> pool;
    std::int64_t leaves = rng.int_in(2, 5);
    for (std::int64_t i = 0; i < leaves; ++i) pool.push_back(leaf_branch(rng.unit_rat(299)));
    try {
      while (pool.size() > 1) {
        std::size_t i = static_cast<std::size_t>(
            rng.int_in(0, static_cast<std::int64_t>(pool.size()) - 2));
        BranchData joined = merge_branches(pool[i], pool[i + 1], 4);
        if (!(branch_invariant(joined) ==
              m_half * (branch_invariant(pool[i]) * branch_invariant(pool[i + 1]))))
          return false;
        pool[i] = std::move(joined);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      }
      ++done;
    } catch (const OnRegionBoundary&) {
    }
  }
  if (done < 100) {
    note = "only " + std::to_string(done) + " trees finished";
    return false;
  }
  note = "100 trees";
  return true;
}

bool c7_first_order(Runner&, std::string& note) {
  struct Config {
    Degree delta;
    SplitSpec spec;
  };
  Degree d2 = standard_degree(2);
  std::vector<Config> configs{
      {standard_degree(1), SplitSpec::zeros(standard_degree(1))},
      {d2, SplitSpec::zeros(d2)},
      {Degree({{-1, 1}, {1, 1}, {0, -1}, {0, -1}}), SplitSpec{{0, 0, 1}}},
      {d2, SplitSpec{{1, 0, 0}}},
      {d2, SplitSpec{{1, 1, 0}}},
      {Degree({{0, -1}, {0, -1}, {1, 0}, {1, 0}, {-1, 0}, {-1, 2}}), SplitSpec{{1, 1, 0, 0}}},
  };
  Rng rng(0xacc7);
  int curves = 0;
  std::set<std::int64_t> sizes_seen;
  for (const Config& cfg : configs) {
    Degree ds = make_delta_s(cfg.delta, cfg.spec);
    std::size_t p = static_cast<std::size_t>(cfg.spec.total());
    for (int draw = 0; draw < 5; ++draw)
      for (const Solution& sol : draw_solutions(ds, rng)) {
        if (!(folm_generic(sol.curve, p, rng) == product_form(sol.curve, p))) return false;
        ++curves;
        sizes_seen.insert(cfg.spec.total());
      }
  }
  if (curves < 20 || sizes_seen != std::set<std::int64_t>{0, 1, 2}) {
    note = "covered only " + std::to_string(curves) + " curves";
    return false;
  }
  note = std::to_string(curves) + " curves, splits 0/1/2";
  return true;
}

bool c8_quantum_index(Runner&, std::string& note) {
  if (!(quantum_index(line_param()).k == Rat(1, 2))) {
    note = "line index";
    return false;
  }
  for (int c = -3; c <= 3; ++c) {
    LogArea a = log_area(parabola_param(Rat(c)));
    if (std::abs(a.numeric_value * pi * pi - 2 * pi * std::atan(c)) > 1e-10) {
      note = "parabola area";
      return false;
    }
  }
  Rng rng(0xacc8);
  int done = 0;
  while (done < 8) {
    Rat u1 = rng.unit_rat(40), u2 = rng.unit_rat(40);
    if (u1 == u2) continue;
    if (u2 < u1) std::swap(u1, u2);
    LogArea a = log_area(ellipse_param(u1, u2));
    double gap = 2 * std::atan(rat_to_double(u2)) - 2 * std::atan(rat_to_double(u1));
    if (std::abs(a.numeric_value * pi * pi - 2 * pi * gap) > 1e-10) {
      note = "ellipse area";
      return false;
    }
    ++done;
  }
  done = 0;
  while (done < 200) {
    RealParam p = random_param(rng);
    try {
      if (quantum_index(p).residual >= 1e-9) {
        note = "residual too large";
        return false;
      }
      ++done;
    } catch (const RealMomentDegenerate&) {
    } catch (const NotHalfInteger&) {
      note = "index not half-integral";
      return false;
    }
  }
  done = 0;
  while (done < 50) {
    RealParam p = random_param(rng);
    IntMat2 m{rng.int_in(-2, 2), rng.int_in(-2, 2), rng.int_in(-2, 2), rng.int_in(-2, 2)};
    if (m.det() == 0) continue;
    double before = log_area(p).numeric_value;
    double after = log_area(monomial_pushforward(p, m)).numeric_value;
    double want = m.det() * before;
    if (std::abs(after - want) > 1e-10 * std::max(1.0, std::abs(want))) {
      note = "area not scaled by the determinant";
      return false;
    }
    ++done;
  }
  return true;
}

bool c9_parabola_invariant(Runner&, std::string& note) {
  struct Probe {
    Degree delta;
    SplitSpec spec;
    std::int64_t m_vertex;
    QLaurent n_expect;
  };
  std::vector<Probe> probes{
      {Degree({{-1, 1}, {1, 1}, {0, -1}, {0, -1}}), SplitSpec{{0, 0, 1}}, 2, q_analog(2)},
      {Degree({{2, -1}, {0, 1}, {0, 1}, {-2, -1}}), SplitSpec{{0, 1, 0}}, 4, q_analog(4)},
  };
  Rng rng(0xacc9);
  for (const Probe& probe : probes) {
    Degree ds = make_delta_s(probe.delta, probe.spec);
    QLaurent n = refined_total(draw_solutions(ds, rng));
    if (!(n == probe.n_expect)) {
      note = "boundary count off";
      return false;
    }
    QLaurent r = classical_invariant(probe.delta, probe.spec, n, 4);
    QLaurent display =
        div_exact(bracket_minus(Rat(probe.m_vertex, 2)).scaled(2), bracket_minus(Rat(1)));
    if (!(r == display)) {
      note = "invariant differs from its closed value";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  Runner r;
  r.run(1, "line: unit count and square-root invariant, 5 draws", 1.0, c1_line);
  r.run(2, "conic counts unchanged across 10 generic draws per split", 10.0, c2_invariance);
  r.run(3, "every |det| equals the product of vertex multiplicities", 0.0, c3_determinants);
  r.run(4, "angular double sum: closed form vs literal, 4 regions", 5.0, c4_s_lemma);
  r.run(5, "parabola counts and the root aggregation identity", 0.0, c5_parabola);
  r.run(6, "joined branches weigh the product of their parts", 0.0, c6_branch_lemma);
  r.run(7, "splitting recursion equals its closed product form", 0.0, c7_first_order);
  r.run(8, "quantum index: models, half-integrality, functoriality", 0.0, c8_quantum_index);
  r.run(9, "split parabola invariant matches its closed value", 0.0, c9_parabola_invariant);
  if (r.failed == 0)
    std::printf("all 9 criteria pass\n");
  else
    std::printf("%d criteria FAILED\n", r.failed);
  return r.failed;
}
