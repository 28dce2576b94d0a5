#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtrop/enumerate.hpp"
#include "qtrop/invariants.hpp"
#include "qtrop/json_io.hpp"
#include "qtrop/localcount.hpp"
#include "qtrop/qindex.hpp"
#include "qtrop/realstruct.hpp"

using namespace qtrop;

// Exit contract: 0 pass, 1 a checked property fails, 2 bad input or no
// generic configuration, 3 counts differ across generic moment draws.
namespace {

constexpr int kExitProperty = 1;
constexpr int kExitInput = 2;
constexpr int kExitVariance = 3;

int worker_count() {
  const char* env = std::getenv("QTROP_WORKERS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

Degree resolve_degree(const std::string& degree_arg, const std::string& degree_file) {
  if (!degree_file.empty()) {
    std::ifstream in(degree_file);
    if (!in) throw ParseError("cannot open " + degree_file);
    Json j = Json::parse(in);
    return degree_from_json(j);
  }
  if (degree_arg.rfind("d=", 0) == 0) {
    std::size_t used = 0;
    long long d = 0;
    try {
      d = std::stoll(degree_arg.substr(2), &used);
    } catch (const std::exception&) {
      throw ParseError("degree must be d=<n> or come from --degree-file");
    }
    if (used != degree_arg.size() - 2 || d < 1)
      throw ParseError("degree must be d=<n> or come from --degree-file");
    return standard_degree(d);
  }
  throw ParseError("degree must be d=<n> or come from --degree-file");
}

SplitSpec resolve_split(const std::string& s_arg, const Degree& d) {
  if (s_arg.empty()) return SplitSpec::zeros(d);
  SplitSpec spec{{}};
  std::stringstream ss(s_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) spec.s.push_back(std::stoll(tok));
  spec.validate(d);
  return spec;
}

std::string degree_text(const Degree& d) {
  std::string out = "{";
  for (int i = 0; i < d.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(d.vectors()[i].x) + "," + std::to_string(d.vectors()[i].y) + ")";
  }
  return out + "}";
}

std::int64_t total_lattice_length(const Degree& d) {
  std::int64_t m = 0;
  for (const Vec2& v : d.vectors()) m += lattice_length(v);
  return m;
}

std::vector<std::int64_t> vertex_mults(const TropCurve& c) {
  std::vector<std::int64_t> out;
  for (int v = c.comb().m; v < c.comb().num_vertices(); ++v) out.push_back(c.vertex_mult(v));
  return out;
}

struct Trial {
  QLaurent n;
  std::vector<Solution> sols;
  std::vector<Rat> mu;
};

Trial run_trial(const Degree& ds, std::uint64_t seed) {
  // (2m-5)!! trivalent shapes; past nine ends a draw stops being interactive.
  if (ds.size() > 9) throw ParseError("degrees with more than nine ends are not supported");
  Rng rng(seed);
  for (int retry = 0; retry < 8; ++retry) {
    try {
      auto mu = random_generic_moments(ds, rng);
      auto sols = enumerate_solutions(ds, mu);
      QLaurent n(0);
      for (const Solution& s : sols) n += s.curve.refined_mult();
      return {std::move(n), std::move(sols), std::move(mu)};
    } catch (const DegenerateConfig&) {
    }
  }
  throw DegenerateConfig("no generic moments after retries");
}

struct CountArgs {
  std::string degree = "d=1";
  std::string degree_file;
  std::string s;
  int trials = 1;
  std::uint64_t seed = 9001;
  bool json = false;
};

int run_count(const CountArgs& a) {
  Degree delta = resolve_degree(a.degree, a.degree_file);
  SplitSpec spec = resolve_split(a.s, delta);
  Degree ds = make_delta_s(delta, spec);

  std::vector<Trial> trials(static_cast<std::size_t>(a.trials));
  int workers = worker_count();
  if (workers > 1) {
    std::vector<std::future<Trial>> futs;
    for (int t = 0; t < a.trials; ++t)
      futs.push_back(std::async(std::launch::async, run_trial, ds, a.seed + t));
    for (int t = 0; t < a.trials; ++t) trials[t] = futs[t].get();
  } else {
    for (int t = 0; t < a.trials; ++t) trials[t] = run_trial(ds, a.seed + t);
  }

  for (int t = 1; t < a.trials; ++t)
    if (!(trials[t].n == trials[0].n)) {
      std::cerr << "count varies with the moments: trial 0 gives "
                << qlaurent_to_text(trials[0].n) << ", trial " << t << " gives "
                << qlaurent_to_text(trials[t].n) << "\n";
      return kExitVariance;
    }

  QLaurent r = classical_invariant(delta, spec, trials[0].n, total_lattice_length(delta));

  if (a.json) {
    Json per_curve = Json::array();
    for (const Solution& sol : trials[0].sols)
      per_curve.push_back({{"abs_det", sol.abs_det.str()},
                           {"vertex_mults", vertex_mults(sol.curve)},
                           {"refined_mult", qlaurent_to_json(sol.curve.refined_mult())}});
    Json out{{"seed", a.seed},
             {"trials", a.trials},
             {"degree", degree_to_json(delta)},
             {"s", spec.s},
             {"split_degree", degree_to_json(ds)},
             {"N_trop", qlaurent_to_json(trials[0].n)},
             {"R_delta_s", qlaurent_to_json(r)},
             {"per_curve", per_curve}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "seed = " << a.seed << "\n";
    std::cout << "degree " << degree_text(delta) << ", split degree " << degree_text(ds) << "\n";
    std::cout << "N_trop = " << qlaurent_to_text(trials[0].n) << "\n";
    std::cout << "R = " << qlaurent_to_text(r) << "\n";
    if (a.trials > 1)
      std::cout << "count identical across " << a.trials << " generic moment draws\n";
  }
  return 0;
}

struct EnumArgs {
  std::string degree = "d=1";
  std::string degree_file;
  std::string s;
  std::uint64_t seed = 9001;
  bool json = false;
};

int run_enumerate(const EnumArgs& a) {
  Degree delta = resolve_degree(a.degree, a.degree_file);
  SplitSpec spec = resolve_split(a.s, delta);
  Degree ds = make_delta_s(delta, spec);
  Trial t = run_trial(ds, a.seed);

  if (a.json) {
    Json mu = Json::array();
    for (const Rat& x : t.mu) mu.push_back(rat_to_json(x));
    Json curves = Json::array();
    for (const Solution& sol : t.sols)
      curves.push_back({{"abs_det", sol.abs_det.str()},
                        {"vertex_mults", vertex_mults(sol.curve)},
                        {"refined_mult", qlaurent_to_json(sol.curve.refined_mult())}});
    Json out{{"seed", a.seed},
             {"degree", degree_to_json(ds)},
             {"mu", mu},
             {"N_trop", qlaurent_to_json(t.n)},
             {"curves", curves}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "seed = " << a.seed << "\n";
    std::cout << "degree " << degree_text(ds) << ", moments of ends 2..m:";
    for (const Rat& x : t.mu) std::cout << " " << rat_to_string(x);
    std::cout << "\n";
    for (std::size_t i = 0; i < t.sols.size(); ++i) {
      const Solution& sol = t.sols[i];
      std::cout << "curve " << i << ": |det| = " << sol.abs_det << ", vertex mults";
      for (std::int64_t m : vertex_mults(sol.curve)) std::cout << " " << m;
      std::cout << ", refined = " << qlaurent_to_text(sol.curve.refined_mult()) << "\n";
    }
    std::cout << "N_trop = " << qlaurent_to_text(t.n) << "\n";
  }
  return 0;
}

struct QindexArgs {
  std::string file;
  double tol = 1e-6;
  bool json = false;
};

int run_qindex(const QindexArgs& a) {
  Json in;
  if (!a.file.empty()) {
    std::ifstream f(a.file);
    if (!f) throw ParseError("cannot open " + a.file);
    in = Json::parse(f);
  } else {
    in = Json::parse(std::cin);
  }
  Json batch = in.is_array() ? in : Json::array({in});

  bool failed = false;
  Json out = Json::array();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    RealParam p = real_param_from_json(batch[i]);
    p.validate();  // structural errors are input errors and throw out of here
    Json row;
    try {
      LogArea area = log_area(p);
      QuantumIndex qi = quantum_index(p, a.tol);
      row = Json{{"area_over_pi2", area.numeric_value},
                 {"k", rat_to_string(qi.k)},
                 {"residual", qi.residual}};
    } catch (const std::runtime_error& e) {  // NotHalfInteger, degenerate moments
      row = Json{{"error", e.what()}};
      failed = true;
    }
    out.push_back(row);
    if (!a.json) {
      std::cout << "curve " << i << ": ";
      if (row.contains("error"))
        std::cout << "error: " << row["error"].get<std::string>() << "\n";
      else
        std::cout << "area/pi^2 = " << row["area_over_pi2"].get<double>()
                  << ", k = " << row["k"].get<std::string>()
                  << ", residual = " << row["residual"].get<double>() << "\n";
    }
  }
  if (a.json) std::cout << out.dump(2) << "\n";
  return failed ? kExitProperty : 0;
}

struct LocalArgs {
  std::string problem;
  std::int64_t n = 1;
  std::int64_t l1 = 1;
  std::int64_t m = 2;
  std::string theta = "1/3";
  std::string phi = "1/4";
  bool json = false;
};

int run_local(const LocalArgs& a) {
  Rat theta = rat_from_string(a.theta);
  QLaurent value, literal;
  bool has_literal = false;
  if (a.problem == "s-sum") {
    Rat phi = rat_from_string(a.phi);
    value = s_sum_closed(Rat(a.n), theta, phi);
    literal = s_sum_bruteforce(a.n, theta, phi);
    has_literal = true;
  } else if (a.problem == "parabola") {
    value = parabola_count_primitive(a.l1, a.m, theta);
    literal = parabola_bruteforce(a.l1, a.m, theta);
    has_literal = true;
  } else if (a.problem == "ellipse") {
    Rat phi = rat_from_string(a.phi);
    value = ellipse_count_full(a.m, theta, phi);
  } else if (a.problem == "trivalent") {
    value = trivalent_real_count(a.m);
  } else {
    throw ParseError("problem must be s-sum, parabola, ellipse or trivalent");
  }

  if (a.json) {
    Json out{{"problem", a.problem}, {"value", qlaurent_to_json(value)}};
    if (has_literal) out["literal"] = qlaurent_to_json(literal);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << a.problem << " = " << qlaurent_to_text(value) << "\n";
    if (has_literal) std::cout << "literal sum = " << qlaurent_to_text(literal) << "\n";
  }
  if (has_literal && !(value == literal)) {
    std::cerr << "closed form and literal sum disagree\n";
    return kExitProperty;
  }
  return 0;
}

struct RealStructArgs {
  std::string degree = "d=1";
  std::string degree_file;
  std::string s;
  std::uint64_t seed = 9001;
  bool json = false;
};

int run_real_structures(const RealStructArgs& a) {
  Degree delta = resolve_degree(a.degree, a.degree_file);
  SplitSpec spec = resolve_split(a.s, delta);
  Degree ds = make_delta_s(delta, spec);
  Trial t = run_trial(ds, a.seed);

  Json jcurves = Json::array();
  if (!a.json) std::cout << "seed = " << a.seed << "\n";
  for (std::size_t i = 0; i < t.sols.size(); ++i) {
    const TropCurve& c = t.sols[i].curve;
    EvenSubgraph even = compute_even_subgraph(c);
    auto sets = enumerate_admissible(even);
    for (const AdmissibleSet& rset : sets) {
      RealTropCurve rc = build_real_curve(c, even, rset);
      if (!rc.balanced() || !rc.involution_ok())
        throw std::logic_error("assembled real curve is inconsistent");
    }
    if (a.json) {
      Json structures = Json::array();
      for (const AdmissibleSet& rset : sets) structures.push_back(rset.edge_set());
      jcurves.push_back({{"even_ends", even.even_leaves.size()},
                         {"components", even.components.size()},
                         {"structures", structures}});
    } else {
      std::cout << "curve " << i << ": " << even.even_leaves.size() << " even ends, "
                << even.components.size() << " components, " << sets.size()
                << " real structures\n";
      for (std::size_t k = 0; k < sets.size(); ++k) {
        std::cout << "  structure " << k << ": splitting edges";
        for (int e : sets[k].edge_set()) std::cout << " " << e;
        std::cout << "\n";
      }
    }
  }
  if (a.json) {
    Json out{{"seed", a.seed}, {"degree", degree_to_json(ds)}, {"curves", jcurves}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

// -------- verify: the cross-module oracle suite --------

struct CheckResult {
  bool ok = true;
  int cases = 0;
  Json repro;
  std::string detail;
  std::vector<std::string> extra;  // optional per-region lines
};

int s_region_of(const Rat& theta, const Rat& phi) {
  if (theta < phi) return theta + phi < 1 ? 0 : 3;
  return theta + phi > 1 ? 1 : 2;
}

CheckResult check_s_lemma(Rng& rng, bool regions) {
  CheckResult res;
  const char* names[4] = {"theta<phi, sum<1", "theta>phi, sum>1", "theta>phi, sum<1",
                          "theta<phi, sum>1"};
  for (int region = 0; region < 4; ++region) {
    int done = 0;
    while (done < 6) {
      Rat theta = rng.unit_rat(97), phi = rng.unit_rat(97);
      if (theta == phi || theta + phi == 1 || s_region_of(theta, phi) != region) continue;
      for (std::int64_t n = 1; n <= 4; ++n) {
        ++res.cases;
        if (!(s_sum_closed(Rat(n), theta, phi) == s_sum_bruteforce(n, theta, phi))) {
          res.ok = false;
          res.repro = {{"check", "s-lemma"},
                       {"n", n},
                       {"theta", rat_to_string(theta)},
                       {"phi", rat_to_string(phi)}};
          return res;
        }
      }
      ++done;
    }
    if (regions)
      res.extra.push_back(std::string("region ") + names[region] + ": 6 draws x n in 1..4");
  }
  return res;
}

CheckResult check_parabola(Rng& rng, bool) {
  CheckResult res;
  for (std::int64_t l1 = 1; l1 <= 3; ++l1)
    for (std::int64_t h1 = 1; h1 <= 3; ++h1)
      for (int rep = 0; rep < 3; ++rep) {
        Rat theta = rng.unit_rat(97);
        std::int64_t m = 2 * l1 * h1;
        ++res.cases;
        if (!(parabola_count_primitive(l1, m, theta) == parabola_bruteforce(l1, m, theta))) {
          res.ok = false;
          res.repro = {{"check", "parabola"},
                       {"l1", l1},
                       {"m", m},
                       {"theta", rat_to_string(theta)}};
          return res;
        }
      }
  for (std::int64_t l = 1; l <= 4; ++l)
    for (int rep = 0; rep < 3; ++rep) {
      Rat theta = rng.unit_rat(97);
      QLaurent sum(0);
      for (std::int64_t k = 0; k < l; ++k)
        sum += bracket_plus(Rat(2 * theta + 2 * k - l));
      QLaurent closed =
          div_exact(bracket_plus(Rat(2 * theta - 1)) * bracket_minus(Rat(l)), bracket_minus(Rat(1)));
      ++res.cases;
      if (!(sum == closed)) {
        res.ok = false;
        res.repro = {{"check", "parabola"}, {"l", l}, {"theta", rat_to_string(theta)}};
        return res;
      }
    }
  return res;
}

CheckResult check_det_product(Rng& rng, bool) {
  CheckResult res;
  std::vector<Degree> degrees{standard_degree(1), standard_degree(2),
                              make_delta_s(standard_degree(2), SplitSpec{{1, 0, 0}}),
                              make_delta_s(Degree({{-1, 1}, {1, 1}, {0, -1}, {0, -1}}),
                                           SplitSpec{{0, 0, 1}})};
  for (const Degree& d : degrees)
    for (int draw = 0; draw < 2; ++draw) {
      auto mu = random_generic_moments(d, rng);
      for (const Solution& sol : enumerate_solutions(d, mu)) {
        Int prod = 1;
        for (std::int64_t m : vertex_mults(sol.curve)) prod *= m;
        Rat menelaus(0);
        bool moments_ok = true;
        auto adj = sol.curve.comb().adjacency();
        for (int leaf = 0; leaf < d.size(); ++leaf) {
          Vec2 n = sol.curve.end_slope(leaf + 1);
          RatPoint pos = sol.curve.position(adj[leaf][0].first);
          Rat mom = Rat(n.x) * pos[1] - Rat(n.y) * pos[0];
          menelaus += mom;
          if (leaf > 0) moments_ok = moments_ok && mom == mu[leaf - 1];
        }
        ++res.cases;
        if (sol.abs_det != prod || menelaus != 0 || !moments_ok) {
          res.ok = false;
          Json jmu = Json::array();
          for (const Rat& x : mu) jmu.push_back(rat_to_string(x));
          res.repro = {{"check", "det-product"}, {"degree", degree_to_json(d)}, {"mu", jmu}};
          res.detail = sol.abs_det != prod ? "determinant is not the product of vertex mults"
                       : menelaus != 0     ? "moments do not sum to zero"
                                           : "recomputed moments disagree with the input";
          return res;
        }
      }
    }
  return res;
}

CheckResult check_branch_lemma(Rng& rng, bool) {
  CheckResult res;
  QLaurent m_half = bracket_minus(Rat(2));
  int done = 0;
  for (int attempt = 0; attempt < 500 && done < 25; ++attempt) {
    std::vector<BranchData> pool;
    std::int64_t leaves = rng.int_in(2, 5);
    for (std::int64_t i = 0; i < leaves; ++i) pool.push_back(leaf_branch(rng.unit_rat(199)));
    try {
      while (pool.size() > 1) {
        std::size_t i = static_cast<std::size_t>(
            rng.int_in(0, static_cast<std::int64_t>(pool.size()) - 2));
        BranchData joined = merge_branches(pool[i], pool[i + 1], 4);
        ++res.cases;
        if (!(branch_invariant(joined) ==
              m_half * (branch_invariant(pool[i]) * branch_invariant(pool[i + 1])))) {
          res.ok = false;
          Json th = Json::array();
          for (const Rat& t : pool[i].theta) th.push_back(rat_to_string(t));
          for (const Rat& t : pool[i + 1].theta) th.push_back(rat_to_string(t));
          res.repro = {{"check", "branch-lemma"}, {"thetas", th}, {"m", 4}};
          return res;
        }
        pool[i] = joined;
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      }
      ++done;
    } catch (const OnRegionBoundary&) {
    }
  }
  return res;
}

CheckResult check_first_order(Rng& rng, bool) {
  CheckResult res;
  struct Config {
    Degree delta;
    SplitSpec spec;
  };
  std::vector<Config> configs{
      {standard_degree(1), SplitSpec::zeros(standard_degree(1))},
      {Degree({{-1, 1}, {1, 1}, {0, -1}, {0, -1}}), SplitSpec{{0, 0, 1}}},
      {standard_degree(2), SplitSpec{{1, 0, 0}}},
  };
  for (const Config& cfg : configs) {
    Degree ds = make_delta_s(cfg.delta, cfg.spec);
    std::size_t p = static_cast<std::size_t>(cfg.spec.total());
    auto mu = random_generic_moments(ds, rng);
    for (const Solution& sol : enumerate_solutions(ds, mu)) {
      QLaurent closed(4);
      for (std::int64_t m : vertex_mults(sol.curve)) closed *= bracket_minus(Rat(m, 2));
      closed = div_exact(closed.scaled(Rat(Int(1) << p)),
                         pow(bracket_minus(Rat(1)), static_cast<unsigned long>(p)));
      QLaurent got;
      for (int tries = 0;; ++tries) {
        std::vector<Rat> th;
        for (std::size_t i = 0; i < p; ++i) th.push_back(rng.unit_rat(199));
        try {
          got = first_order_multiplicity(sol.curve, th);
          break;
        } catch (const OnRegionBoundary&) {
          if (tries > 32) throw;
        }
      }
      ++res.cases;
      if (!(got == closed)) {
        res.ok = false;
        res.repro = {{"check", "first-order"}, {"degree", degree_to_json(ds)}};
        return res;
      }
    }
  }
  return res;
}

RealParam random_real_param(Rng& rng) {
  while (true) {
    RealParam p;
    std::int64_t pairs = rng.int_in(0, 2);
    std::int64_t finite = rng.int_in(pairs == 0 ? 1 : 0, 3);
    std::set<Rat> alphas;
    std::set<std::pair<Rat, Rat>> betas;
    Vec2 total{0, 0};
    std::int64_t size = 0;
    bool ok = true;
    for (std::int64_t i = 0; i < finite && ok; ++i) {
      Vec2 n{rng.int_in(-2, 2), rng.int_in(-2, 2)};
      Rat a = rng.small_rat(6, 5);
      if ((n.x == 0 && n.y == 0) || !alphas.insert(a).second) {
        ok = false;
        break;
      }
      p.real_points.push_back({a, n});
      total = total + n;
      size += lattice_length(n);
    }
    for (std::int64_t j = 0; j < pairs && ok; ++j) {
      Vec2 n{rng.int_in(-2, 2), rng.int_in(-2, 2)};
      Rat re = rng.small_rat(4, 4);
      Rat im = Rat(rng.int_in(1, 12), rng.int_in(1, 4));
      if ((n.x == 0 && n.y == 0) || !betas.insert({re, im}).second) {
        ok = false;
        break;
      }
      p.complex_pairs.push_back({re, im, n});
      total = total + n;
      total = total + n;
      size += 2 * lattice_length(n);
    }
    if (!ok) continue;
    Vec2 last{-total.x, -total.y};
    if ((last.x == 0 && last.y == 0) || size + lattice_length(last) > 8) continue;
    p.real_points.push_back({std::nullopt, last});
    return p;
  }
}

CheckResult check_half_integrality(Rng& rng, bool) {
  CheckResult res;
  while (res.cases < 30) {
    RealParam p = random_real_param(rng);
    try {
      QuantumIndex qi = quantum_index(p);
      ++res.cases;
      if (qi.residual >= 1e-9) {
        res.ok = false;
        res.repro = {{"check", "half-integer"}, {"curve", real_param_to_json(p)}};
        res.detail = "residual " + std::to_string(qi.residual);
        return res;
      }
    } catch (const RealMomentDegenerate&) {
    } catch (const NotHalfInteger& e) {
      res.ok = false;
      res.repro = {{"check", "half-integer"}, {"curve", real_param_to_json(p)}};
      res.detail = e.what();
      return res;
    }
  }
  return res;
}

CheckResult check_functoriality(Rng& rng, bool) {
  CheckResult res;
  while (res.cases < 12) {
    RealParam p = random_real_param(rng);
    IntMat2 m{rng.int_in(-2, 2), rng.int_in(-2, 2), rng.int_in(-2, 2), rng.int_in(-2, 2)};
    if (m.det() == 0) continue;
    double before = log_area(p).numeric_value;
    double after = log_area(monomial_pushforward(p, m)).numeric_value;
    double want = m.det() * before;
    ++res.cases;
    if (std::abs(after - want) > 1e-10 * std::max(1.0, std::abs(want))) {
      res.ok = false;
      res.repro = {{"check", "functoriality"},
                   {"matrix", {m.a, m.b, m.c, m.d}},
                   {"curve", real_param_to_json(p)}};
      return res;
    }
  }
  return res;
}

CheckResult check_invariance(Rng& rng, bool) {
  CheckResult res;
  struct Config {
    Degree ds;
    QLaurent expect;
  };
  std::vector<Config> configs{
      {standard_degree(1), QLaurent(1)},
      {make_delta_s(standard_degree(2), SplitSpec{{1, 0, 0}}), q_analog(2)},
  };
  for (const Config& cfg : configs)
    for (int draw = 0; draw < 3; ++draw) {
      Trial t = run_trial(cfg.ds, rng.seed() + static_cast<std::uint64_t>(res.cases));
      ++res.cases;
      if (!(t.n == cfg.expect)) {
        res.ok = false;
        res.repro = {{"check", "invariance"}, {"degree", degree_to_json(cfg.ds)}};
        res.detail = "got " + qlaurent_to_text(t.n) + ", expected " + qlaurent_to_text(cfg.expect);
        return res;
      }
    }
  return res;
}

struct VerifyArgs {
  std::uint64_t seed = 42;
  std::string only;
  bool regions = false;
};

int run_verify(const VerifyArgs& a) {
  struct Check {
    std::string name;
    std::function<CheckResult(Rng&, bool)> fn;
  };
  std::vector<Check> checks{
      {"s-lemma", check_s_lemma},         {"parabola", check_parabola},
      {"det-product", check_det_product}, {"branch-lemma", check_branch_lemma},
      {"first-order", check_first_order}, {"half-integer", check_half_integrality},
      {"functoriality", check_functoriality}, {"invariance", check_invariance},
  };
  std::cout << "seed = " << a.seed << "\n";
  bool all_ok = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (!a.only.empty() && checks[i].name.find(a.only) == std::string::npos) continue;
    Rng rng(a.seed + 1000 * (i + 1));
    CheckResult res = checks[i].fn(rng, a.regions);
    std::cout << (res.ok ? "PASS" : "FAIL") << "  " << checks[i].name << "  (" << res.cases
              << " cases)\n";
    for (const std::string& line : res.extra) std::cout << "      " << line << "\n";
    if (!res.ok) {
      all_ok = false;
      if (!res.detail.empty()) std::cout << "      " << res.detail << "\n";
      std::cout << "reproducer: " << res.repro.dump() << "\n";
    }
  }
  return all_ok ? 0 : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact refined counts of plane tropical curves and their real forms"};
  app.require_subcommand(1);

  CountArgs count_args;
  CLI::App* count = app.add_subcommand("count", "boundary count and refined invariant");
  count->add_option("--degree", count_args.degree, "d=<n> for the standard triangle");
  count->add_option("--degree-file", count_args.degree_file, "JSON file with {\"vectors\": ...}");
  count->add_option("--s", count_args.s, "conjugate pairs per side, e.g. 1,0,0");
  count->add_option("--trials", count_args.trials, "independent generic moment draws")
      ->check(CLI::PositiveNumber);
  count->add_option("--seed", count_args.seed, "random seed");
  count->add_flag("--json", count_args.json, "machine output");

  EnumArgs enum_args;
  CLI::App* enumerate = app.add_subcommand("enumerate", "curves through one generic draw");
  enumerate->add_option("--degree", enum_args.degree, "d=<n> for the standard triangle");
  enumerate->add_option("--degree-file", enum_args.degree_file, "JSON degree file");
  enumerate->add_option("--s", enum_args.s, "conjugate pairs per side");
  enumerate->add_option("--seed", enum_args.seed, "random seed");
  enumerate->add_flag("--json", enum_args.json, "machine output");

  QindexArgs qindex_args;
  CLI::App* qindex = app.add_subcommand("qindex", "log-area and quantum index of curves");
  qindex->add_option("--file", qindex_args.file, "JSON input (default: stdin)");
  qindex->add_option("--tol", qindex_args.tol, "half-integrality tolerance");
  qindex->add_flag("--json", qindex_args.json, "machine output");

  LocalArgs local_args;
  CLI::App* local = app.add_subcommand("local", "closed forms of the local counts");
  local->add_option("--problem", local_args.problem, "s-sum | parabola | ellipse | trivalent")
      ->required();
  local->add_option("--n", local_args.n, "square side for s-sum");
  local->add_option("--l1", local_args.l1, "primitive direction length");
  local->add_option("--m", local_args.m, "vertex multiplicity");
  local->add_option("--theta", local_args.theta, "angular argument, e.g. 1/5");
  local->add_option("--phi", local_args.phi, "second angular argument");
  local->add_flag("--json", local_args.json, "machine output");

  RealStructArgs rs_args;
  CLI::App* rs = app.add_subcommand("real-structures", "splitting structures per curve");
  rs->add_option("--degree", rs_args.degree, "d=<n> for the standard triangle");
  rs->add_option("--degree-file", rs_args.degree_file, "JSON degree file");
  rs->add_option("--s", rs_args.s, "conjugate pairs per side");
  rs->add_option("--seed", rs_args.seed, "random seed");
  rs->add_flag("--json", rs_args.json, "machine output");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "cross-module oracle suite");
  verify->add_option("--seed", verify_args.seed, "random seed");
  verify->add_option("--only", verify_args.only, "run checks whose name contains this");
  verify->add_flag("--regions", verify_args.regions, "per-region breakdown for the s-lemma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*count) return run_count(count_args);
    if (*enumerate) return run_enumerate(enum_args);
    if (*qindex) return run_qindex(qindex_args);
    if (*local) return run_local(local_args);
    if (*rs) return run_real_structures(rs_args);
    if (*verify) return run_verify(verify_args);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateConfig& e) {
    std::cerr << "no generic configuration: " << e.what() << "\n";
    return kExitInput;
  } catch (const GenericityFailure& e) {
    std::cerr << "no generic configuration: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "property failure: " << e.what() << "\n";
    return kExitProperty;
  }
  return 0;
}
