#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrop/lattice.hpp"
#include "qtrop/localcount.hpp"
#include "qtrop/qlaurent.hpp"
#include "qtrop/realstruct.hpp"
#include "qtrop/tropcurve.hpp"

namespace qtrop {

// Laurent polynomial over a power of <1>_-.  Sums and comparisons clear
// denominators, so nothing is divided until cleared() is asked for.
struct QFrac {
  QLaurent num{0};
  int onemin_pow = 0;

  QLaurent cleared() const {
    return div_exact(num, pow(bracket_minus(Rat(1)), static_cast<unsigned long>(onemin_pow)));
  }

  friend QFrac operator*(const QFrac& a, const QFrac& b) {
    return {a.num * b.num, a.onemin_pow + b.onemin_pow};
  }
  friend QFrac operator*(const QLaurent& c, const QFrac& a) { return {c * a.num, a.onemin_pow}; }
  friend QFrac operator+(const QFrac& a, const QFrac& b) {
    QLaurent om = bracket_minus(Rat(1));
    int k = std::max(a.onemin_pow, b.onemin_pow);
    return {a.num * pow(om, static_cast<unsigned long>(k - a.onemin_pow)) +
                b.num * pow(om, static_cast<unsigned long>(k - b.onemin_pow)),
            k};
  }
  friend bool operator==(const QFrac& a, const QFrac& b) {
    QLaurent om = bracket_minus(Rat(1));
    return a.num * pow(om, static_cast<unsigned long>(b.onemin_pow)) ==
           b.num * pow(om, static_cast<unsigned long>(a.onemin_pow));
  }
};

// Weight data of a conjugated subtree hanging off the fixed part of a real
// curve: R collects the contributions whose root lifts stay fixed, C those
// whose root lifts form a conjugate pair, and theta lists the angular
// arguments the subtree can present to its attachment vertex.
struct BranchData {
  QLaurent R{0};
  QLaurent C{0};
  std::vector<Rat> theta;
};

// A single conjugated end with angular argument theta in (0,1).
inline BranchData leaf_branch(const Rat& theta) {
  require_unit_interval(theta, "theta");
  return BranchData{QLaurent(0), QLaurent(1), {theta}};
}

// Join two conjugated subtrees at a vertex of multiplicity m.  All slopes at
// such a vertex are even, so m is a positive multiple of four; each pair of
// presented arguments recombines into the difference |t1-t2| and the sum
// t1+t2 reduced into (0,1).  Arguments meeting the region walls t1 = t2 or
// t1 + t2 = 1 are rejected.
inline BranchData merge_branches(const BranchData& b1, const BranchData& b2, std::int64_t m) {
  if (m <= 0 || m % 4 != 0)
    throw std::invalid_argument("merge multiplicity must be a positive multiple of four");
  QLaurent half_m = bracket_minus(Rat(m, 2));
  QLaurent cross = div_exact(half_m, bracket_minus(Rat(1)));

  BranchData out;
  out.R = half_m * b1.R * b2.R;
  for (const Rat& t1 : b1.theta)
    for (const Rat& t2 : b2.theta) {
      if (t1 == t2 || t1 + t2 == 1)
        throw OnRegionBoundary("presented arguments hit a region wall");
      out.R += s_sum_closed(Rat(m, 4), t1, t2) * b1.C * b2.C;
      out.theta.push_back(abs(Rat(t1 - t2)));
      out.theta.push_back(t1 + t2 < 1 ? Rat(t1 + t2) : Rat(t1 + t2 - 1));
    }
  QLaurent mixed(0);
  for (const Rat& t1 : b1.theta) mixed += bracket_plus(Rat(2 * t1 - 1)) * b1.C * b2.R;
  for (const Rat& t2 : b2.theta) mixed += bracket_plus(Rat(2 * t2 - 1)) * b2.C * b1.R;
  out.R += cross * mixed;
  out.C = (b1.C * b2.C).scaled(Rat(m, 2));
  return out;
}

// Total weight of a subtree once its presented arguments are paired with the
// attachment vertex: R + (C/<1>_-) sum_t <2t-1>_+.  Collapses under merging:
// the invariant of a join is <m/2>_- times the product of the invariants.
inline QFrac branch_invariant(const BranchData& b) {
  QLaurent args(0);
  for (const Rat& t : b.theta) args += bracket_plus(Rat(2 * t - 1));
  return QFrac{b.R * bracket_minus(Rat(1)) + b.C * args, 1};
}

namespace detail {

inline BranchData branch_above(const TropCurve& base, const EvenComponent& comp,
                               const std::map<int, Rat>& theta_at, int e) {
  auto it = comp.children.find(e);
  if (it == comp.children.end()) return leaf_branch(theta_at.at(e));
  BranchData left = branch_above(base, comp, theta_at, it->second[0]);
  BranchData right = branch_above(base, comp, theta_at, it->second[1]);
  return merge_branches(left, right, base.vertex_mult(comp.far_vertex.at(e)));
}

}  // namespace detail

// Refined count of oriented real curves over one trivalent base curve,
// summed over all of its real structures.  Takes one angular argument per
// even end; runs the splitting recursion at those arguments, checks that the
// aggregate collapses to 4 prod_V <m_V/2>_- prod_i <2 theta_i - 1>_+ over
// <1>_-^p, then returns the collapsed value with every argument at 1/2,
// where <0>_+ = 2 turns each <2 theta - 1>_+ into a factor 2.
inline QLaurent first_order_multiplicity(const TropCurve& base, const std::vector<Rat>& thetas) {
  const CombType& comb = base.comb();
  for (int v = comb.m; v < comb.num_vertices(); ++v)
    if (base.vertex_mult(v) == 0) throw FlatVertex("flat vertex has no refined weight");

  EvenSubgraph even = compute_even_subgraph(base);
  std::size_t p = even.even_leaves.size();
  if (thetas.size() != p)
    throw std::invalid_argument("need one angular argument per even end");
  std::map<int, Rat> theta_at;
  for (std::size_t i = 0; i < p; ++i) {
    require_unit_interval(thetas[i], "theta");
    theta_at[base.end_edge(even.even_leaves[i])] = thetas[i];
  }

  auto adj = comb.adjacency();
  QFrac grand{QLaurent(0), 0};
  for (const AdmissibleSet& rset : enumerate_admissible(even)) {
    auto dbl = detail::doubled_edges(comb, even, rset);
    std::vector<char> vdbl(comb.num_vertices(), 0);
    for (const EvenComponent& c : even.components)
      for (const auto& [e, far] : c.far_vertex)
        if (dbl[e]) vdbl[far] = 1;

    std::map<int, BranchData> branch;
    for (const SplitPoint& pt : rset.points) {
      const EvenComponent* comp = nullptr;
      for (const EvenComponent& c : even.components)
        if (std::find(c.edges.begin(), c.edges.end(), pt.edge) != c.edges.end()) comp = &c;
      branch.emplace(pt.edge, detail::branch_above(base, *comp, theta_at, pt.edge));
    }

    QFrac contrib{QLaurent(4), 0};
    for (int v = comb.m; v < comb.num_vertices(); ++v) {
      if (vdbl[v]) continue;
      std::vector<int> doubled;
      for (auto [w, e] : adj[v])
        if (dbl[e]) doubled.push_back(e);
      std::int64_t mv = base.vertex_mult(v);
      if (doubled.empty()) {
        contrib.num *= bracket_minus(Rat(mv, 2));
      } else if (doubled.size() == 1) {
        // quadrivalent point: the splitting point sits on the doubled edge
        const BranchData& b = branch.at(doubled[0]);
        QLaurent args(0);
        for (const Rat& t : b.theta) args += bracket_plus(Rat(2 * t - 1));
        contrib.num *= args * bracket_minus(Rat(mv, 2)) * b.C;
        contrib.onemin_pow += 1;
      } else if (doubled.size() == 2) {
        // pentavalent point: both subtrees split right at the vertex
        const BranchData& b1 = branch.at(doubled[0]);
        const BranchData& b2 = branch.at(doubled[1]);
        if (mv % 4 != 0) throw std::logic_error("pentavalent vertex multiplicity not 4h");
        QLaurent paired(0);
        for (const Rat& t1 : b1.theta)
          for (const Rat& t2 : b2.theta) {
            if (t1 == t2 || t1 + t2 == 1)
              throw OnRegionBoundary("presented arguments hit a region wall");
            paired += s_sum_closed(Rat(mv, 4), t1, t2);
          }
        contrib.num *= paired * b1.C * b2.C;
      } else {
        throw std::logic_error("fixed vertex with three doubled edges");
      }
    }
    grand = grand + contrib;
  }

  QLaurent closed(4);
  for (int v = comb.m; v < comb.num_vertices(); ++v)
    closed *= bracket_minus(Rat(base.vertex_mult(v), 2));
  QLaurent closed_at_args = closed;
  for (const Rat& t : thetas) closed_at_args *= bracket_plus(Rat(2 * t - 1));
  if (!(grand == QFrac{closed_at_args, static_cast<int>(p)}))
    throw std::logic_error("splitting recursion disagrees with its product form");

  QLaurent om_p = pow(bracket_minus(Rat(1)), static_cast<unsigned long>(p));
  return div_exact(closed.scaled(Rat(Int(1) << p)), om_p);
}

// Refined invariant of the plane degree from the refined boundary count
// n_trop of its split degree.  m is the total lattice length of delta; with
// p ends split into conjugate pairs the invariant is
//   2^p <1/2>_-^{m-2-p} / <1>_-^p  times n_trop,
// and equals 2^p <1/2>_-^{m-2-2p} / <1/2>_+^p times n_trop; both forms are
// computed and must agree.
inline QLaurent classical_invariant(const Degree& delta, const SplitSpec& spec,
                                    const QLaurent& n_trop, std::int64_t m) {
  spec.validate(delta);
  std::int64_t msum = 0;
  for (const Vec2& v : delta.vectors()) msum += lattice_length(v);
  if (msum != m)
    throw std::invalid_argument("m must be the total lattice length of the degree");
  std::int64_t p = spec.total();
  QLaurent half_minus = bracket_minus(Rat(1, 2));
  Rat two_p = Rat(Int(1) << p);

  std::int64_t e1 = m - 2 - p;
  QLaurent num1 = n_trop.scaled(two_p);
  QLaurent den1 = pow(bracket_minus(Rat(1)), static_cast<unsigned long>(p));
  if (e1 >= 0)
    num1 *= pow(half_minus, static_cast<unsigned long>(e1));
  else
    den1 *= pow(half_minus, static_cast<unsigned long>(-e1));
  QLaurent r1 = div_exact(num1, den1);

  std::int64_t e2 = m - 2 - 2 * p;
  QLaurent num2 = n_trop.scaled(two_p);
  QLaurent den2 = pow(bracket_plus(Rat(1, 2)), static_cast<unsigned long>(p));
  if (e2 >= 0)
    num2 *= pow(half_minus, static_cast<unsigned long>(e2));
  else
    den2 *= pow(half_minus, static_cast<unsigned long>(-e2));
  QLaurent r2 = div_exact(num2, den2);

  if (!(r1 == r2)) throw std::logic_error("the two product forms disagree");
  return r1;
}

// The same invariant from the conjugate-pair refined count of the split
// degree: <1/2>_-^{m-2-2p} / <1>_+^p times the given count.
inline QLaurent classical_from_refined_pair_count(const QLaurent& pair_count, std::int64_t m,
                                                  std::int64_t p) {
  if (p < 0) throw std::invalid_argument("p must be nonnegative");
  std::int64_t e = m - 2 - 2 * p;
  QLaurent num = pair_count;
  QLaurent den = pow(bracket_plus(Rat(1)), static_cast<unsigned long>(p));
  if (e >= 0)
    num *= pow(bracket_minus(Rat(1, 2)), static_cast<unsigned long>(e));
  else
    den *= pow(bracket_minus(Rat(1, 2)), static_cast<unsigned long>(-e));
  return div_exact(num, den);
}

}  // namespace qtrop
