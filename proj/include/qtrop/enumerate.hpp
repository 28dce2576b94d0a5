#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qtrop/numeric.hpp"
#include "qtrop/tropcurve.hpp"

namespace qtrop {

// A moment vector landed on a wall: some topology produced a singular
// system or a zero edge length.
struct DegenerateConfig : std::runtime_error {
  explicit DegenerateConfig(const std::string& what) : std::runtime_error(what) {}
};

struct GenericityFailure : std::runtime_error {
  explicit GenericityFailure(const std::string& what) : std::runtime_error(what) {}
};

// All trivalent trees with m labelled leaves, built by inserting leaf k
// into every edge of every tree on k leaves.  Each tree appears exactly
// once; there are (2m-5)!! of them.  Interior vertices are m..2m-3.
inline std::vector<CombType> enumerate_comb_types(int m) {
  if (m < 3) throw std::invalid_argument("need at least three ends");
  std::vector<CombType> trees{CombType{m, {{0, m}, {1, m}, {2, m}}}};
  for (int k = 3; k < m; ++k) {
    std::vector<CombType> next;
    for (const CombType& t : trees) {
      int fresh = m + k - 2;  // interior ids m..m+k-3 are in use
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        CombType u = t;
        auto [a, b] = u.edges[e];
        u.edges[e] = {a, fresh};
        u.edges.push_back({fresh, b});
        u.edges.push_back({k, fresh});
        next.push_back(std::move(u));
      }
    }
    trees = std::move(next);
  }
  for (const CombType& t : trees) t.validate();
  return trees;
}

namespace detail {

inline std::string describe(const CombType& comb) {
  std::ostringstream os;
  os << "m=" << comb.m << " edges";
  for (const auto& [a, b] : comb.edges) os << " (" << a << "," << b << ")";
  return os.str();
}

// Gaussian elimination; returns det and leaves the solution in rhs.
// Matrix is square, entries exact rationals.
inline Rat solve_linear(std::vector<std::vector<Rat>>& a, std::vector<Rat>& rhs) {
  int n = static_cast<int>(a.size());
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(rhs[piv], rhs[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    Rat v = rhs[col];
    for (int c = col + 1; c < n; ++c) v -= a[col][c] * rhs[c];
    rhs[col] = v / a[col][col];
  }
  return det;
}

}  // namespace detail

struct Solution {
  TropCurve curve;
  Int abs_det;  // of the evaluation system; equals the product of vertex mults
};

// Solve the fixed-moment conditions on one topology.  mu lists the moments
// of ends 2..m; end 1 is determined by the zero-sum relation.  Returns
// nothing when the topology is flat or the solution leaves the open cone
// (negative length); throws DegenerateConfig on the cone boundary.
inline std::optional<Solution> solve_cone(const CombType& comb, const Degree& degree,
                                          const std::vector<Rat>& mu) {
  int m = degree.size();
  if (comb.m != m) throw std::invalid_argument("topology and degree sizes differ");
  if (static_cast<int>(mu.size()) != m - 1)
    throw std::invalid_argument("need moments for ends 2..m");
  if (!comb.is_trivalent()) throw NotTrivalent("topology must be trivalent");
  RootedShape shape = RootedShape::build(comb, degree.vectors());

  // flat topologies contribute nothing for any moment vector
  for (int v = m; v < comb.num_vertices(); ++v) {
    auto out = shape.outgoing(comb, v);
    if (omega(out[0], out[1]) == 0 && omega(out[0], out[2]) == 0) return std::nullopt;
  }

  auto bidx = comb.bounded_edge_indices();
  std::vector<int> col_of_edge(comb.edges.size(), -1);
  for (std::size_t i = 0; i < bidx.size(); ++i) col_of_edge[bidx[i]] = 2 + static_cast<int>(i);

  // unknowns: root x, root y, then one length per bounded edge
  int n = 2 + static_cast<int>(bidx.size());
  auto adj = comb.adjacency();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> rhs(n, Rat(0));
  for (int j = 2; j <= m; ++j) {
    int row = j - 2;
    Vec2 nj = degree.vectors()[j - 1];
    a[row][0] = Rat(-nj.y);
    a[row][1] = Rat(nj.x);
    int v = adj[j - 1][0].first;  // attachment vertex
    while (v != shape.root) {
      a[row][col_of_edge[shape.parent_edge[v]]] =
          Rat(omega(nj, shape.slope_away[shape.parent_edge[v]]));
      v = shape.parent[v];
    }
    rhs[row] = mu[j - 2];
  }

  Rat det = detail::solve_linear(a, rhs);
  if (det == 0)
    throw DegenerateConfig("singular evaluation system on " + detail::describe(comb));
  for (std::size_t i = 0; i < bidx.size(); ++i)
    if (rhs[2 + i] < 0) return std::nullopt;
  for (std::size_t i = 0; i < bidx.size(); ++i)
    if (rhs[2 + i] == 0)
      throw DegenerateConfig("zero edge length on " + detail::describe(comb));

  std::vector<Rat> lens(rhs.begin() + 2, rhs.end());
  TropCurve curve(comb, degree.vectors(), lens, RatPoint{rhs[0], rhs[1]});
  Int ad = abs(rat_num(det));
  // integer matrix, so the determinant is an integer
  if (rat_den(det) != 1) throw DegenerateConfig("non-integral determinant");
  return Solution{std::move(curve), ad};
}

// All curves of the given degree through the moment conditions.
inline std::vector<Solution> enumerate_solutions(const Degree& degree,
                                                 const std::vector<Rat>& mu) {
  std::vector<Solution> out;
  for (const CombType& comb : enumerate_comb_types(degree.size()))
    if (auto sol = solve_cone(comb, degree, mu)) out.push_back(std::move(*sol));
  return out;
}

// Sum of refined vertex multiplicities over all solutions.
inline QLaurent count_refined(const Degree& degree, const std::vector<Rat>& mu) {
  QLaurent total(0);
  for (const Solution& sol : enumerate_solutions(degree, mu)) total += sol.curve.refined_mult();
  return total;
}

// Random moments for ends 2..m that avoid every wall: all topologies
// either solve cleanly or fail with a definite sign.
inline std::vector<Rat> random_generic_moments(const Degree& degree, Rng& rng, int budget = 64) {
  auto trees = enumerate_comb_types(degree.size());
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<Rat> mu;
    for (int j = 2; j <= degree.size(); ++j) mu.push_back(rng.big_rat());
    bool ok = true;
    for (const CombType& comb : trees) {
      try {
        solve_cone(comb, degree, mu);
      } catch (const DegenerateConfig&) {
        ok = false;
        break;
      }
    }
    if (ok) return mu;
  }
  throw GenericityFailure("no generic moment vector found within budget");
}

}  // namespace qtrop
