#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "qtrop/tropcurve.hpp"

namespace qtrop {

inline bool slope_is_even(Vec2 u) { return u.x % 2 == 0 && u.y % 2 == 0; }

// One connected piece of the even subgraph: a binary tree hanging off the
// rest of the curve at its stem, the unique vertex incident to exactly one
// component edge.  Edges are oriented away from the stem.
struct EvenComponent {
  int stem = -1;
  int root_edge = -1;
  std::vector<int> edges;
  std::map<int, std::array<int, 2>> children;  // bounded edge -> edges at its far vertex
  std::map<int, int> far_vertex;               // bounded edge -> vertex away from stem
  std::map<int, int> parent;                   // edge -> edge toward stem (root absent)

  bool is_leaf_edge(int e) const { return children.find(e) == children.end(); }
};

struct EvenSubgraph {
  std::vector<int> even_leaves;  // leaves whose end slope is even
  std::vector<char> in_even;     // per edge of the base curve
  std::vector<EvenComponent> components;
};

struct SplitPoint {
  int edge;
  Rat offset;  // position along the edge from its stem side, in [0,1)
};

// An antichain of splitting points covering every even end exactly once.
struct AdmissibleSet {
  std::vector<SplitPoint> points;

  std::vector<int> edge_set() const {
    std::vector<int> out;
    for (const auto& p : points) out.push_back(p.edge);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Even subgraph of a curve: seed with the even ends, then repeatedly close
// at vertices carrying exactly two subgraph edges (the third slope is even
// by balancing).  Afterwards every interior vertex carries 0, 1 or 3
// subgraph edges; the 1-edge vertices are the stems.
inline EvenSubgraph compute_even_subgraph(const TropCurve& curve) {
  const CombType& comb = curve.comb();
  auto adj = comb.adjacency();
  EvenSubgraph out;
  out.in_even.assign(comb.edges.size(), 0);
  for (int leaf = 0; leaf < comb.m; ++leaf)
    if (slope_is_even(curve.end_slope(leaf + 1))) {
      out.even_leaves.push_back(leaf);
      out.in_even[curve.end_edge(leaf)] = 1;
    }

  bool grew = true;
  while (grew) {
    grew = false;
    for (int v = comb.m; v < comb.num_vertices(); ++v) {
      int cnt = 0, missing = -1;
      for (auto [w, e] : adj[v]) {
        if (out.in_even[e])
          ++cnt;
        else
          missing = e;
      }
      if (cnt == 2) {
        if (!slope_is_even(curve.shape().slope_away[missing]))
          throw std::logic_error("closure edge with odd slope");
        out.in_even[missing] = 1;
        grew = true;
      }
    }
  }

  // classify vertices and split into components
  std::vector<int> deg(comb.num_vertices(), 0);
  for (int e = 0; e < static_cast<int>(comb.edges.size()); ++e)
    if (out.in_even[e]) {
      deg[comb.edges[e].first] += comb.edges[e].first >= comb.m;
      deg[comb.edges[e].second] += comb.edges[e].second >= comb.m;
    }
  for (int v = comb.m; v < comb.num_vertices(); ++v)
    if (deg[v] == 2) throw std::logic_error("even subgraph not closed");

  std::vector<char> seen(comb.edges.size(), 0);
  for (int e0 = 0; e0 < static_cast<int>(comb.edges.size()); ++e0) {
    if (!out.in_even[e0] || seen[e0]) continue;
    // gather the component containing e0
    std::vector<int> stack{e0}, edges;
    seen[e0] = 1;
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      edges.push_back(e);
      for (int v : {comb.edges[e].first, comb.edges[e].second}) {
        if (v < comb.m) continue;
        for (auto [w, e2] : adj[v])
          if (out.in_even[e2] && !seen[e2]) {
            seen[e2] = 1;
            stack.push_back(e2);
          }
      }
    }
    EvenComponent c;
    c.edges = edges;
    for (int e : edges) {
      for (int v : {comb.edges[e].first, comb.edges[e].second}) {
        if (v >= comb.m && deg[v] == 1) {
          if (c.stem >= 0 && c.stem != v) throw std::logic_error("two stems in one component");
          c.stem = v;
          c.root_edge = e;
        }
      }
    }
    if (c.stem < 0)
      throw std::invalid_argument("component without stem: curve has no real end");
    // orient away from the stem
    std::vector<std::pair<int, int>> walk{{c.root_edge, c.stem}};  // (edge, near vertex)
    while (!walk.empty()) {
      auto [e, near] = walk.back();
      walk.pop_back();
      int far = comb.edges[e].first == near ? comb.edges[e].second : comb.edges[e].first;
      if (far < comb.m) continue;  // leaf edge
      c.far_vertex[e] = far;
      std::array<int, 2> kids{-1, -1};
      int k = 0;
      for (auto [w, e2] : adj[far])
        if (e2 != e) {
          if (!out.in_even[e2]) throw std::logic_error("interior component vertex not closed");
          kids[k++] = e2;
          c.parent[e2] = e;
          walk.push_back({e2, far});
        }
      if (k != 2) throw std::logic_error("interior component vertex valence");
      c.children[e] = kids;
    }
    out.components.push_back(std::move(c));
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const EvenComponent& a, const EvenComponent& b) { return a.stem < b.stem; });
  return out;
}

// Every set of component edges that meets each end-to-stem path exactly
// once: cut the edge itself, or recurse into both child subtrees.
namespace detail {
inline std::vector<std::vector<int>> cut_sets(const EvenComponent& c, int e) {
  std::vector<std::vector<int>> out{{e}};
  auto it = c.children.find(e);
  if (it != c.children.end()) {
    auto left = cut_sets(c, it->second[0]);
    auto right = cut_sets(c, it->second[1]);
    for (const auto& a : left)
      for (const auto& b : right) {
        std::vector<int> s = a;
        s.insert(s.end(), b.begin(), b.end());
        out.push_back(std::move(s));
      }
  }
  return out;
}
}  // namespace detail

// All real structures, one representative per splitting graph; the points
// sit at edge midpoints.
inline std::vector<AdmissibleSet> enumerate_admissible(const EvenSubgraph& even) {
  std::vector<std::vector<int>> acc{{}};
  for (const EvenComponent& c : even.components) {
    auto per = detail::cut_sets(c, c.root_edge);
    std::vector<std::vector<int>> next;
    for (const auto& base : acc)
      for (const auto& add : per) {
        std::vector<int> s = base;
        s.insert(s.end(), add.begin(), add.end());
        next.push_back(std::move(s));
      }
    acc = std::move(next);
  }
  std::vector<AdmissibleSet> out;
  for (auto& s : acc) {
    AdmissibleSet a;
    std::sort(s.begin(), s.end());
    for (int e : s) a.points.push_back({e, Rat(1, 2)});
    out.push_back(std::move(a));
  }
  return out;
}

// Covering property, verified by path walking.
inline bool is_admissible(const EvenSubgraph& even, const std::vector<int>& edges) {
  std::set<int> chosen(edges.begin(), edges.end());
  for (int e : edges) {
    bool found = false;
    for (const EvenComponent& c : even.components)
      found = found ||
              std::find(c.edges.begin(), c.edges.end(), e) != c.edges.end();
    if (!found) return false;
  }
  std::size_t covered_leaves = 0;
  for (const EvenComponent& c : even.components) {
    for (int e : c.edges) {
      if (!c.is_leaf_edge(e)) continue;
      ++covered_leaves;
      int hits = 0;
      for (int cur = e;; ) {
        if (chosen.count(cur)) ++hits;
        auto it = c.parent.find(cur);
        if (it == c.parent.end()) break;
        cur = it->second;
      }
      if (hits != 1) return false;
    }
  }
  return covered_leaves == even.even_leaves.size();
}

struct RealVertex {
  int base_vertex;  // -1 for a splitting point in an edge interior
  int copy;         // 0 fixed, 1/2 conjugate pair
  RatPoint pos;
};

struct RealEdge {
  int a, b;     // vertex ids; b = -1 for an unbounded end
  Vec2 slope;   // outgoing from a
  Rat length;   // 0 for ends
  int base_edge;
  int copy;     // 0 fixed, 1/2 conjugate pair
};

// Two copies of the base curve glued along the fixed part; sigma exchanges
// the copies and the image map descends (h o sigma = h).
struct RealTropCurve {
  std::vector<RealVertex> vertices;
  std::vector<RealEdge> edges;
  std::vector<int> sigma_v, sigma_e;

  int valence(int v) const {
    int out = 0;
    for (const auto& e : edges) out += (e.a == v) + (e.b == v);
    return out;
  }

  std::vector<Vec2> outgoing_slopes(int v) const {
    std::vector<Vec2> out;
    for (const auto& e : edges) {
      if (e.a == v) out.push_back(e.slope);
      if (e.b == v) out.push_back(-e.slope);
    }
    return out;
  }

  bool balanced() const {
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
      Vec2 s{0, 0};
      for (Vec2 u : outgoing_slopes(v)) s = s + u;
      if (!(s == Vec2{0, 0})) return false;
    }
    return true;
  }

  bool involution_ok() const {
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
      if (sigma_v[sigma_v[v]] != v) return false;
      if (vertices[v].copy == 0 && sigma_v[v] != v) return false;
      if (vertices[v].copy != 0 && sigma_v[v] == v) return false;
    }
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (sigma_e[sigma_e[e]] != e) return false;
      const RealEdge& x = edges[e];
      const RealEdge& y = edges[sigma_e[e]];
      if (sigma_v[x.a] != y.a) return false;
      if ((x.b == -1) != (y.b == -1)) return false;
      if (x.b != -1 && sigma_v[x.b] != y.b) return false;
    }
    return true;
  }

  // conjugate pieces have the same image
  bool image_respects_involution() const {
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
      if (vertices[sigma_v[v]].pos != vertices[v].pos) return false;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const RealEdge& x = edges[e];
      const RealEdge& y = edges[sigma_e[e]];
      if (!(x.slope == y.slope) || x.length != y.length) return false;
    }
    return true;
  }

  bool has_flat_vertex() const {
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v) {
      auto out = outgoing_slopes(v);
      if (out.size() < 3) continue;
      bool flat = true;
      for (std::size_t i = 0; i + 1 < out.size() && flat; ++i)
        for (std::size_t j = i + 1; j < out.size() && flat; ++j)
          if (omega(out[i], out[j]) != 0) flat = false;
      if (flat) return true;
    }
    return false;
  }
};

namespace detail {

// Doubled region: the chosen edges together with everything beyond them.
inline std::vector<char> doubled_edges(const CombType& comb, const EvenSubgraph& even,
                                       const AdmissibleSet& rset) {
  std::vector<char> dbl(comb.edges.size(), 0);
  for (const auto& p : rset.points) {
    const EvenComponent* comp = nullptr;
    for (const EvenComponent& c : even.components)
      if (std::find(c.edges.begin(), c.edges.end(), p.edge) != c.edges.end()) comp = &c;
    if (!comp) throw std::invalid_argument("splitting point outside the even subgraph");
    std::vector<int> stack{p.edge};
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      dbl[e] = 1;
      auto it = comp->children.find(e);
      if (it != comp->children.end()) {
        stack.push_back(it->second[0]);
        stack.push_back(it->second[1]);
      }
    }
  }
  return dbl;
}

inline RealTropCurve assemble_real_curve(const TropCurve& base, const EvenSubgraph& even,
                                         const AdmissibleSet& rset, bool honor_offsets) {
  const CombType& comb = base.comb();
  if (!is_admissible(even, rset.edge_set()))
    throw std::invalid_argument("set of splitting points is not admissible");
  auto dbl = doubled_edges(comb, even, rset);
  std::map<int, Rat> offset_of;  // chosen edge -> interior offset
  if (honor_offsets)
    for (const auto& p : rset.points) {
      if (p.offset < 0 || p.offset >= 1)
        throw std::invalid_argument("offset must lie in [0,1)");
      if (p.offset != 0) offset_of[p.edge] = p.offset;
    }

  // a vertex is doubled when it sits beyond some chosen edge
  std::vector<char> vdbl(comb.num_vertices(), 0);
  for (const EvenComponent& c : even.components)
    for (const auto& [e, far] : c.far_vertex)
      if (dbl[e]) vdbl[far] = 1;

  RealTropCurve out;
  std::vector<std::array<int, 2>> vid(comb.num_vertices(), {-1, -1});
  for (int v = comb.m; v < comb.num_vertices(); ++v) {
    if (vdbl[v]) {
      for (int copy : {1, 2}) {
        vid[v][copy - 1] = static_cast<int>(out.vertices.size());
        out.vertices.push_back({v, copy, base.position(v)});
      }
    } else {
      vid[v][0] = static_cast<int>(out.vertices.size());
      out.vertices.push_back({v, 0, base.position(v)});
    }
  }

  // comb-tree child endpoint of a bounded edge; slope_away points at it
  auto child_of = [&](int e) {
    auto [x, y] = comb.edges[e];
    return base.shape().parent[x] == y && base.shape().parent_edge[x] == e ? x : y;
  };

  for (int e = 0; e < static_cast<int>(comb.edges.size()); ++e) {
    bool is_end = comb.edge_is_end(e);
    // near endpoint: attachment for ends, stem-side endpoint for doubled
    // edges, comb parent side otherwise
    int nearv, farv;
    Vec2 u_out;  // slope out of the near vertex
    if (is_end) {
      nearv = std::max(comb.edges[e].first, comb.edges[e].second);
      farv = -1;
      u_out = base.end_slope(comb.edge_leaf(e) + 1);
    } else {
      farv = -1;
      for (const EvenComponent& c : even.components) {
        auto it = c.far_vertex.find(e);
        if (it != c.far_vertex.end()) farv = it->second;
      }
      if (farv < 0) farv = child_of(e);  // not a component edge: any orientation
      nearv = comb.edges[e].first == farv ? comb.edges[e].second : comb.edges[e].first;
      u_out = farv == child_of(e) ? base.shape().slope_away[e] : -base.shape().slope_away[e];
    }
    Rat len = is_end ? Rat(0) : base.edge_length(e);
    if (!dbl[e]) {
      out.edges.push_back({vid[nearv][0], is_end ? -1 : vid[farv][0], u_out, len, e, 0});
      continue;
    }
    if (!slope_is_even(u_out)) throw std::logic_error("doubled edge with odd slope");
    Vec2 half{u_out.x / 2, u_out.y / 2};
    auto off_it = offset_of.find(e);
    if (off_it != offset_of.end()) {
      // fixed stub up to the splitting point, then a doubled far piece;
      // the splitting point is a flat trivalent real vertex
      const Rat& t = off_it->second;
      Rat stub = is_end ? t : t * len;
      RatPoint nearpos = base.position(nearv);
      RatPoint cut{nearpos[0] + stub * u_out.x, nearpos[1] + stub * u_out.y};
      int cut_id = static_cast<int>(out.vertices.size());
      out.vertices.push_back({-1, 0, cut});
      out.edges.push_back({vid[nearv][0], cut_id, u_out, stub, e, 0});
      for (int copy : {1, 2})
        out.edges.push_back({cut_id, is_end ? -1 : vid[farv][copy - 1], half,
                             is_end ? Rat(0) : 2 * (1 - t) * len, e, copy});
      continue;
    }
    for (int copy : {1, 2}) {
      int a = vdbl[nearv] ? vid[nearv][copy - 1] : vid[nearv][0];
      out.edges.push_back({a, is_end ? -1 : vid[farv][copy - 1], half,
                           is_end ? Rat(0) : 2 * len, e, copy});
    }
  }

  // involution tables
  out.sigma_v.assign(out.vertices.size(), -1);
  out.sigma_e.assign(out.edges.size(), -1);
  std::map<std::pair<int, int>, int> v_by_key, e_by_key;
  for (int v = 0; v < static_cast<int>(out.vertices.size()); ++v)
    v_by_key[{out.vertices[v].base_vertex, out.vertices[v].copy}] = v;
  for (int v = 0; v < static_cast<int>(out.vertices.size()); ++v) {
    const RealVertex& rv = out.vertices[v];
    out.sigma_v[v] = rv.copy == 0 ? v : v_by_key[{rv.base_vertex, 3 - rv.copy}];
  }
  for (int e = 0; e < static_cast<int>(out.edges.size()); ++e)
    e_by_key[{out.edges[e].base_edge, out.edges[e].copy}] = e;
  for (int e = 0; e < static_cast<int>(out.edges.size()); ++e) {
    const RealEdge& re = out.edges[e];
    out.sigma_e[e] = re.copy == 0 ? e : e_by_key[{re.base_edge, 3 - re.copy}];
  }
  return out;
}

}  // namespace detail

// Canonical real curve of an admissible set: splitting points are pulled to
// the stem-side endpoint of their edge, so the whole chosen edge doubles
// and the cut vertices merge into quadrivalent or pentavalent real
// vertices.  (An interior splitting point would instead create a flat
// trivalent real vertex; see build_real_curve_offsets.)
inline RealTropCurve build_real_curve(const TropCurve& base, const EvenSubgraph& even,
                                      const AdmissibleSet& rset) {
  return detail::assemble_real_curve(base, even, rset, false);
}

// Variant honoring the interior positions of the splitting points.
inline RealTropCurve build_real_curve_offsets(const TropCurve& base, const EvenSubgraph& even,
                                              const AdmissibleSet& rset) {
  return detail::assemble_real_curve(base, even, rset, true);
}

}  // namespace qtrop
