#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrop/lattice.hpp"
#include "qtrop/qlaurent.hpp"

namespace qtrop {

struct NotTrivalent : std::invalid_argument {
  explicit NotTrivalent(const std::string& what) : std::invalid_argument(what) {}
};
struct FlatVertex : std::runtime_error {
  explicit FlatVertex(const std::string& what) : std::runtime_error(what) {}
};

// Tree with m labelled leaves (the unbounded ends, leaf i carries end label
// i+1) and interior vertices m..num_vertices()-1 of valence >= 3.
struct CombType {
  int m = 0;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const {
    int mx = -1;
    for (const auto& [u, v] : edges) mx = std::max({mx, u, v});
    return mx + 1;
  }

  // vertex -> list of (neighbor, edge index)
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(num_vertices());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      adj[edges[e].first].push_back({edges[e].second, e});
      adj[edges[e].second].push_back({edges[e].first, e});
    }
    return adj;
  }

  bool edge_is_end(int e) const {
    return edges[e].first < m || edges[e].second < m;
  }

  // Leaf incident to an end edge.
  int edge_leaf(int e) const {
    return std::min(edges[e].first, edges[e].second);
  }

  std::vector<int> bounded_edge_indices() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (!edge_is_end(e)) out.push_back(e);
    return out;
  }

  void validate() const {
    if (m < 3) throw std::invalid_argument("need at least three leaves");
    int n = num_vertices();
    if (static_cast<int>(edges.size()) != n - 1)
      throw std::invalid_argument("edge count must be vertex count minus one");
    auto adj = adjacency();
    for (int v = 0; v < m; ++v)
      if (adj[v].size() != 1) throw std::invalid_argument("leaf valence must be 1");
    for (int v = m; v < n; ++v)
      if (adj[v].size() < 3) throw std::invalid_argument("interior valence must be >= 3");
    // connectivity
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    if (count != n) throw std::invalid_argument("graph must be connected");
  }

  bool is_trivalent() const {
    auto adj = adjacency();
    for (int v = m; v < num_vertices(); ++v)
      if (adj[v].size() != 3) return false;
    return true;
  }

  // Internal splits as leaf sets (side not containing leaf 0), a structural
  // fingerprint: two trees are equal iff their split sets coincide.
  std::vector<std::vector<int>> splits() const {
    auto adj = adjacency();
    std::vector<std::vector<int>> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (edge_is_end(e)) continue;
      // leaves reachable from edges[e].second without crossing e
      std::vector<char> seen(num_vertices(), 0);
      std::vector<int> stack{edges[e].second};
      seen[edges[e].first] = 1;
      seen[edges[e].second] = 1;
      std::vector<int> leaves;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v < m) leaves.push_back(v);
        for (auto [w, e2] : adj[v])
          if (!seen[w] && e2 != e) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      std::sort(leaves.begin(), leaves.end());
      if (std::find(leaves.begin(), leaves.end(), 0) != leaves.end()) {
        // complement, so the fingerprint side never contains leaf 0
        std::vector<int> comp;
        std::vector<char> in(m, 0);
        for (int l : leaves) in[l] = 1;
        for (int l = 0; l < m; ++l)
          if (!in[l]) comp.push_back(l);
        leaves = comp;
      }
      out.push_back(std::move(leaves));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

using RatPoint = std::array<Rat, 2>;

inline Rat omega_point(Vec2 n, const RatPoint& p) {
  return Rat(n.x) * p[1] - Rat(n.y) * p[0];
}

// Rooted combinatorial data shared by curve construction and the moment
// solver: every bounded edge is oriented away from the vertex adjacent to
// end 1, and its slope is the sum of the end slopes on its far side.
struct RootedShape {
  int root = -1;                    // interior vertex adjacent to leaf 0
  std::vector<int> parent;          // per vertex; root's parent is leaf 0
  std::vector<int> parent_edge;     // per vertex, edge toward parent
  std::vector<Vec2> slope_away;     // per edge; ends carry their outward end slope
  std::vector<int> order;           // interior vertices, root first

  static RootedShape build(const CombType& comb, const std::vector<Vec2>& end_slopes) {
    comb.validate();
    if (static_cast<int>(end_slopes.size()) != comb.m)
      throw std::invalid_argument("end slope count must match leaf count");
    auto adj = comb.adjacency();
    RootedShape rs;
    int n = comb.num_vertices();
    rs.parent.assign(n, -1);
    rs.parent_edge.assign(n, -1);
    rs.slope_away.assign(comb.edges.size(), Vec2{0, 0});
    rs.root = adj[0][0].first;
    rs.parent[rs.root] = 0;
    rs.parent_edge[rs.root] = adj[0][0].second;
    std::vector<int> stack{rs.root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      rs.order.push_back(v);
      for (auto [w, e] : adj[v])
        if (w >= comb.m && w != rs.parent[v]) {
          rs.parent[w] = v;
          rs.parent_edge[w] = e;
          stack.push_back(w);
        }
    }
    // far-side end sums, children before parents
    std::vector<Vec2> sub(n, Vec2{0, 0});
    for (int i = 0; i < comb.m; ++i) {
      rs.slope_away[adj[i][0].second] = end_slopes[i];
      if (i != 0) sub[adj[i][0].first] = sub[adj[i][0].first] + end_slopes[i];
    }
    for (auto it = rs.order.rbegin(); it != rs.order.rend(); ++it) {
      int v = *it;
      if (v != rs.root) {
        rs.slope_away[rs.parent_edge[v]] = sub[v];
        sub[rs.parent[v]] = sub[rs.parent[v]] + sub[v];
      }
    }
    return rs;
  }

  // Outgoing slopes at an interior vertex.
  std::vector<Vec2> outgoing(const CombType& comb, int v) const {
    std::vector<Vec2> out;
    auto adj = comb.adjacency();
    for (auto [w, e] : adj[v]) {
      if (comb.edge_is_end(e)) {
        out.push_back(slope_away[e]);
      } else {
        bool away = (parent[w] == v && parent_edge[w] == e);
        out.push_back(away ? slope_away[e] : -slope_away[e]);
      }
    }
    return out;
  }
};

// Parametrized rational tropical curve: metric labelled tree mapped to the
// plane, end slopes prescribed by a degree, positions determined by the
// root position and the edge lengths.
class TropCurve {
 public:
  TropCurve(CombType comb, std::vector<Vec2> end_slopes, std::vector<Rat> bounded_lengths,
            RatPoint root_pos)
      : comb_(std::move(comb)),
        end_slopes_(std::move(end_slopes)),
        shape_(RootedShape::build(comb_, end_slopes_)) {
    auto bidx = comb_.bounded_edge_indices();
    if (bounded_lengths.size() != bidx.size())
      throw std::invalid_argument("length count must match bounded edge count");
    length_by_edge_.assign(comb_.edges.size(), Rat(0));
    for (std::size_t i = 0; i < bidx.size(); ++i) {
      if (bounded_lengths[i] <= 0) throw std::invalid_argument("lengths must be positive");
      length_by_edge_[bidx[i]] = bounded_lengths[i];
    }
    pos_.assign(comb_.num_vertices(), RatPoint{Rat(0), Rat(0)});
    pos_[shape_.root] = root_pos;
    for (int v : shape_.order) {
      if (v == shape_.root) continue;
      int e = shape_.parent_edge[v];
      Vec2 u = shape_.slope_away[e];
      const Rat& l = length_by_edge_[e];
      pos_[v] = RatPoint{pos_[shape_.parent[v]][0] + l * u.x, pos_[shape_.parent[v]][1] + l * u.y};
    }
    for (int i = 0; i < comb_.m; ++i) pos_[i] = pos_[attachment(i)];
  }

  const CombType& comb() const { return comb_; }
  const RootedShape& shape() const { return shape_; }
  int num_ends() const { return comb_.m; }
  Vec2 end_slope(int label) const { return end_slopes_.at(label - 1); }
  const std::vector<Vec2>& end_slopes() const { return end_slopes_; }
  int root_vertex() const { return shape_.root; }
  const RatPoint& position(int vertex) const { return pos_.at(vertex); }
  const Rat& edge_length(int e) const { return length_by_edge_.at(e); }

  // Interior vertex carrying a given end label.
  int attachment(int leaf) const {
    const auto& [u, v] = comb_.edges[end_edge(leaf)];
    return std::max(u, v);
  }
  int end_edge(int leaf) const {
    for (int e = 0; e < static_cast<int>(comb_.edges.size()); ++e)
      if (comb_.edge_is_end(e) && comb_.edge_leaf(e) == leaf) return e;
    throw std::invalid_argument("no such leaf");
  }

  // omega(n_e, p) for p the finite endpoint of the end's ray; any other
  // point of the ray gives the same value.
  Rat moment(int label) const {
    Vec2 n = end_slope(label);
    return omega_point(n, pos_[attachment(label - 1)]);
  }

  bool menelaus_check() const {
    Rat s = 0;
    for (int j = 1; j <= comb_.m; ++j) s += moment(j);
    return s == 0;
  }

  std::vector<Vec2> outgoing_slopes(int vertex) const { return shape_.outgoing(comb_, vertex); }

  std::int64_t vertex_mult(int vertex) const {
    auto out = outgoing_slopes(vertex);
    if (out.size() != 3) throw NotTrivalent("vertex valence is not 3");
    return std::abs(omega(out[0], out[1]));
  }

  bool has_flat_vertex() const {
    for (int v = comb_.m; v < comb_.num_vertices(); ++v) {
      auto out = outgoing_slopes(v);
      bool flat = true;
      for (std::size_t i = 0; i + 1 < out.size() && flat; ++i)
        for (std::size_t j = i + 1; j < out.size() && flat; ++j)
          if (omega(out[i], out[j]) != 0) flat = false;
      if (flat) return true;
    }
    return false;
  }

  // prod_V [m_V]_q over interior vertices.
  QLaurent refined_mult() const {
    QLaurent p(1);
    for (int v = comb_.m; v < comb_.num_vertices(); ++v) {
      std::int64_t mv = vertex_mult(v);
      if (mv == 0) throw FlatVertex("flat vertex has multiplicity 0");
      p *= q_analog(mv);
    }
    return p;
  }

  std::int64_t complex_mult() const {
    std::int64_t prod = 1;
    for (int v = comb_.m; v < comb_.num_vertices(); ++v) prod *= vertex_mult(v);
    return prod;
  }

 private:
  CombType comb_;
  std::vector<Vec2> end_slopes_;
  RootedShape shape_;
  std::vector<Rat> length_by_edge_;
  std::vector<RatPoint> pos_;
};

struct PlaneSegment {
  RatPoint a, b;  // a < b lexicographically
  Vec2 dir;       // primitive, from a toward b
  std::int64_t weight = 0;
};
struct PlaneRay {
  RatPoint base;
  Vec2 dir;  // primitive
  std::int64_t weight = 0;
};

// Embedded weighted rectilinear graph.
struct PlaneCurve {
  std::vector<RatPoint> vertices;
  std::vector<PlaneSegment> segments;
  std::vector<PlaneRay> rays;

  // Weighted balancing at every vertex.
  bool balanced() const {
    for (const auto& p : vertices) {
      Rat bx = 0, by = 0;
      for (const auto& s : segments) {
        if (s.a == p) {
          bx += Rat(s.weight * s.dir.x);
          by += Rat(s.weight * s.dir.y);
        } else if (s.b == p) {
          bx -= Rat(s.weight * s.dir.x);
          by -= Rat(s.weight * s.dir.y);
        }
      }
      for (const auto& r : rays)
        if (r.base == p) {
          bx += Rat(r.weight * r.dir.x);
          by += Rat(r.weight * r.dir.y);
        }
      if (bx != 0 || by != 0) return false;
    }
    return true;
  }
};

// Image of the parametrization; parallel edges with identical endpoints
// merge into a single edge whose weight adds up.
inline PlaneCurve image_plane_curve(const TropCurve& curve) {
  const CombType& comb = curve.comb();
  std::map<std::pair<RatPoint, RatPoint>, std::pair<Vec2, std::int64_t>> seg;
  std::map<std::pair<RatPoint, Vec2>, std::int64_t> ray;
  for (int e = 0; e < static_cast<int>(comb.edges.size()); ++e) {
    if (comb.edge_is_end(e)) {
      int leaf = comb.edge_leaf(e);
      Vec2 n = curve.end_slope(leaf + 1);
      ray[{curve.position(curve.attachment(leaf)), primitive(n)}] += lattice_length(n);
    } else {
      RatPoint p = curve.position(comb.edges[e].first);
      RatPoint q = curve.position(comb.edges[e].second);
      Vec2 u = curve.shape().slope_away[e];
      bool swapped = !(p < q);
      if (swapped) std::swap(p, q);
      Vec2 d = swapped ? primitive(-u) : primitive(u);
      auto [it, fresh] = seg.emplace(std::pair{p, q}, std::pair{d, std::int64_t{0}});
      it->second.second += lattice_length(u);
      (void)fresh;
    }
  }
  PlaneCurve out;
  std::map<RatPoint, int> vertex_ids;
  auto touch = [&](const RatPoint& p) {
    if (vertex_ids.emplace(p, 1).second) out.vertices.push_back(p);
  };
  for (const auto& [key, dw] : seg) {
    out.segments.push_back({key.first, key.second, dw.first, dw.second});
    touch(key.first);
    touch(key.second);
  }
  for (const auto& [key, w] : ray) {
    out.rays.push_back({key.first, key.second, w});
    touch(key.first);
  }
  return out;
}

}  // namespace qtrop
