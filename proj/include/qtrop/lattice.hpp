#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrop/numeric.hpp"

namespace qtrop {

struct ZeroVector : std::invalid_argument {
  ZeroVector() : std::invalid_argument("zero lattice vector") {}
};
struct InsufficientMultiplicity : std::invalid_argument {
  explicit InsufficientMultiplicity(const std::string& what) : std::invalid_argument(what) {}
};

struct Vec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(std::int64_t k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

// Standard area form: omega(u,v) = det(u v).
inline std::int64_t omega(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

inline std::int64_t lattice_length(Vec2 v) {
  if (v.x == 0 && v.y == 0) throw ZeroVector();
  return std::gcd(std::abs(v.x), std::abs(v.y));
}

inline bool is_primitive(Vec2 v) { return lattice_length(v) == 1; }

inline Vec2 primitive(Vec2 v) {
  std::int64_t l = lattice_length(v);
  return {v.x / l, v.y / l};
}

struct Side {
  Vec2 direction;            // primitive
  std::vector<int> indices;  // positions in the vector list, in order
  std::int64_t length = 0;   // total lattice length over the side
};

// Multiset of nonzero lattice vectors with zero sum. Ends are labelled
// 1..m following list order.
class Degree {
 public:
  explicit Degree(std::vector<Vec2> vectors) : vectors_(std::move(vectors)) {
    Vec2 sum{0, 0};
    for (const Vec2& v : vectors_) {
      if (v.x == 0 && v.y == 0) throw ZeroVector();
      sum = sum + v;
    }
    if (!(sum == Vec2{0, 0})) throw std::invalid_argument("degree vectors must sum to zero");
    for (int i = 0; i < static_cast<int>(vectors_.size()); ++i) {
      Vec2 dir = primitive(vectors_[i]);
      auto it = std::find_if(sides_.begin(), sides_.end(),
                             [&](const Side& s) { return s.direction == dir; });
      if (it == sides_.end()) {
        sides_.push_back(Side{dir, {i}, lattice_length(vectors_[i])});
      } else {
        it->indices.push_back(i);
        it->length += lattice_length(vectors_[i]);
      }
    }
  }

  const std::vector<Vec2>& vectors() const { return vectors_; }
  int size() const { return static_cast<int>(vectors_.size()); }
  // Sides grouped by primitive direction, ordered by first occurrence.
  const std::vector<Side>& sides() const { return sides_; }

 private:
  std::vector<Vec2> vectors_;
  std::vector<Side> sides_;
};

// Per-side split counts s_i; r_i = l(E_i) - 2 s_i primitive ends remain.
struct SplitSpec {
  std::vector<std::int64_t> s;

  static SplitSpec zeros(const Degree& d) {
    return SplitSpec{std::vector<std::int64_t>(d.sides().size(), 0)};
  }

  std::int64_t total() const {
    return std::accumulate(s.begin(), s.end(), std::int64_t{0});
  }

  void validate(const Degree& d) const {
    if (s.size() != d.sides().size())
      throw std::invalid_argument("split spec size must match number of sides");
    std::int64_t r_total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0) throw std::invalid_argument("negative split count");
      std::int64_t r = d.sides()[i].length - 2 * s[i];
      if (r < 0)
        throw InsufficientMultiplicity("side " + std::to_string(i + 1) +
                                       " too short for requested split");
      r_total += r;
    }
    if (r_total < 1)
      throw std::invalid_argument("at least one primitive end must remain");
  }
};

// {(-1,0)^d, (0,-1)^d, (1,1)^d}
inline Degree standard_degree(int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  std::vector<Vec2> v;
  for (int i = 0; i < d; ++i) v.push_back({-1, 0});
  for (int i = 0; i < d; ++i) v.push_back({0, -1});
  for (int i = 0; i < d; ++i) v.push_back({1, 1});
  return Degree(std::move(v));
}

// On each side i, replace 2 s_i primitive ends with s_i ends of doubled
// vector. Output lists, side by side, the remaining primitive copies and
// then the doubled ones.
inline Degree make_delta_s(const Degree& delta, const SplitSpec& spec) {
  spec.validate(delta);
  for (const Vec2& v : delta.vectors())
    if (!is_primitive(v))
      throw std::invalid_argument("make_delta_s expects a primitive degree");
  std::vector<Vec2> out;
  const auto& sides = delta.sides();
  for (std::size_t i = 0; i < sides.size(); ++i) {
    std::int64_t have = static_cast<std::int64_t>(sides[i].indices.size());
    std::int64_t si = spec.s[i];
    if (2 * si > have)
      throw InsufficientMultiplicity("side " + std::to_string(i + 1) +
                                     " has too few primitive copies");
    for (std::int64_t k = 0; k < have - 2 * si; ++k) out.push_back(sides[i].direction);
    for (std::int64_t k = 0; k < si; ++k) out.push_back(2 * sides[i].direction);
  }
  return Degree(std::move(out));
}

}  // namespace qtrop
