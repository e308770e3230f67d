#pragma once

#include <cmath>

namespace binloc {

// Planar position or displacement, metres.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }
inline Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Axis-aligned rectangle, used for search regions and grid extents.
struct Box {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  Vec2 centre() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }

  bool contains(const Vec2& p, double slack = 0.0) const {
    return p.x >= lo.x - slack && p.x <= hi.x + slack &&
           p.y >= lo.y - slack && p.y <= hi.y + slack;
  }
  bool contains(const Box& b) const {
    return contains(b.lo) && contains(b.hi);
  }
};

inline Box inflate(const Box& b, double margin) {
  return {{b.lo.x - margin, b.lo.y - margin}, {b.hi.x + margin, b.hi.y + margin}};
}

}  // namespace binloc
