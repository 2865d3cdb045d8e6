#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace cpsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Wrap to (-pi, pi].
inline double wrap_angle(double a) {
    constexpr double pi = 3.14159265358979323846;
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    if (a > pi) a -= 2.0 * pi;
    return a;
}

inline Vec2 heading_vec(double heading) { return {std::cos(heading), std::sin(heading)}; }

// Axis-aligned-in-local-frame oriented rectangle: center, half extents along
// the heading axis (half_len) and across it (half_wid).
struct OrientedRect {
    Vec2 center;
    double heading = 0.0;
    double half_len = 0.0;
    double half_wid = 0.0;

    // World point -> rect-local frame (x along heading).
    Vec2 to_local(const Vec2& p) const {
        const Vec2 d = p - center;
        const double c = std::cos(heading), s = std::sin(heading);
        return {d.x * c + d.y * s, -d.x * s + d.y * c};
    }

    bool contains(const Vec2& p) const {
        const Vec2 l = to_local(p);
        return std::abs(l.x) <= half_len && std::abs(l.y) <= half_wid;
    }

    std::array<Vec2, 4> corners() const {
        const Vec2 ax = heading_vec(heading);
        const Vec2 ay{-ax.y, ax.x};
        const Vec2 ex = ax * half_len;
        const Vec2 ey = ay * half_wid;
        return {center + ex + ey, center + ex - ey, center - ex - ey, center - ex + ey};
    }
};

// Segment a-b vs oriented rectangle, slab clipping in the rect frame.
// Touching counts as intersecting.
inline bool segment_intersects_rect(const Vec2& a, const Vec2& b, const OrientedRect& r) {
    const Vec2 p0 = r.to_local(a);
    const Vec2 p1 = r.to_local(b);
    const Vec2 d = p1 - p0;

    double t0 = 0.0, t1 = 1.0;
    const double lo[2] = {-r.half_len, -r.half_wid};
    const double hi[2] = {r.half_len, r.half_wid};
    const double p[2] = {p0.x, p0.y};
    const double dd[2] = {d.x, d.y};

    for (int i = 0; i < 2; ++i) {
        if (std::abs(dd[i]) < 1e-15) {
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        } else {
            double ta = (lo[i] - p[i]) / dd[i];
            double tb = (hi[i] - p[i]) / dd[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}

// Earliest parameter t in [0,1] at which segment a-b enters the rectangle, or
// a negative value if it misses. t == 0 means the segment starts inside.
inline double segment_rect_entry(const Vec2& a, const Vec2& b, const OrientedRect& r) {
    const Vec2 p0 = r.to_local(a);
    const Vec2 p1 = r.to_local(b);
    const Vec2 d = p1 - p0;

    double t0 = 0.0, t1 = 1.0;
    const double lo[2] = {-r.half_len, -r.half_wid};
    const double hi[2] = {r.half_len, r.half_wid};
    const double p[2] = {p0.x, p0.y};
    const double dd[2] = {d.x, d.y};

    for (int i = 0; i < 2; ++i) {
        if (std::abs(dd[i]) < 1e-15) {
            if (p[i] < lo[i] || p[i] > hi[i]) return -1.0;
        } else {
            double ta = (lo[i] - p[i]) / dd[i];
            double tb = (hi[i] - p[i]) / dd[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return -1.0;
        }
    }
    return t0;
}

// Oriented-rectangle overlap via the separating axis theorem (4 axes).
inline bool rects_overlap(const OrientedRect& a, const OrientedRect& b) {
    const auto ca = a.corners();
    const auto cb = b.corners();
    const OrientedRect* rects[2] = {&a, &b};
    for (const OrientedRect* r : rects) {
        const Vec2 ax = heading_vec(r->heading);
        const Vec2 axes[2] = {ax, {-ax.y, ax.x}};
        for (const Vec2& axis : axes) {
            double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            for (const Vec2& c : ca) {
                const double v = c.dot(axis);
                amin = std::min(amin, v);
                amax = std::max(amax, v);
            }
            for (const Vec2& c : cb) {
                const double v = c.dot(axis);
                bmin = std::min(bmin, v);
                bmax = std::max(bmax, v);
            }
            if (amax < bmin || bmax < amin) return false;
        }
    }
    return true;
}

}  // namespace cpsim
