#pragma once

#include <algorithm>
#include <cmath>

namespace gmd {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Closest-point parameter of p on segment [a,b], clamped to [0,1].
inline double project_param(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return 0.0;
    return std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double t = project_param(p, a, b);
    return norm(p - (a + t * (b - a)));
}

enum class ContactKind {
    None,
    EndpointTouch,     // segments meet only at (eps-close) endpoints of both
    Tee,               // an endpoint of one lies in the interior of the other
    Crossing,          // interiors cross at a single point
    CollinearOverlap,  // positive-length shared piece
};

struct SegmentContact {
    ContactKind kind = ContactKind::None;
    Vec2 point;
    // Parameters of `point` along the first and second segment.
    double t = 0.0;
    double s = 0.0;
    // For Tee: which segment owns the endpoint (0 = first, 1 = second) and
    // which of its endpoints (0 or 1) it is.
    int tee_owner = -1;
    int tee_endpoint = -1;
};

// Classifies how segments [p0,p1] and [q0,q1] meet, with distance tolerance eps.
// Endpoints within eps of each other count as the same point.
inline SegmentContact classify_contact(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1, double eps) {
    SegmentContact out;
    const Vec2 dp = p1 - p0;
    const Vec2 dq = q1 - q0;
    const double lp = norm(dp);
    const double lq = norm(dq);

    auto near_endpoint_of_q = [&](Vec2 x) { return norm(x - q0) <= eps || norm(x - q1) <= eps; };
    auto near_endpoint_of_p = [&](Vec2 x) { return norm(x - p0) <= eps || norm(x - p1) <= eps; };

    // Collinear: every endpoint within eps of the other segment's supporting line.
    const bool collinear = lp > eps && lq > eps &&
                           std::abs(cross(dp, q0 - p0)) / lp <= eps &&
                           std::abs(cross(dp, q1 - p0)) / lp <= eps &&
                           std::abs(cross(dq, p0 - q0)) / lq <= eps &&
                           std::abs(cross(dq, p1 - q0)) / lq <= eps;
    if (collinear) {
        const double a = dot(q0 - p0, dp) / lp;
        const double b = dot(q1 - p0, dp) / lp;
        const double lo = std::max(0.0, std::min(a, b));
        const double hi = std::min(lp, std::max(a, b));
        if (hi - lo > eps) {
            out.kind = ContactKind::CollinearOverlap;
            out.t = 0.5 * (lo + hi) / lp;
            out.point = p0 + out.t * dp;
            out.s = project_param(out.point, q0, q1);
            return out;
        }
        if (hi - lo < -eps) return out;
        out.kind = ContactKind::EndpointTouch;
        out.t = std::clamp(lo / lp, 0.0, 1.0);
        out.point = p0 + out.t * dp;
        out.s = project_param(out.point, q0, q1);
        return out;
    }

    // An endpoint lying on the other segment (Tee or EndpointTouch).
    const Vec2 ends[4] = {p0, p1, q0, q1};
    for (int k = 0; k < 4; ++k) {
        const bool of_p = k < 2;
        const Vec2 x = ends[k];
        const double dist = of_p ? point_segment_distance(x, q0, q1) : point_segment_distance(x, p0, p1);
        if (dist > eps) continue;
        out.point = x;
        out.t = project_param(x, p0, p1);
        out.s = project_param(x, q0, q1);
        if (of_p ? near_endpoint_of_q(x) : near_endpoint_of_p(x)) {
            out.kind = ContactKind::EndpointTouch;
        } else {
            out.kind = ContactKind::Tee;
            out.tee_owner = of_p ? 0 : 1;
            out.tee_endpoint = k % 2;
        }
        return out;
    }

    const double denom = cross(dp, dq);
    if (denom == 0.0) return out;
    const double t = cross(q0 - p0, dq) / denom;
    const double s = cross(q0 - p0, dp) / denom;
    if (t > 0.0 && t < 1.0 && s > 0.0 && s < 1.0) {
        out.kind = ContactKind::Crossing;
        out.t = t;
        out.s = s;
        out.point = p0 + t * dp;
    }
    return out;
}

}  // namespace gmd
