#pragma once

// Tolerance-aware vector/plane/polygon primitives and generic-projection
// selection shared by the rest of the library. Everything here is pure value
// semantics; no shared mutable state.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ribbonfold {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NoGenericDirection : public Error {
public:
    explicit NoGenericDirection(const std::string& msg) : Error(msg) {}
};

class DegenerateCrossing : public Error {
public:
    explicit DegenerateCrossing(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// Tolerances. Absolute, in strip-width units (width normalized to 1).

struct Tolerance {
    double eps_point = 1e-9;
    double eps_angle = 1e-9;
};

// ---------------------------------------------------------------------------
// Vectors

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::sqrt(x * x + y * y); }
    Vec2 normalized() const {
        double n = norm();
        return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
    }
    // rotate by +90 degrees (counterclockwise)
    Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0 ? Vec3{x / n, y / n, z / n} : Vec3{0, 0, 0};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// 3x3 matrix (row-major)

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static Mat3 identity() { return Mat3{}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }

    Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    double det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    // Rodrigues rotation about a unit axis.
    static Mat3 axis_angle(const Vec3& axis, double angle) {
        Vec3 u = axis.normalized();
        double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Mat3 r;
        r.m = {{{c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s},
                {u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s},
                {u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t}}};
        return r;
    }
};

// ---------------------------------------------------------------------------
// Rigid placement of a face in 3-space. rotation is a proper rotation
// (paper moves rigidly); `reflect` records whether the sheet has been turned
// over relative to its development (toggled by each flat fold).

struct RigidPlacement {
    Mat3 rotation;
    Vec3 translation;
    bool reflect = false;

    static RigidPlacement identity() { return RigidPlacement{}; }

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
    Vec3 apply(const Vec2& q) const { return apply(Vec3{q.x, q.y, 0.0}); }

    // Composition: (a.compose(b))(p) == a(b(p)).
    RigidPlacement compose(const RigidPlacement& b) const {
        RigidPlacement r;
        r.rotation = rotation * b.rotation;
        r.translation = rotation * b.translation + translation;
        r.reflect = reflect != b.reflect;
        return r;
    }

    RigidPlacement inverse() const {
        RigidPlacement r;
        r.rotation = rotation.transpose();
        r.translation = -(r.rotation * translation);
        r.reflect = reflect;
        return r;
    }

    // Image of the development's +z normal; for a placed planar sheet this is
    // the sheet's oriented normal when `reflect` is folded into the rotation.
    Vec3 sheet_normal() const { return rotation * Vec3{0, 0, 1}; }

    bool is_rigid(const Tolerance& tol = {}) const {
        Mat3 should_be_id = rotation * rotation.transpose();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double want = i == j ? 1.0 : 0.0;
                if (std::abs(should_be_id.m[i][j] - want) > 1e3 * tol.eps_point)
                    return false;
            }
        return std::abs(rotation.det() - 1.0) < 1e3 * tol.eps_point;
    }

    // Rotation by `angle` about the line through `point` with direction `axis`.
    static RigidPlacement rotation_about_line(const Vec3& point, const Vec3& axis,
                                              double angle, bool reflect_flag = false) {
        RigidPlacement r;
        r.rotation = Mat3::axis_angle(axis, angle);
        r.translation = point - r.rotation * point;
        r.reflect = reflect_flag;
        return r;
    }
};

// ---------------------------------------------------------------------------
// 2D segment crossing

struct SegmentCrossing {
    Vec2 point;
    double s = 0;  // parameter on the first segment
    double t = 0;  // parameter on the second segment
};

// Interior transverse intersection of two 2D segments, or nullopt when they
// are disjoint. Endpoint incidences and parallel overlaps signal a
// non-generic projection and raise DegenerateCrossing.
inline std::optional<SegmentCrossing> segment_crossing(const Vec2& a0, const Vec2& a1,
                                                       const Vec2& b0, const Vec2& b1,
                                                       const Tolerance& tol = {}) {
    Vec2 d1 = a1 - a0;
    Vec2 d2 = b1 - b0;
    double len1 = d1.norm(), len2 = d2.norm();
    double denom = d1.cross(d2);
    double sin_angle = std::abs(denom) / (len1 * len2);

    if (sin_angle < tol.eps_angle) {
        // Near-parallel: reject overlaps, accept clean separation.
        Vec2 w = b0 - a0;
        double line_dist = std::abs(d1.cross(w)) / len1;
        if (line_dist < tol.eps_point) {
            double u0 = d1.dot(b0 - a0) / (len1 * len1);
            double u1 = d1.dot(b1 - a0) / (len1 * len1);
            double lo = std::min(u0, u1), hi = std::max(u0, u1);
            double overlap = std::min(hi, 1.0) - std::max(lo, 0.0);
            if (overlap * len1 > tol.eps_point)
                throw DegenerateCrossing("collinear overlapping segments");
        }
        return std::nullopt;
    }

    Vec2 w = b0 - a0;
    double s = w.cross(d2) / denom;
    double t = w.cross(d1) / denom;

    double margin_s = tol.eps_point / len1;
    double margin_t = tol.eps_point / len2;
    if (s < -margin_s || s > 1.0 + margin_s || t < -margin_t || t > 1.0 + margin_t)
        return std::nullopt;

    // Inside the closed hull of both segments: decide interior vs endpoint.
    double end_dist = std::min(std::min(s, 1.0 - s) * len1, std::min(t, 1.0 - t) * len2);
    if (end_dist < tol.eps_point)
        throw DegenerateCrossing("intersection within tolerance of an endpoint");

    return SegmentCrossing{a0 + d1 * s, s, t};
}

// ---------------------------------------------------------------------------
// Closed 3D polylines (shared with curve extraction, declared here because
// generic_direction consumes them).

enum class CurveComponent { boundary, boundary2, midline };

struct SpaceCurve {
    CurveComponent id = CurveComponent::boundary;
    // Closed polyline; first vertex is not repeated at the end.
    std::vector<Vec3> vertices;

    std::size_t size() const { return vertices.size(); }
    const Vec3& at(std::size_t i) const { return vertices[i % vertices.size()]; }
    Vec3 segment_start(std::size_t i) const { return at(i); }
    Vec3 segment_end(std::size_t i) const { return at(i + 1); }
};

namespace detail {

struct ProjectionBasis {
    Vec3 u, v, d;
};

inline ProjectionBasis projection_basis(const Vec3& dir) {
    Vec3 d = dir.normalized();
    Vec3 seed = std::abs(d.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 u = seed.cross(d).normalized();
    Vec3 v = d.cross(u);  // (u, v, d) right-handed
    return {u, v, d};
}

inline Vec2 project(const ProjectionBasis& b, const Vec3& p) {
    return {p.dot(b.u), p.dot(b.v)};
}

struct FlatSegment {
    Vec2 a, b;
    std::size_t curve;
    std::size_t index;  // segment index within the curve
    double ha, hb;      // heights along the projection direction
};

inline std::vector<FlatSegment> project_curves(const std::vector<SpaceCurve>& curves,
                                               const ProjectionBasis& basis,
                                               const Tolerance& tol) {
    std::vector<FlatSegment> out;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& cv = curves[c];
        for (std::size_t i = 0; i < cv.size(); ++i) {
            Vec3 p = cv.segment_start(i), q = cv.segment_end(i);
            if (distance(p, q) <= tol.eps_point) continue;  // collapsed segment
            out.push_back({project(basis, p), project(basis, q), c, i,
                           p.dot(basis.d), q.dot(basis.d)});
        }
    }
    return out;
}

inline bool segments_adjacent(const FlatSegment& s1, const FlatSegment& s2,
                              std::size_t curve_len) {
    if (s1.curve != s2.curve) return false;
    std::size_t d = (s1.index + curve_len - s2.index) % curve_len;
    return d == 1 || d == curve_len - 1 || d == 0;
}

// Checks the three genericity conditions for a candidate direction.
// Returns true when the projection is generic for these curves.
inline bool direction_is_generic(const std::vector<SpaceCurve>& curves,
                                 const Vec3& dir, const Tolerance& tol) {
    ProjectionBasis basis = projection_basis(dir);
    std::vector<FlatSegment> segs = project_curves(curves, basis, tol);

    std::vector<std::size_t> curve_len(curves.size());
    for (std::size_t c = 0; c < curves.size(); ++c) curve_len[c] = curves[c].size();

    std::vector<Vec2> crossing_points;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const auto& s1 = segs[i];
            const auto& s2 = segs[j];
            bool adjacent = segments_adjacent(s1, s2, curve_len[s1.curve]);
            Vec2 d1 = s1.b - s1.a, d2 = s2.b - s2.a;
            double len1 = d1.norm(), len2 = d2.norm();
            if (len1 < tol.eps_point || len2 < tol.eps_point) return false;
            double sin_angle = std::abs(d1.cross(d2)) / (len1 * len2);

            if (sin_angle < 1e-7) {
                // (a) no two segment-images collinear-overlapping
                double line_dist = std::abs(d1.cross(s2.a - s1.a)) / len1;
                if (line_dist < 1e-9) {
                    double u0 = d1.dot(s2.a - s1.a) / (len1 * len1);
                    double u1 = d1.dot(s2.b - s1.a) / (len1 * len1);
                    double lo = std::min(u0, u1), hi = std::max(u0, u1);
                    double shared_end = adjacent ? 2e-9 / len1 : 0.0;
                    if (std::min(hi, 1.0) - std::max(lo, 0.0) > shared_end) return false;
                }
                continue;
            }

            double denom = d1.cross(d2);
            Vec2 w = s2.a - s1.a;
            double s = w.cross(d2) / denom;
            double t = w.cross(d1) / denom;
            double margin_s = tol.eps_point / len1, margin_t = tol.eps_point / len2;
            if (s < -margin_s || s > 1 + margin_s || t < -margin_t || t > 1 + margin_t)
                continue;

            double end_dist =
                std::min(std::min(s, 1 - s) * len1, std::min(t, 1 - t) * len2);
            if (adjacent) {
                // Consecutive segments meet at their shared vertex; only an
                // interior re-crossing would be a true crossing.
                if (end_dist < tol.eps_point) continue;
            }
            if (end_dist < tol.eps_point) return false;  // endpoint incidence
            if (sin_angle <= tol.eps_angle) return false;  // (c) tangential
            crossing_points.push_back(s1.a + d1 * s);
        }
    }

    // (b) no triple points: crossing points must be pairwise distinct.
    for (std::size_t i = 0; i < crossing_points.size(); ++i)
        for (std::size_t j = i + 1; j < crossing_points.size(); ++j)
            if (distance(crossing_points[i], crossing_points[j]) < tol.eps_point)
                return false;
    return true;
}

}  // namespace detail

// Deterministic generic projection direction: walk a fixed low-discrepancy
// spiral of directions around +z (offset by the seed) and return the first
// one whose projection of all curves has no collinear overlaps, no triple
// points, and only transverse crossings.
inline Vec3 generic_direction(const std::vector<SpaceCurve>& curves, std::uint64_t seed,
                              const Tolerance& tol = {}) {
    if (curves.empty()) throw Error("generic_direction: no curves");
    for (const auto& c : curves)
        if (c.size() < 3) throw Error("generic_direction: curve with fewer than 3 vertices");

    const double golden = 2.399963229728653;  // golden angle, radians
    const int max_candidates = 10000;
    for (int k = 0; k < max_candidates; ++k) {
        double phi = golden * (static_cast<double>(k) + 1.0) +
                     0.7368567 * static_cast<double>(seed % 1000003);
        double theta = 0.02 * (1.0 + 0.015 * static_cast<double>(k));
        if (theta > 1.25) theta = 1.25;  // keep well away from grazing
        Vec3 dir{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                 std::cos(theta)};
        if (detail::direction_is_generic(curves, dir, tol)) return dir;
    }
    throw NoGenericDirection("no generic projection direction after 10^4 candidates");
}

// ---------------------------------------------------------------------------
// Polygon utilities (development coordinates are CCW simple polygons)

inline double signed_area(const std::vector<Vec2>& poly) {
    double a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a += p.cross(q);
    }
    return 0.5 * a;
}

inline Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
    double a = 0;
    Vec2 c{0, 0};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        double w = p.cross(q);
        a += w;
        c = c + (p + q) * w;
    }
    if (std::abs(a) < 1e-300) return poly.empty() ? Vec2{0, 0} : poly[0];
    return c * (1.0 / (3.0 * a));
}

// Distance from a point to a segment.
inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 d = b - a;
    double len2 = d.dot(d);
    if (len2 <= 0) return distance(p, a);
    double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return distance(p, a + d * t);
}

inline double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 d = b - a;
    double len2 = d.dot(d);
    if (len2 <= 0) return distance(p, a);
    double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return distance(p, a + d * t);
}

// Minimum distance between two 3D segments.
inline double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2,
                                        const Vec3& q2) {
    Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
    double s, t;
    const double tiny = 1e-30;
    if (a <= tiny && e <= tiny) return distance(p1, p2);
    if (a <= tiny) {
        s = 0;
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        double c = d1.dot(r);
        if (e <= tiny) {
            t = 0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            double b = d1.dot(d2), denom = a * e - b * b;
            s = denom > tiny ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1) {
                t = 1;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p1 + d1 * s, p2 + d2 * t);
}

// +1 strictly inside (further than margin from the boundary), -1 strictly
// outside, 0 within margin of the boundary.
inline int point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly,
                            double margin = 1e-9) {
    double bdist = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i)
        bdist = std::min(bdist,
                         point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
    if (bdist <= margin) return 0;
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        bool crosses = (poly[i].y > p.y) != (poly[j].y > p.y);
        if (crosses) {
            double xint = poly[j].x +
                          (poly[i].x - poly[j].x) * (p.y - poly[j].y) / (poly[i].y - poly[j].y);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

// Ear-clipping triangulation of a simple CCW polygon; convex polygons fan.
// Deterministic: always clips the lowest-index available ear.
inline std::vector<std::array<std::size_t, 3>> triangulate_polygon(
    const std::vector<Vec2>& poly) {
    std::vector<std::array<std::size_t, 3>> tris;
    std::size_t n = poly.size();
    if (n < 3) return tris;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;

    auto is_convex_vertex = [&](std::size_t a, std::size_t b, std::size_t c) {
        return (poly[b] - poly[a]).cross(poly[c] - poly[b]) > 1e-15;
    };
    auto ear_ok = [&](std::size_t ia, std::size_t ib, std::size_t ic) {
        if (!is_convex_vertex(ia, ib, ic)) return false;
        for (std::size_t k : idx) {
            if (k == ia || k == ib || k == ic) continue;
            // point strictly inside the candidate ear?
            Vec2 p = poly[k];
            double d1 = (poly[ib] - poly[ia]).cross(p - poly[ia]);
            double d2 = (poly[ic] - poly[ib]).cross(p - poly[ib]);
            double d3 = (poly[ia] - poly[ic]).cross(p - poly[ic]);
            if (d1 > 1e-15 && d2 > 1e-15 && d3 > 1e-15) return false;
        }
        return true;
    };

    int guard = 0;
    while (idx.size() > 3 && guard++ < 100000) {
        bool clipped = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::size_t ia = idx[(i + idx.size() - 1) % idx.size()];
            std::size_t ib = idx[i];
            std::size_t ic = idx[(i + 1) % idx.size()];
            if (ear_ok(ia, ib, ic)) {
                tris.push_back({ia, ib, ic});
                idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
                clipped = true;
                break;
            }
        }
        if (!clipped) throw Error("triangulate_polygon: no ear found (non-simple polygon?)");
    }
    if (idx.size() == 3) tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

// Fixed 9-significant-digit decimal formatting used for all numeric output.
inline std::string format9(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace ribbonfold
