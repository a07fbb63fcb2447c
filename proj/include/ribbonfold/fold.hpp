#pragma once

// Fold-program execution: rigid placements per face, layer bookkeeping for
// flat folds, coplanar plane groups, flat-foldability layer conditions
// (taco-taco / taco-tortilla), rotational symmetry detection, and the
// development (unfolding) round trip.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ribbonfold/geometry.hpp"
#include "ribbonfold/strip.hpp"

namespace ribbonfold {

class LayerConflict : public Error {
public:
    explicit LayerConflict(const std::string& msg) : Error(msg) {}
};

class NonPlanarFace : public Error {
public:
    explicit NonPlanarFace(const std::string& msg) : Error(msg) {}
};

class NotDevelopable : public Error {
public:
    explicit NotDevelopable(const std::string& msg) : Error(msg) {}
};

enum class Stacking { above, below };

struct FoldInstruction {
    int crease = 0;                      // index into CreasedStrip::creases
    double angle = std::numbers::pi;     // fold rotation in (0, 2*pi); pi = flat
    Stacking stacking = Stacking::above;
};

struct PlaneGroup {
    Vec3 normal;   // canonical orientation: largest-magnitude component positive
    double offset; // plane equation normal . x = offset
    std::vector<int> faces;  // ascending layer order along `normal`
};

struct FoldedState {
    CreasedStrip strip;
    GluingDiagram gluing;
    std::vector<RigidPlacement> placements;
    std::vector<int> layer;     // 1..group size within each plane group
    std::vector<int> group_of;  // plane group index per face
    std::vector<PlaneGroup> groups;

    Vec3 place(int face, const Vec2& dev) const {
        return placements[static_cast<std::size_t>(face)].apply(dev);
    }
    std::vector<Vec3> placed_face(int face) const {
        std::vector<Vec3> out;
        for (const auto& v : strip.faces[static_cast<std::size_t>(face)])
            out.push_back(place(face, v));
        return out;
    }
    const PlaneGroup& group(int face) const {
        return groups[static_cast<std::size_t>(group_of[static_cast<std::size_t>(face)])];
    }
};

namespace detail {

inline Vec3 canonical_normal(const Vec3& n) {
    double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    double lead = n.z;
    if (ax >= ay && ax >= az) lead = n.x;
    else if (ay >= az) lead = n.y;
    return lead < 0 ? -n : n;
}

inline Vec3 face_plane_normal(const std::vector<Vec3>& poly) {
    // Newell's method
    Vec3 n{0, 0, 0};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec3& p = poly[i];
        const Vec3& q = poly[(i + 1) % poly.size()];
        n.x += (p.y - q.y) * (p.z + q.z);
        n.y += (p.z - q.z) * (p.x + q.x);
        n.z += (p.x - q.x) * (p.y + q.y);
    }
    return n.normalized();
}

struct FacePlane {
    Vec3 normal;  // canonical
    double offset;
};

inline FacePlane placed_plane(const FoldedState& st, int face) {
    auto poly = st.placed_face(face);
    Vec3 n = canonical_normal(face_plane_normal(poly));
    double off = 0;
    for (const auto& p : poly) off += n.dot(p);
    off /= static_cast<double>(poly.size());
    return {n, off};
}

inline bool same_plane(const FacePlane& a, const FacePlane& b, double eps) {
    return a.normal.dot(b.normal) > 1.0 - 1e-9 && std::abs(a.offset - b.offset) < eps;
}

// 2D coordinates of a placed face within its plane (for overlap tests).
struct PlaneFrame {
    Vec3 origin, e1, e2;
    Vec2 to2d(const Vec3& p) const {
        Vec3 d = p - origin;
        return {d.dot(e1), d.dot(e2)};
    }
};

inline PlaneFrame plane_frame(const Vec3& normal, double offset) {
    Vec3 n = normal.normalized();
    Vec3 seed = std::abs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1 = seed.cross(n).normalized();
    Vec3 e2 = n.cross(e1);
    return {n * offset, e1, e2};
}

inline std::vector<Vec2> face_in_plane(const FoldedState& st, int face,
                                       const PlaneFrame& fr) {
    std::vector<Vec2> out;
    for (const auto& p : st.placed_face(face)) out.push_back(fr.to2d(p));
    return out;
}

inline bool polygons_overlap(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    return convex_intersection_area(a, b) > 1e-7;
}

}  // namespace detail

// Executes a fold program. Instructions move the entire downstream sub-path of
// faces (everything after the crease). Flat folds (angle == pi) restack the
// moving faces contiguously above or below the stationary stack in the crease
// plane, with their internal order reversed.
inline FoldedState fold(const CreasedStrip& strip, const GluingDiagram& gluing,
                        const std::vector<FoldInstruction>& program) {
    const double eps = strip.tol.eps_point * 100;
    const std::size_t n = strip.face_count();
    FoldedState st;
    st.strip = strip;
    st.gluing = gluing;
    st.placements.assign(n, RigidPlacement::identity());
    st.layer.assign(n, 1);

    std::set<int> used;
    for (const auto& instr : program) {
        if (instr.crease < 0 || instr.crease >= static_cast<int>(strip.creases.size()))
            throw Error("fold: instruction references missing crease " +
                        std::to_string(instr.crease));
        if (!used.insert(instr.crease).second)
            throw Error("fold: crease " + std::to_string(instr.crease) + " folded twice");
        if (!(instr.angle > 0 && instr.angle < 2 * std::numbers::pi))
            throw Error("fold: fold angle out of (0, 2*pi)");

        int k = instr.crease;  // crease joins face k and k+1
        const Crease& c = strip.creases[static_cast<std::size_t>(k)];
        Vec3 A = st.place(k, c.a);
        Vec3 B = st.place(k, c.b);
        Vec3 A2 = st.place(k + 1, c.a);
        Vec3 B2 = st.place(k + 1, c.b);
        if (distance(A, A2) > eps || distance(B, B2) > eps)
            throw Error("fold: crease " + std::to_string(k) + " not glued before folding");
        Vec3 axis = (B - A).normalized();

        bool flat = std::abs(instr.angle - std::numbers::pi) < 1e-12;

        // Stacking is read along the canonical normal of the crease plane
        // (largest-magnitude component positive), so "above" means the same
        // side for every fold into a given plane.
        detail::FacePlane crease_plane = detail::placed_plane(st, k);
        Vec2 cdev = polygon_centroid(strip.faces[static_cast<std::size_t>(k + 1)]);
        Vec3 cm = st.place(k + 1, cdev);
        Vec3 velocity = axis.cross(cm - A);
        double tip = velocity.dot(crease_plane.normal);
        double sense = (instr.stacking == Stacking::above) ? 1.0 : -1.0;
        if (tip < 0) sense = -sense;
        RigidPlacement rot =
            RigidPlacement::rotation_about_line(A, axis, sense * instr.angle, flat);
        std::vector<int> stationary_in_plane, moving_in_plane;
        for (int f = 0; f <= k; ++f)
            if (detail::same_plane(detail::placed_plane(st, f), crease_plane, eps))
                stationary_in_plane.push_back(f);

        for (int f = k + 1; f < static_cast<int>(n); ++f)
            st.placements[static_cast<std::size_t>(f)] =
                rot.compose(st.placements[static_cast<std::size_t>(f)]);

        if (flat) {
            for (int f = k + 1; f < static_cast<int>(n); ++f)
                if (detail::same_plane(detail::placed_plane(st, f), crease_plane, eps))
                    moving_in_plane.push_back(f);
            if (!moving_in_plane.empty()) {
                bool stack_up = instr.stacking == Stacking::above;
                int s_max = st.layer[static_cast<std::size_t>(stationary_in_plane[0])];
                int s_min = s_max;
                for (int f : stationary_in_plane) {
                    s_max = std::max(s_max, st.layer[static_cast<std::size_t>(f)]);
                    s_min = std::min(s_min, st.layer[static_cast<std::size_t>(f)]);
                }
                int m_max = st.layer[static_cast<std::size_t>(moving_in_plane[0])];
                int m_min = m_max;
                for (int f : moving_in_plane) {
                    m_max = std::max(m_max, st.layer[static_cast<std::size_t>(f)]);
                    m_min = std::min(m_min, st.layer[static_cast<std::size_t>(f)]);
                }
                for (int f : moving_in_plane) {
                    int old = st.layer[static_cast<std::size_t>(f)];
                    st.layer[static_cast<std::size_t>(f)] =
                        stack_up ? s_max + 1 + (m_max - old) : s_min - 1 - (old - m_min);
                }
            }
        }
    }

    // Defensive planarity check (rigid placements keep faces planar).
    for (std::size_t f = 0; f < n; ++f) {
        auto poly = st.placed_face(static_cast<int>(f));
        Vec3 nrm = detail::face_plane_normal(poly);
        for (const auto& p : poly)
            if (std::abs(nrm.dot(p - poly[0])) > eps)
                throw NonPlanarFace("face " + std::to_string(f) + " bent");
    }

    // Assemble plane groups; normalize layers to 1..size along the canonical
    // plane normal. Overlapping faces with tied layers are a conflict.
    st.group_of.assign(n, -1);
    for (std::size_t f = 0; f < n; ++f) {
        detail::FacePlane pl = detail::placed_plane(st, static_cast<int>(f));
        int gi = -1;
        for (std::size_t g = 0; g < st.groups.size(); ++g)
            if (detail::same_plane({st.groups[g].normal, st.groups[g].offset}, pl, eps))
                gi = static_cast<int>(g);
        if (gi < 0) {
            st.groups.push_back({pl.normal, pl.offset, {}});
            gi = static_cast<int>(st.groups.size()) - 1;
        }
        st.groups[static_cast<std::size_t>(gi)].faces.push_back(static_cast<int>(f));
        st.group_of[f] = gi;
    }
    for (auto& grp : st.groups) {
        auto& fs = grp.faces;
        std::stable_sort(fs.begin(), fs.end(), [&](int a, int b) {
            return st.layer[static_cast<std::size_t>(a)] < st.layer[static_cast<std::size_t>(b)];
        });
        detail::PlaneFrame fr = detail::plane_frame(grp.normal, grp.offset);
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
            if (st.layer[static_cast<std::size_t>(fs[i])] !=
                st.layer[static_cast<std::size_t>(fs[i + 1])])
                continue;
            auto pa = detail::face_in_plane(st, fs[i], fr);
            auto pb = detail::face_in_plane(st, fs[i + 1], fr);
            if (detail::polygons_overlap(pa, pb))
                throw LayerConflict("faces " + std::to_string(fs[i]) + " and " +
                                    std::to_string(fs[i + 1]) +
                                    " overlap with tied layers");
        }
        for (std::size_t i = 0; i < fs.size(); ++i)
            st.layer[static_cast<std::size_t>(fs[i])] = static_cast<int>(i) + 1;
    }

    return st;
}

// ---------------------------------------------------------------------------
// Layer conditions

struct LayerViolation {
    enum class Kind { taco_taco, taco_tortilla } kind;
    // taco_taco: the two joints (side-pair labels); taco_tortilla: joint + face
    std::string joint_a;
    std::string joint_b;
    int face = -1;
};

namespace detail {

struct PlacedJoint {
    std::string label;
    int face_lo, face_hi;  // the two joined faces
    Vec3 a, b;             // placed joint segment
    int group = -1;        // plane group when both faces share one, else -1
    int layer_lo = 0, layer_hi = 0;
};

inline std::vector<PlacedJoint> placed_joints(const FoldedState& st) {
    std::vector<PlacedJoint> out;
    const double eps = st.strip.tol.eps_point * 100;
    for (const auto& sp : st.gluing.side_pairs) {
        PlacedJoint j;
        j.label = sp.label;
        if (sp.ends) {
            auto ends = end_edges(st.strip);
            Vec2 l0 = detail::face_vertex(st.strip, ends.first, false);
            Vec2 l1 = detail::face_vertex(st.strip, ends.first, true);
            j.face_lo = ends.first.face;
            j.face_hi = ends.second.face;
            j.a = st.place(j.face_lo, l0);
            j.b = st.place(j.face_lo, l1);
            // The other end edge must coincide in space for a closed model.
            Vec2 r0 = detail::face_vertex(st.strip, ends.second, false);
            Vec2 r1 = detail::face_vertex(st.strip, ends.second, true);
            Vec3 q0 = st.place(j.face_hi, r0), q1 = st.place(j.face_hi, r1);
            double direct = std::max(distance(j.a, q0), distance(j.b, q1));
            double swapped = std::max(distance(j.a, q1), distance(j.b, q0));
            if (std::min(direct, swapped) > eps) continue;  // not closed: skip
        } else {
            const Crease& c = st.strip.creases[static_cast<std::size_t>(sp.crease)];
            j.face_lo = sp.crease;
            j.face_hi = sp.crease + 1;
            j.a = st.place(j.face_lo, c.a);
            j.b = st.place(j.face_lo, c.b);
        }
        if (st.group_of[static_cast<std::size_t>(j.face_lo)] ==
            st.group_of[static_cast<std::size_t>(j.face_hi)])
            j.group = st.group_of[static_cast<std::size_t>(j.face_lo)];
        j.layer_lo = st.layer[static_cast<std::size_t>(j.face_lo)];
        j.layer_hi = st.layer[static_cast<std::size_t>(j.face_hi)];
        if (j.layer_lo > j.layer_hi) std::swap(j.layer_lo, j.layer_hi);
        out.push_back(j);
    }
    return out;
}

inline bool joints_share_line(const PlacedJoint& x, const PlacedJoint& y, double eps) {
    Vec3 dx = (x.b - x.a).normalized();
    Vec3 dy = (y.b - y.a).normalized();
    if (std::abs(dx.dot(dy)) < 1.0 - 1e-9) return false;
    if (point_segment_distance(y.a, x.a, x.b) > eps &&
        point_segment_distance(y.a, x.a - dx * 100.0, x.b + dx * 100.0) > eps)
        return false;
    // overlap of the two segments along the common line with positive length
    double xa = 0, xb = (x.b - x.a).dot(dx);
    double ya = (y.a - x.a).dot(dx), yb = (y.b - x.a).dot(dx);
    if (ya > yb) std::swap(ya, yb);
    double lo = std::max(std::min(xa, xb), ya), hi = std::min(std::max(xa, xb), yb);
    return hi - lo > eps;
}

}  // namespace detail

// Flat-foldability layer conditions within each plane group. Empty result
// means the state is physically stackable.
inline std::vector<LayerViolation> check_layers(const FoldedState& st) {
    std::vector<LayerViolation> out;
    const double eps = st.strip.tol.eps_point * 100;
    auto joints = detail::placed_joints(st);

    // taco-taco: joints on a common line in a common group must have nested
    // or disjoint layer intervals.
    for (std::size_t i = 0; i < joints.size(); ++i) {
        for (std::size_t j = i + 1; j < joints.size(); ++j) {
            const auto& x = joints[i];
            const auto& y = joints[j];
            if (x.group < 0 || x.group != y.group) continue;
            if (!detail::joints_share_line(x, y, eps)) continue;
            bool interlaced = (x.layer_lo < y.layer_lo && y.layer_lo < x.layer_hi &&
                               x.layer_hi < y.layer_hi) ||
                              (y.layer_lo < x.layer_lo && x.layer_lo < y.layer_hi &&
                               y.layer_hi < x.layer_hi);
            if (interlaced)
                out.push_back({LayerViolation::Kind::taco_taco, x.label, y.label, -1});
        }
    }

    // taco-tortilla: no face may cover an interior point of a joint segment at
    // a layer strictly between the joint's layers.
    for (const auto& j : joints) {
        if (j.group < 0 || j.layer_hi - j.layer_lo < 2) continue;
        const PlaneGroup& grp = st.groups[static_cast<std::size_t>(j.group)];
        detail::PlaneFrame fr = detail::plane_frame(grp.normal, grp.offset);
        Vec2 a2 = fr.to2d(j.a), b2 = fr.to2d(j.b);
        std::vector<Vec2> probes = {a2 + (b2 - a2) * 0.5, a2 + (b2 - a2) * 0.25,
                                    a2 + (b2 - a2) * 0.75};
        for (int f : grp.faces) {
            if (f == j.face_lo || f == j.face_hi) continue;
            int lf = st.layer[static_cast<std::size_t>(f)];
            if (lf <= j.layer_lo || lf >= j.layer_hi) continue;
            auto poly = detail::face_in_plane(st, f, fr);
            for (const auto& p : probes) {
                if (point_in_polygon(p, poly, 1e-7) > 0) {
                    out.push_back({LayerViolation::Kind::taco_tortilla, j.label, "", f});
                    break;
                }
            }
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const LayerViolation& a,
                                                const LayerViolation& b) {
        if (a.joint_a != b.joint_a) return a.joint_a < b.joint_a;
        if (a.joint_b != b.joint_b) return a.joint_b < b.joint_b;
        return a.face < b.face;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Rotational symmetry of the folded image

namespace detail {

inline bool point_on_state(const FoldedState& st, const Vec3& p, double eps) {
    for (std::size_t f = 0; f < st.strip.face_count(); ++f) {
        const PlaneGroup& grp = st.group(static_cast<int>(f));
        if (std::abs(grp.normal.dot(p) - grp.offset) > eps) continue;
        PlaneFrame fr = plane_frame(grp.normal, grp.offset);
        auto poly = face_in_plane(st, static_cast<int>(f), fr);
        if (point_in_polygon(fr.to2d(p), poly, eps) >= 0) return true;
    }
    return false;
}

inline Vec3 state_centroid(const FoldedState& st) {
    Vec3 c{0, 0, 0};
    double wsum = 0;
    for (std::size_t f = 0; f < st.strip.face_count(); ++f) {
        double w = std::abs(signed_area(st.strip.faces[f]));
        Vec2 cd = polygon_centroid(st.strip.faces[f]);
        c = c + st.place(static_cast<int>(f), cd) * w;
        wsum += w;
    }
    return c * (1.0 / wsum);
}

}  // namespace detail

// True iff some axis exists such that rotation by 2*pi/order maps the union of
// placed face images onto itself (within tolerance). Candidate axes: plane
// group normals, their pairwise bisectors, and the sum of all group normals,
// all through the area centroid.
inline bool symmetry_check(const FoldedState& st, int order, double eps = 1e-6) {
    if (order <= 1) return true;
    Vec3 centroid = detail::state_centroid(st);

    std::vector<Vec3> axes;
    Vec3 sum{0, 0, 0};
    for (const auto& g : st.groups) {
        axes.push_back(g.normal);
        sum = sum + g.normal;
    }
    if (sum.norm() > 1e-9) axes.push_back(sum.normalized());
    for (std::size_t i = 0; i < st.groups.size(); ++i)
        for (std::size_t j = i + 1; j < st.groups.size(); ++j) {
            Vec3 b = st.groups[i].normal + st.groups[j].normal;
            if (b.norm() > 1e-9) axes.push_back(b.normalized());
            Vec3 d = st.groups[i].normal - st.groups[j].normal;
            if (d.norm() > 1e-9) axes.push_back(d.normalized());
        }

    double angle = 2.0 * std::numbers::pi / order;
    for (const auto& axis : axes) {
        RigidPlacement rot = RigidPlacement::rotation_about_line(centroid, axis, angle);
        bool all_ok = true;
        for (std::size_t f = 0; f < st.strip.face_count() && all_ok; ++f) {
            const auto& dev = st.strip.faces[f];
            std::vector<Vec2> samples;
            for (std::size_t i = 0; i < dev.size(); ++i) {
                samples.push_back(dev[i]);
                samples.push_back((dev[i] + dev[(i + 1) % dev.size()]) * 0.5);
            }
            Vec2 cd = polygon_centroid(dev);
            samples.push_back(cd);
            for (const auto& v : dev) samples.push_back((v + cd) * 0.5);
            for (const auto& s : samples) {
                Vec3 p = rot.apply(st.place(static_cast<int>(f), s));
                if (!detail::point_on_state(st, p, eps)) {
                    all_ok = false;
                    break;
                }
            }
        }
        if (all_ok) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Development (unfolding) round trip

// Unfolds face placements back to the plane by walking the strip path, gluing
// each face to its predecessor across the shared crease. The result must match
// the original development vertex-for-vertex.
inline CreasedStrip develop(const FoldedState& st) {
    const CreasedStrip& strip = st.strip;
    const double eps = strip.tol.eps_point;
    const std::size_t n = strip.face_count();

    // 2D isometric embedding of each placed face, chained along the strip.
    std::vector<std::vector<Vec2>> unfolded(n);

    auto placed = [&](int f) { return st.placed_face(f); };

    // Face 0 anchors at its development coordinates via a best-effort frame:
    // first dev edge direction and first vertex.
    {
        auto poly3 = placed(0);
        const auto& dev = strip.faces[0];
        Vec3 e1 = (poly3[1] - poly3[0]).normalized();
        Vec3 nrm = detail::face_plane_normal(poly3);
        Vec3 e2 = nrm.cross(e1);
        Vec2 d1 = (dev[1] - dev[0]).normalized();
        Vec2 d2 = d1.perp();
        // two orientation choices; pick the one matching dev winding
        for (int flip = 0; flip < 2; ++flip) {
            Vec2 dd2 = flip ? -d2 : d2;
            std::vector<Vec2> out;
            for (const auto& p : poly3) {
                Vec3 r = p - poly3[0];
                out.push_back(dev[0] + d1 * r.dot(e1) + dd2 * r.dot(e2));
            }
            if (signed_area(out) > 0) {
                unfolded[0] = out;
                break;
            }
            unfolded[0] = out;
        }
    }

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Crease& c = strip.creases[k];
        Vec3 A = st.place(static_cast<int>(k), c.a);
        Vec3 B = st.place(static_cast<int>(k), c.b);
        Vec3 A2 = st.place(static_cast<int>(k) + 1, c.a);
        Vec3 B2 = st.place(static_cast<int>(k) + 1, c.b);
        if (distance(A, A2) > 1e2 * eps || distance(B, B2) > 1e2 * eps)
            throw NotDevelopable("crease " + std::to_string(k) +
                                 " edges do not coincide in space");

        // Unfolded images of the crease endpoints, from face k's unfolding.
        // Map dev coordinates through face k's (dev -> dev') transform. Face
        // k's unfolding is rigid, so fit via two dev vertices.
        const auto& devk = strip.faces[k];
        const auto& uk = unfolded[k];
        // build 2D rigid map dev -> unfolded for face k
        Vec2 o = devk[0];
        Vec2 ex = (devk[1] - devk[0]).normalized();
        Vec2 ey = ex.perp();
        Vec2 O = uk[0];
        Vec2 Ex = (uk[1] - uk[0]).normalized();
        Vec2 Ey = Ex.perp();
        double handed = signed_area(uk) * signed_area(devk) > 0 ? 1.0 : -1.0;
        auto map_k = [&](const Vec2& q) {
            Vec2 d = q - o;
            double u = d.dot(ex), v = d.dot(ey);
            return O + Ex * u + Ey * (handed * v);
        };
        Vec2 Au = map_k(c.a), Bu = map_k(c.b);

        // Lay out face k+1 against the unfolded crease with lengths from its
        // placed polygon; the face goes on the opposite side from face k.
        auto poly3 = placed(static_cast<int>(k) + 1);
        Vec3 e1 = (B - A).normalized();
        Vec3 nrm = detail::face_plane_normal(poly3);
        Vec3 e2 = nrm.cross(e1);
        Vec2 E1 = (Bu - Au).normalized();
        Vec2 E2 = E1.perp();

        Vec2 side_probe = map_k(polygon_centroid(devk));
        double side_k = (side_probe - Au).cross(Bu - Au);

        std::vector<Vec2> best;
        for (int flip = 0; flip < 2; ++flip) {
            Vec2 EE2 = flip ? -E2 : E2;
            std::vector<Vec2> out;
            for (const auto& p : poly3) {
                Vec3 r = p - A;
                out.push_back(Au + E1 * r.dot(e1) + EE2 * r.dot(e2));
            }
            double side = (polygon_centroid(out) - Au).cross(Bu - Au);
            if (side * side_k < 0) {
                best = out;
                break;
            }
            best = out;
        }
        unfolded[k + 1] = best;
    }

    // Compare against the original development.
    double max_dev = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (unfolded[f].size() != strip.faces[f].size())
            throw NotDevelopable("face " + std::to_string(f) + " vertex count changed");
        for (std::size_t i = 0; i < unfolded[f].size(); ++i)
            max_dev = std::max(max_dev, distance(unfolded[f][i], strip.faces[f][i]));
    }
    if (max_dev > eps)
        throw NotDevelopable("unfolded development deviates by " + format9(max_dev));

    CreasedStrip out = strip;
    out.faces = unfolded;
    return out;
}

}  // namespace ribbonfold
