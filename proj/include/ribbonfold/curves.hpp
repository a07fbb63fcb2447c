#pragma once

// Boundary and midline extraction from an eps-inflated folded state, and the
// signed crossing diagram of a generic projection. Layers separate along
// their plane-group normals; curves cross each joint on a small connector
// that follows the same side of the joint line as the physical fold.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ribbonfold/fold.hpp"
#include "ribbonfold/geometry.hpp"
#include "ribbonfold/strip.hpp"

namespace ribbonfold {

class LayerViolations : public Error {
public:
    explicit LayerViolations(const std::string& msg) : Error(msg) {}
};

class OpenCurve : public Error {
public:
    explicit OpenCurve(const std::string& msg) : Error(msg) {}
};

class CurveIntersection : public Error {
public:
    explicit CurveIntersection(const std::string& msg) : Error(msg) {}
};

struct InflationParams {
    double eps = 0.01;    // gap between consecutive layers
    double inset = 0.005; // connector offset beyond the joint line; 0 <= inset < eps
};

// Per-face placement with the layer offset applied: each face translated
// along its plane-group normal by layer * eps.
inline std::vector<RigidPlacement> inflate(const FoldedState& st,
                                           const InflationParams& params) {
    auto violations = check_layers(st);
    if (!violations.empty())
        throw LayerViolations("layer conditions violated (" +
                              std::to_string(violations.size()) + " violations)");
    std::vector<RigidPlacement> out = st.placements;
    for (std::size_t f = 0; f < st.strip.face_count(); ++f) {
        const PlaneGroup& g = st.group(static_cast<int>(f));
        Vec3 shift = g.normal * (params.eps * st.layer[f]);
        out[f].translation = out[f].translation + shift;
    }
    return out;
}

namespace detail {

enum class JointType { fold_u, seam_s, hook };

struct JointGeom {
    std::string label;
    int face_a = -1, face_b = -1;  // a = earlier in strip order (or last face for ends)
    bool ends = false;
    Vec3 seg_a, seg_b;  // placed joint segment, uninflated
    Vec3 dir;
    Vec3 off_a, off_b;  // inflation offsets of the two faces
    Vec3 u_a, u_b;      // in-plane outward directions, perpendicular to dir
    JointType type = JointType::fold_u;
    Vec3 poke;          // fold_u: outward poke; hook: exterior bisector
    int gap = 1;        // |layer difference| for fold_u connectors
};

inline Vec3 outward_in_plane(const FoldedState& st, int face, const Vec3& seg_a,
                             const Vec3& seg_b) {
    Vec3 dir = (seg_b - seg_a).normalized();
    auto poly = st.placed_face(face);
    Vec3 n = face_plane_normal(poly);
    Vec3 w = dir.cross(n).normalized();
    Vec3 centroid{0, 0, 0};
    for (const auto& p : poly) centroid = centroid + p;
    centroid = centroid * (1.0 / static_cast<double>(poly.size()));
    Vec3 mid = (seg_a + seg_b) * 0.5;
    if ((centroid - mid).dot(w) > 0) w = -w;
    return w;
}

inline std::vector<JointGeom> joint_geometry(const FoldedState& st,
                                             const InflationParams& params) {
    std::vector<JointGeom> joints;
    for (const auto& sp : st.gluing.side_pairs) {
        JointGeom j;
        j.label = sp.label;
        j.ends = sp.ends;
        if (sp.ends) {
            auto ends = end_edges(st.strip);
            j.face_a = ends.second.face;  // the tail of the strip glues back ...
            j.face_b = ends.first.face;   // ... onto the head
            Vec2 l0 = face_vertex(st.strip, ends.first, false);
            Vec2 l1 = face_vertex(st.strip, ends.first, true);
            j.seg_a = st.place(j.face_b, l0);
            j.seg_b = st.place(j.face_b, l1);
        } else {
            const Crease& c = st.strip.creases[static_cast<std::size_t>(sp.crease)];
            j.face_a = sp.crease;
            j.face_b = sp.crease + 1;
            j.seg_a = st.place(j.face_a, c.a);
            j.seg_b = st.place(j.face_a, c.b);
        }
        j.dir = (j.seg_b - j.seg_a).normalized();
        const PlaneGroup& ga = st.group(j.face_a);
        const PlaneGroup& gb = st.group(j.face_b);
        j.off_a = ga.normal * (params.eps * st.layer[static_cast<std::size_t>(j.face_a)]);
        j.off_b = gb.normal * (params.eps * st.layer[static_cast<std::size_t>(j.face_b)]);
        j.u_a = outward_in_plane(st, j.face_a, j.seg_a, j.seg_b);
        j.u_b = outward_in_plane(st, j.face_b, j.seg_a, j.seg_b);
        bool same_group = st.group_of[static_cast<std::size_t>(j.face_a)] ==
                          st.group_of[static_cast<std::size_t>(j.face_b)];
        if (same_group && j.u_a.dot(j.u_b) > 0.5) {
            j.type = JointType::fold_u;
            j.poke = (j.u_a + j.u_b).normalized();
            j.gap = std::abs(st.layer[static_cast<std::size_t>(j.face_a)] -
                             st.layer[static_cast<std::size_t>(j.face_b)]);
        } else if (same_group) {
            j.type = JointType::seam_s;
        } else {
            j.type = JointType::hook;
            Vec3 w = j.u_a + j.u_b;
            j.poke = w.norm() > 1e-9 ? w.normalized() : -j.u_a;
        }
        joints.push_back(j);
    }
    return joints;
}

// Connector polyline across a joint at the placed line point q, traversed
// from face `from` to face `to` (which must be the joint's two faces).
inline std::vector<Vec3> hop_points(const JointGeom& j, const Vec3& q, int from,
                                    const InflationParams& params) {
    bool forward = from == j.face_a;
    Vec3 off_from = forward ? j.off_a : j.off_b;
    Vec3 off_to = forward ? j.off_b : j.off_a;
    Vec3 u_from = forward ? j.u_a : j.u_b;
    Vec3 u_to = forward ? j.u_b : j.u_a;
    Vec3 pa = q + off_from;
    Vec3 pb = q + off_to;
    switch (j.type) {
        case JointType::fold_u: {
            double delta = params.inset * static_cast<double>(std::max(1, j.gap));
            return {pa, pa + j.poke * delta, pb + j.poke * delta, pb};
        }
        case JointType::seam_s:
            return {pa, pb};
        case JointType::hook: {
            double reach = std::max(off_from.norm(), off_to.norm());
            double r = std::max(params.inset, 0.5 * params.eps);
            double R = 2.0 * reach + 2.0 * params.inset + r;
            Vec3 corner = q + j.poke * R;
            return {pa, pa + u_from * r, corner, pb + u_to * r, pb};
        }
    }
    return {pa, pb};
}

inline void append_point(std::vector<Vec3>& pts, const Vec3& p) {
    if (!pts.empty() && distance(pts.back(), p) < 1e-12) return;
    pts.push_back(p);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Curve extraction

inline std::vector<SpaceCurve> extract_curves(const FoldedState& st,
                                              const InflationParams& params,
                                              bool midline_reversed = false) {
    if (!(params.eps > 0)) throw Error("extract_curves: eps must be positive");
    if (params.inset < 0 || params.inset >= params.eps)
        throw Error("extract_curves: inset must satisfy 0 <= inset < eps");
    auto offsets = inflate(st, params);  // also enforces the layer conditions
    auto joints = detail::joint_geometry(st, params);
    const CreasedStrip& strip = st.strip;
    const double eps = strip.tol.eps_point * 100;
    const std::size_t n = strip.face_count();

    auto face_offset = [&](int f) {
        return st.group(f).normal * (params.eps * st.layer[static_cast<std::size_t>(f)]);
    };
    auto inflated = [&](int f, const Vec2& dev) { return st.place(f, dev) + face_offset(f); };

    auto joint_for_crease = [&](int k) -> const detail::JointGeom& {
        for (const auto& j : joints)
            if (!j.ends && j.face_a == k) return j;
        throw Error("no joint for crease " + std::to_string(k));
    };
    auto end_joint = [&]() -> const detail::JointGeom& {
        for (const auto& j : joints)
            if (j.ends) return j;
        throw OpenCurve("model has no end gluing");
    };

    std::vector<SpaceCurve> curves;

    // --- boundary cycles ---
    // Split the stored cycle into components: a new component starts whenever
    // the previous edge's glued head does not meet the next edge's tail.
    auto edge_tail = [&](const BoundaryEdge& be) {
        return detail::face_vertex(strip, be.edge, be.reversed);
    };
    auto edge_head = [&](const BoundaryEdge& be) {
        return detail::face_vertex(strip, be.edge, !be.reversed);
    };
    auto glue_if_needed = [&](Vec2 p) {
        if (std::abs(p.x - strip.lambda) < eps)
            return detail::glue_end_point(p, strip.lambda, st.gluing.moebius);
        return p;
    };

    const auto& cyc = st.gluing.boundary_cycle;
    std::vector<std::vector<std::size_t>> components;
    {
        std::vector<std::size_t> cur;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            cur.push_back(i);
            Vec2 head = glue_if_needed(edge_head(cyc[i]));
            Vec2 next_tail =
                i + 1 < cyc.size() ? edge_tail(cyc[i + 1]) : edge_tail(cyc[cur.front()]);
            if (i + 1 < cyc.size() && !detail::same_point(head, next_tail, eps)) {
                components.push_back(cur);
                cur.clear();
            }
        }
        if (!cur.empty()) components.push_back(cur);
    }

    int comp_index = 0;
    for (const auto& comp : components) {
        SpaceCurve curve;
        curve.id = comp_index == 0 ? CurveComponent::boundary : CurveComponent::boundary2;
        std::vector<Vec3> pts;
        for (std::size_t ci = 0; ci < comp.size(); ++ci) {
            const BoundaryEdge& be = cyc[comp[ci]];
            int f = be.edge.face;
            Vec2 tail = edge_tail(be), head = edge_head(be);
            detail::append_point(pts, inflated(f, tail));
            detail::append_point(pts, inflated(f, head));

            const BoundaryEdge& nxt = cyc[comp[(ci + 1) % comp.size()]];
            int g = nxt.edge.face;
            Vec2 target = edge_tail(nxt);

            // Hop chain from face f at `head` to face g at `target`.
            Vec2 p = head;
            int cur_face = f;
            int guard = 0;
            while ((cur_face != g || !detail::same_point(p, target, eps)) &&
                   guard++ < 2 * static_cast<int>(n) + 4) {
                if (std::abs(p.x - strip.lambda) < eps &&
                    cur_face == static_cast<int>(n) - 1) {
                    const auto& j = end_joint();
                    Vec2 p2 = detail::glue_end_point(p, strip.lambda, st.gluing.moebius);
                    Vec3 q = st.place(cur_face, p);
                    for (const auto& hp : detail::hop_points(j, q, cur_face, params))
                        detail::append_point(pts, hp);
                    cur_face = 0;
                    p = p2;
                    continue;
                }
                // cross the next crease at this point
                int k = cur_face;  // crease k joins faces k, k+1
                if (k >= static_cast<int>(strip.creases.size()))
                    throw OpenCurve("boundary transition missed its target");
                const Crease& c = strip.creases[static_cast<std::size_t>(k)];
                if (point_segment_distance(p, c.a, c.b) > eps)
                    throw OpenCurve("boundary transition point is off crease " +
                                    std::to_string(k));
                const auto& j = joint_for_crease(k);
                Vec3 q = st.place(cur_face, p);
                for (const auto& hp : detail::hop_points(j, q, cur_face, params))
                    detail::append_point(pts, hp);
                cur_face = k + 1;
            }
            if (cur_face != g || !detail::same_point(p, target, eps))
                throw OpenCurve("boundary cycle does not close combinatorially");
        }
        if (pts.size() >= 2 && distance(pts.front(), pts.back()) < 1e-9) pts.pop_back();
        if (pts.size() < 3) throw OpenCurve("degenerate boundary component");
        curve.vertices = pts;
        curves.push_back(curve);
        ++comp_index;
    }

    // --- midline ---
    {
        SpaceCurve m;
        m.id = CurveComponent::midline;
        std::vector<Vec3> pts;
        const auto& segs = st.gluing.midline_segments;
        for (std::size_t f = 0; f < n; ++f) {
            detail::append_point(pts, inflated(static_cast<int>(f), segs[f].first));
            detail::append_point(pts, inflated(static_cast<int>(f), segs[f].second));
            if (f + 1 < n) {
                const auto& j = joint_for_crease(static_cast<int>(f));
                Vec3 q = st.place(static_cast<int>(f), segs[f].second);
                for (const auto& hp :
                     detail::hop_points(j, q, static_cast<int>(f), params))
                    detail::append_point(pts, hp);
            }
        }
        const auto& j = end_joint();
        Vec3 q = st.place(static_cast<int>(n) - 1, segs[n - 1].second);
        for (const auto& hp : detail::hop_points(j, q, static_cast<int>(n) - 1, params))
            detail::append_point(pts, hp);
        if (pts.size() >= 2 && distance(pts.front(), pts.back()) < 1e-9) pts.pop_back();
        if (pts.size() < 3) throw OpenCurve("degenerate midline");
        if (midline_reversed) std::reverse(pts.begin(), pts.end());
        m.vertices = pts;
        curves.push_back(m);
    }

    // Embedding check: non-adjacent segments keep positive clearance.
    for (std::size_t a = 0; a < curves.size(); ++a) {
        for (std::size_t b = a; b < curves.size(); ++b) {
            const auto& ca = curves[a];
            const auto& cb = curves[b];
            for (std::size_t i = 0; i < ca.size(); ++i) {
                for (std::size_t k = (a == b ? i + 1 : 0); k < cb.size(); ++k) {
                    if (a == b) {
                        std::size_t d = (k - i) % ca.size();
                        if (d == 1 || d + 1 == ca.size()) continue;
                    }
                    double dist = segment_segment_distance(
                        ca.segment_start(i), ca.segment_end(i), cb.segment_start(k),
                        cb.segment_end(k));
                    if (dist < strip.tol.eps_point * 10)
                        throw CurveIntersection(
                            "extracted curves intersect in 3D (segments " +
                            std::to_string(i) + "/" + std::to_string(k) + ")");
                }
            }
        }
    }

    return curves;
}

// ---------------------------------------------------------------------------
// Crossing diagram

struct Crossing {
    int over_curve = 0, under_curve = 0;
    std::size_t over_segment = 0, under_segment = 0;
    double over_param = 0, under_param = 0;
    Vec2 position;
    int sign = 0;  // orientation determinant of (over tangent, under tangent)
};

struct CrossingDiagram {
    Vec3 direction;
    std::vector<SpaceCurve> curves;
    std::vector<Crossing> crossings;
};

inline CrossingDiagram crossing_diagram(const std::vector<SpaceCurve>& curves,
                                        std::uint64_t seed, const Tolerance& tol = {}) {
    CrossingDiagram diag;
    diag.direction = generic_direction(curves, seed, tol);
    diag.curves = curves;
    auto basis = detail::projection_basis(diag.direction);

    struct PSeg {
        Vec2 a, b;
        double ha, hb;
        int curve;
        std::size_t index;
    };
    std::vector<PSeg> segs;
    for (std::size_t c = 0; c < curves.size(); ++c)
        for (std::size_t i = 0; i < curves[c].size(); ++i) {
            Vec3 p = curves[c].segment_start(i), q = curves[c].segment_end(i);
            if (distance(p, q) <= tol.eps_point) continue;
            segs.push_back({detail::project(basis, p), detail::project(basis, q),
                            p.dot(basis.d), q.dot(basis.d), static_cast<int>(c), i});
        }

    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t k = i + 1; k < segs.size(); ++k) {
            const PSeg& s1 = segs[i];
            const PSeg& s2 = segs[k];
            if (s1.curve == s2.curve) {
                std::size_t len = curves[static_cast<std::size_t>(s1.curve)].size();
                std::size_t d = (s2.index + len - s1.index) % len;
                if (d == 1 || d == len - 1 || d == 0) continue;
            }
            std::optional<SegmentCrossing> hit;
            hit = segment_crossing(s1.a, s1.b, s2.a, s2.b, tol);
            if (!hit) continue;
            double h1 = s1.ha + (s1.hb - s1.ha) * hit->s;
            double h2 = s2.ha + (s2.hb - s2.ha) * hit->t;
            Crossing x;
            bool first_over = h1 > h2;
            Vec2 d1 = (s1.b - s1.a).normalized();
            Vec2 d2 = (s2.b - s2.a).normalized();
            if (first_over) {
                x.over_curve = s1.curve;
                x.over_segment = s1.index;
                x.over_param = hit->s;
                x.under_curve = s2.curve;
                x.under_segment = s2.index;
                x.under_param = hit->t;
                x.sign = d1.cross(d2) > 0 ? 1 : -1;
            } else {
                x.over_curve = s2.curve;
                x.over_segment = s2.index;
                x.over_param = hit->t;
                x.under_curve = s1.curve;
                x.under_segment = s1.index;
                x.under_param = hit->s;
                x.sign = d2.cross(d1) > 0 ? 1 : -1;
            }
            x.position = hit->point;
            diag.crossings.push_back(x);
        }
    }

    // Deterministic order: by (over curve, segment, param).
    std::stable_sort(diag.crossings.begin(), diag.crossings.end(),
                     [](const Crossing& a, const Crossing& b) {
                         if (a.over_curve != b.over_curve) return a.over_curve < b.over_curve;
                         if (a.over_segment != b.over_segment)
                             return a.over_segment < b.over_segment;
                         return a.over_param < b.over_param;
                     });
    return diag;
}

// Plain text export of curves: one vertex per line, component-tagged.
inline std::string curves_to_text(const std::vector<SpaceCurve>& curves) {
    std::ostringstream os;
    for (const auto& c : curves) {
        const char* tag = c.id == CurveComponent::boundary
                              ? "boundary"
                              : (c.id == CurveComponent::boundary2 ? "boundary2" : "midline");
        os << "# " << tag << " " << c.size() << "\n";
        for (const auto& v : c.vertices)
            os << tag << " " << format9(v.x) << " " << format9(v.y) << " " << format9(v.z)
               << "\n";
    }
    return os.str();
}

}  // namespace ribbonfold
