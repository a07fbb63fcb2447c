#pragma once

// Flat creased strip combinatorics: faces, creases, gluing pairs, boundary
// cycle and midline. The strip is the rectangle [0, lambda] x [0, 1] cut into
// consecutive faces; width is normalized to 1 and lambda is the aspect ratio.

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ribbonfold/geometry.hpp"

namespace ribbonfold {

struct Crease {
    Vec2 a, b;  // endpoints in development coordinates
    double length() const { return distance(a, b); }
    Vec2 midheight_point() const {
        // point of the crease at height 1/2 (where the midline crosses)
        double dy = b.y - a.y;
        if (std::abs(dy) < 1e-12) return (a + b) * 0.5;
        double t = (0.5 - a.y) / dy;
        return a + (b - a) * t;
    }
};

struct CreasedStrip {
    double lambda = 1.0;
    std::vector<std::vector<Vec2>> faces;  // CCW polygons in strip order
    std::vector<Crease> creases;           // crease k joins face k and k+1
    std::vector<std::string> face_labels;
    // Which development side of each face carries the A color tag (+1 = the
    // dev +z side, -1 = the other side). The B tag is the opposite side.
    std::vector<int> a_side;
    Tolerance tol;

    std::size_t face_count() const { return faces.size(); }
    double total_area() const {
        double s = 0;
        for (const auto& f : faces) s += signed_area(f);
        return s;
    }
};

// Reference to one polygon edge: from vertex `vertex` to vertex `vertex`+1
// (mod size) of face `face`, in the face's CCW order.
struct EdgeRef {
    int face = 0;
    int vertex = 0;
};

struct BoundaryEdge {
    std::string label;  // "a".."f" in the catalog files
    EdgeRef edge;
    bool reversed = false;  // cycle traverses the polygon edge tail<-head
};

struct SidePair {
    std::string label;  // "A".."E" in the catalog files
    bool ends = false;  // true for the strip-end identification (the tape)
    int crease = -1;    // valid when !ends
};

struct GluingDiagram {
    std::vector<SidePair> side_pairs;
    std::vector<BoundaryEdge> boundary_cycle;
    bool moebius = true;  // ends glued (lambda, y) ~ (0, 1-y); false: (lambda, y) ~ (0, y)
    int boundary_components = 1;
    // Oriented midline segment of each face at height 1/2, strip direction.
    std::vector<std::pair<Vec2, Vec2>> midline_segments;
};

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(const std::string& code, const std::string& detail) {
        violations.push_back({code, detail});
    }
    std::string to_string() const {
        std::ostringstream os;
        for (const auto& v : violations) os << v.code << ": " << v.detail << "\n";
        return os.str();
    }
};

namespace detail {

inline Vec2 face_vertex(const CreasedStrip& s, const EdgeRef& e, bool head) {
    const auto& poly = s.faces[static_cast<std::size_t>(e.face)];
    std::size_t i = static_cast<std::size_t>(e.vertex);
    return head ? poly[(i + 1) % poly.size()] : poly[i];
}

inline bool same_point(const Vec2& a, const Vec2& b, double eps) {
    return distance(a, b) <= eps;
}

// Shared full edge between two faces: returns (edge in f1, edge in f2).
inline std::optional<std::pair<EdgeRef, EdgeRef>> shared_edge(const CreasedStrip& s,
                                                              int f1, int f2) {
    const auto& p1 = s.faces[static_cast<std::size_t>(f1)];
    const auto& p2 = s.faces[static_cast<std::size_t>(f2)];
    double eps = s.tol.eps_point * 10;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        Vec2 a = p1[i], b = p1[(i + 1) % p1.size()];
        for (std::size_t j = 0; j < p2.size(); ++j) {
            Vec2 c = p2[j], d = p2[(j + 1) % p2.size()];
            if (same_point(a, d, eps) && same_point(b, c, eps))
                return std::make_pair(EdgeRef{f1, static_cast<int>(i)},
                                      EdgeRef{f2, static_cast<int>(j)});
        }
    }
    return std::nullopt;
}

// End-gluing map: image of a point on the x = lambda edge on the x = 0 edge.
inline Vec2 glue_end_point(const Vec2& p, double lambda, bool moebius) {
    return moebius ? Vec2{0.0, 1.0 - p.y} : Vec2{0.0, p.y};
}

inline bool on_rect_boundary(const Vec2& p, double lambda, double eps) {
    return std::abs(p.y) < eps || std::abs(p.y - 1.0) < eps || std::abs(p.x) < eps ||
           std::abs(p.x - lambda) < eps;
}

// Convex polygon intersection area (Sutherland-Hodgman clip).
inline double convex_intersection_area(const std::vector<Vec2>& p,
                                       const std::vector<Vec2>& q) {
    std::vector<Vec2> poly = p;
    for (std::size_t i = 0; i < q.size() && !poly.empty(); ++i) {
        Vec2 a = q[i], b = q[(i + 1) % q.size()];
        Vec2 dir = b - a;
        std::vector<Vec2> next;
        for (std::size_t j = 0; j < poly.size(); ++j) {
            Vec2 cur = poly[j], nxt = poly[(j + 1) % poly.size()];
            double dc = dir.cross(cur - a);
            double dn = dir.cross(nxt - a);
            if (dc >= 0) next.push_back(cur);
            if ((dc > 0 && dn < 0) || (dc < 0 && dn > 0)) {
                double t = dc / (dc - dn);
                next.push_back(cur + (nxt - cur) * t);
            }
        }
        poly = std::move(next);
    }
    if (poly.size() < 3) return 0.0;
    return std::abs(signed_area(poly));
}

}  // namespace detail

// Derives the creases of a strip from consecutive shared edges. Throws if the
// faces do not form a path.
inline void derive_creases(CreasedStrip& strip) {
    strip.creases.clear();
    for (std::size_t k = 0; k + 1 < strip.faces.size(); ++k) {
        auto se = detail::shared_edge(strip, static_cast<int>(k), static_cast<int>(k + 1));
        if (!se) throw Error("strip faces " + std::to_string(k) + "," +
                             std::to_string(k + 1) + " share no full edge");
        Vec2 a = detail::face_vertex(strip, se->first, false);
        Vec2 b = detail::face_vertex(strip, se->first, true);
        strip.creases.push_back({a, b});
    }
}

// Locates the end edges: face 0 must carry the x=0 edge, the last face the
// x=lambda edge. Returns (left, right).
inline std::pair<EdgeRef, EdgeRef> end_edges(const CreasedStrip& s) {
    double eps = s.tol.eps_point * 10;
    auto find_vertical = [&](int f, double x) -> EdgeRef {
        const auto& poly = s.faces[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
            if (std::abs(a.x - x) < eps && std::abs(b.x - x) < eps &&
                std::abs(std::abs(a.y - b.y) - 1.0) < eps)
                return {f, static_cast<int>(i)};
        }
        throw Error("strip end edge not found at x=" + format9(x));
    };
    return {find_vertical(0, 0.0),
            find_vertical(static_cast<int>(s.face_count()) - 1, s.lambda)};
}

// Builds the full gluing diagram (side pairs, boundary cycle, midline) from a
// strip. Boundary edges are labeled a, b, c, ... in traversal order.
inline GluingDiagram derive_gluing(const CreasedStrip& strip, bool moebius) {
    GluingDiagram g;
    g.moebius = moebius;
    for (std::size_t k = 0; k < strip.creases.size(); ++k) {
        SidePair sp;
        sp.label = std::string(1, static_cast<char>('A' + k));
        sp.crease = static_cast<int>(k);
        g.side_pairs.push_back(sp);
    }
    SidePair endpair;
    endpair.label = std::string(1, static_cast<char>('A' + strip.creases.size()));
    endpair.ends = true;
    g.side_pairs.push_back(endpair);

    // Collect boundary edges: polygon edges that are neither creases nor ends.
    double eps = strip.tol.eps_point * 10;
    auto is_crease_edge = [&](const Vec2& a, const Vec2& b) {
        for (const auto& c : strip.creases)
            if ((detail::same_point(a, c.a, eps) && detail::same_point(b, c.b, eps)) ||
                (detail::same_point(a, c.b, eps) && detail::same_point(b, c.a, eps)))
                return true;
        return false;
    };
    auto is_end_edge = [&](const Vec2& a, const Vec2& b) {
        return (std::abs(a.x) < eps && std::abs(b.x) < eps) ||
               (std::abs(a.x - strip.lambda) < eps && std::abs(b.x - strip.lambda) < eps);
    };

    struct RawEdge {
        EdgeRef ref;
        Vec2 a, b;
    };
    std::vector<RawEdge> raw;
    for (std::size_t f = 0; f < strip.face_count(); ++f) {
        const auto& poly = strip.faces[f];
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
            if (is_crease_edge(a, b) || is_end_edge(a, b)) continue;
            raw.push_back({{static_cast<int>(f), static_cast<int>(i)}, a, b});
        }
    }

    // Trace cycles. Successor of a boundary endpoint p: the raw edge starting
    // at p, or at the glued image of p when p sits on a strip end.
    auto glued_successor_point = [&](Vec2 p) -> Vec2 {
        if (std::abs(p.x - strip.lambda) < eps)
            return detail::glue_end_point(p, strip.lambda, moebius);
        return p;
    };
    // Walking along the bottom boundary increases x; along the top it also
    // increases x in dev coordinates. An edge is traversed tail->head in the
    // direction of increasing x (both long sides are oriented with the strip).
    std::vector<bool> used(raw.size(), false);
    int cycles = 0;
    char next_label = 'a';
    for (std::size_t start = 0; start < raw.size(); ++start) {
        if (used[start]) continue;
        ++cycles;
        std::size_t cur = start;
        while (true) {
            used[cur] = true;
            BoundaryEdge be;
            be.edge = raw[cur].ref;
            // orient tail->head with increasing x
            be.reversed = raw[cur].a.x > raw[cur].b.x;
            be.label = std::string(1, next_label);
            if (next_label < 'z') ++next_label;
            g.boundary_cycle.push_back(be);
            Vec2 head = be.reversed ? raw[cur].a : raw[cur].b;
            Vec2 target = glued_successor_point(head);
            // find the unused edge whose oriented tail is `target`
            std::size_t nxt = raw.size();
            for (std::size_t j = 0; j < raw.size(); ++j) {
                if (used[j]) continue;
                Vec2 tail = raw[j].a.x > raw[j].b.x ? raw[j].b : raw[j].a;
                if (detail::same_point(tail, target, eps)) {
                    nxt = j;
                    break;
                }
            }
            if (nxt == raw.size()) break;  // cycle closed (or open: validate catches it)
            cur = nxt;
        }
    }
    g.boundary_components = cycles;

    // Midline segments: y = 1/2 chord of each face, oriented with the strip.
    for (std::size_t f = 0; f < strip.face_count(); ++f) {
        const auto& poly = strip.faces[f];
        std::vector<Vec2> hits;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
            double dy = b.y - a.y;
            if (std::abs(dy) < 1e-12) continue;
            double t = (0.5 - a.y) / dy;
            if (t < -1e-9 || t > 1 + 1e-9) continue;
            Vec2 p = a + (b - a) * t;
            bool dup = false;
            for (const auto& h : hits)
                if (detail::same_point(h, p, eps)) dup = true;
            if (!dup) hits.push_back(p);
        }
        if (hits.size() != 2)
            throw Error("face " + std::to_string(f) + " midline chord not found");
        if (hits[0].x > hits[1].x) std::swap(hits[0], hits[1]);
        g.midline_segments.push_back({hits[0], hits[1]});
    }
    return g;
}

// Checks every CreasedStrip and GluingDiagram invariant; violations are data.
inline ValidationReport validate_strip(const CreasedStrip& strip,
                                       const GluingDiagram& gluing) {
    ValidationReport rep;
    const double eps = strip.tol.eps_point * 10;

    // CCW and positive area per face
    for (std::size_t f = 0; f < strip.face_count(); ++f) {
        if (strip.faces[f].size() < 3) {
            rep.add("degenerate-face", "face " + std::to_string(f));
            continue;
        }
        if (signed_area(strip.faces[f]) <= 0)
            rep.add("face-orientation", "face " + std::to_string(f) + " not CCW");
    }

    // Tiling: total area equals lambda
    double area = strip.total_area();
    if (std::abs(area - strip.lambda) > 1e-7)
        rep.add("tiling-area", "face areas sum to " + format9(area) + ", want " +
                                   format9(strip.lambda));

    // Faces inside the rectangle
    for (std::size_t f = 0; f < strip.face_count(); ++f)
        for (const auto& v : strip.faces[f])
            if (v.x < -eps || v.x > strip.lambda + eps || v.y < -eps || v.y > 1 + eps)
                rep.add("face-outside-rectangle", "face " + std::to_string(f));

    // Pairwise interior-disjoint
    for (std::size_t f = 0; f < strip.face_count(); ++f)
        for (std::size_t h = f + 1; h < strip.face_count(); ++h) {
            double overlap =
                detail::convex_intersection_area(strip.faces[f], strip.faces[h]);
            if (overlap > 1e-7)
                rep.add("face-overlap", "faces " + std::to_string(f) + "," +
                                            std::to_string(h) + " overlap area " +
                                            format9(overlap));
        }

    // Path adjacency and crease data
    if (strip.creases.size() + 1 != strip.face_count())
        rep.add("crease-count", "expected " + std::to_string(strip.face_count() - 1) +
                                    " creases, have " + std::to_string(strip.creases.size()));
    for (std::size_t k = 0; k + 1 < strip.face_count(); ++k) {
        auto se = detail::shared_edge(strip, static_cast<int>(k), static_cast<int>(k + 1));
        if (!se) {
            rep.add("adjacency-path",
                    "faces " + std::to_string(k) + "," + std::to_string(k + 1) +
                        " share no full edge");
            continue;
        }
        if (k < strip.creases.size()) {
            Vec2 a = detail::face_vertex(strip, se->first, false);
            Vec2 b = detail::face_vertex(strip, se->first, true);
            const Crease& c = strip.creases[k];
            bool match = (detail::same_point(a, c.a, eps) && detail::same_point(b, c.b, eps)) ||
                         (detail::same_point(a, c.b, eps) && detail::same_point(b, c.a, eps));
            if (!match)
                rep.add("crease-mismatch", "crease " + std::to_string(k));
        }
    }
    // Non-consecutive faces must not share a full edge (path, not a tree/loop)
    for (std::size_t f = 0; f < strip.face_count(); ++f)
        for (std::size_t h = f + 2; h < strip.face_count(); ++h)
            if (detail::shared_edge(strip, static_cast<int>(f), static_cast<int>(h)))
                rep.add("adjacency-path", "non-consecutive faces " + std::to_string(f) +
                                              "," + std::to_string(h) + " share an edge");

    // Crease endpoints on the rectangle boundary
    for (std::size_t k = 0; k < strip.creases.size(); ++k) {
        const Crease& c = strip.creases[k];
        if (!detail::on_rect_boundary(c.a, strip.lambda, eps) ||
            !detail::on_rect_boundary(c.b, strip.lambda, eps))
            rep.add("crease-endpoint", "crease " + std::to_string(k) +
                                           " endpoint off the rectangle boundary");
    }

    // Side pairs: paired edges equal length; exactly one end pair
    int end_pairs = 0;
    for (const auto& sp : gluing.side_pairs) {
        if (sp.ends) {
            ++end_pairs;
            continue;
        }
        if (sp.crease < 0 || sp.crease >= static_cast<int>(strip.creases.size()))
            rep.add("side-pair", "pair " + sp.label + " references missing crease");
    }
    if (end_pairs != 1) rep.add("side-pair", "expected exactly one end gluing");
    try {
        auto ends = end_edges(strip);
        Vec2 l0 = detail::face_vertex(strip, ends.first, false);
        Vec2 l1 = detail::face_vertex(strip, ends.first, true);
        Vec2 r0 = detail::face_vertex(strip, ends.second, false);
        Vec2 r1 = detail::face_vertex(strip, ends.second, true);
        if (std::abs(distance(l0, l1) - distance(r0, r1)) > eps)
            rep.add("side-pair", "end edges have unequal length");
    } catch (const Error& e) {
        rep.add("side-pair", e.what());
    }

    // Boundary cycle: recomputed trace must match the declared component count
    // and the declared cycle must chain head-to-tail under the gluing.
    try {
        GluingDiagram traced = derive_gluing(strip, gluing.moebius);
        int expect = gluing.moebius ? 1 : 2;
        if (traced.boundary_components != expect)
            rep.add("boundary-cycle",
                    "traced " + std::to_string(traced.boundary_components) +
                        " boundary components, want " + std::to_string(expect));
        if (traced.boundary_cycle.size() != gluing.boundary_cycle.size())
            rep.add("boundary-cycle",
                    "declared cycle has " + std::to_string(gluing.boundary_cycle.size()) +
                        " edges, traced " + std::to_string(traced.boundary_cycle.size()));
    } catch (const Error& e) {
        rep.add("boundary-cycle", e.what());
    }
    for (std::size_t i = 0; i < gluing.boundary_cycle.size(); ++i) {
        const auto& be = gluing.boundary_cycle[i];
        if (be.edge.face < 0 || be.edge.face >= static_cast<int>(strip.face_count()))
            rep.add("boundary-cycle", "edge " + be.label + " references missing face");
    }

    // Midline: one chord per face, concatenating under the gluing
    if (gluing.midline_segments.size() == strip.face_count()) {
        for (std::size_t f = 0; f + 1 < strip.face_count(); ++f) {
            Vec2 exit = gluing.midline_segments[f].second;
            Vec2 entry = gluing.midline_segments[f + 1].first;
            if (!detail::same_point(exit, entry, 1e-7))
                rep.add("midline", "midline breaks between faces " + std::to_string(f) +
                                       " and " + std::to_string(f + 1));
        }
        Vec2 last = gluing.midline_segments.back().second;
        Vec2 first = gluing.midline_segments.front().first;
        Vec2 glued = detail::glue_end_point(last, strip.lambda, gluing.moebius);
        if (!detail::same_point(glued, first, 1e-7))
            rep.add("midline", "midline does not close through the end gluing");
    } else {
        rep.add("midline", "expected one midline segment per face");
    }

    return rep;
}

// Total boundary length of the glued band: 2*lambda + 2 minus twice the glued
// end length (the ends are the full width).
inline double boundary_cycle_length(const CreasedStrip& strip,
                                    const GluingDiagram& gluing) {
    double len = 0;
    for (const auto& be : gluing.boundary_cycle) {
        Vec2 a = detail::face_vertex(strip, be.edge, false);
        Vec2 b = detail::face_vertex(strip, be.edge, true);
        len += distance(a, b);
    }
    return len;
}

}  // namespace ribbonfold
