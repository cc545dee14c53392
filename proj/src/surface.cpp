#include "flatdyn/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "flatdyn/svg.hpp"

namespace flatdyn {

namespace {
constexpr double pi = std::numbers::pi;

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { for (int i = 0; i < n; ++i) p[i] = i; }
    int find(int x) { while (p[x] != x) x = p[x] = p[p[x]]; return x; }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

double interior_angle(const PlanarPolygon& poly, int j) {
    int m = poly.size();
    RVec2 u = poly.v[(j + m - 1) % m] - poly.v[j]; // toward previous vertex
    RVec2 w = poly.v[(j + 1) % m] - poly.v[j];     // toward next vertex
    double a = std::atan2(to_double(cross(w, u)), to_double(dot(w, u)));
    if (a <= 0) a += 2.0 * pi;
    return a;
}
} // namespace

double StraightArc::length() const {
    double L = 0;
    for (const auto& s : segments) L += norm(s.b - s.a);
    return L;
}

TranslationSurface TranslationSurface::build(std::vector<PlanarPolygon> polys,
                                             std::vector<std::pair<EdgeRef, EdgeRef>> gluings) {
    TranslationSurface s;
    if (polys.empty()) fail(Errc::Disconnected, "no polygons");
    for (size_t p = 0; p < polys.size(); ++p) {
        const auto& poly = polys[p];
        if (poly.size() < 3) fail(Errc::NonTranslationGluing, "polygon with fewer than 3 vertices");
        for (int e = 0; e < poly.size(); ++e)
            if (poly.edge_vec(e) == RVec2())
                fail(Errc::NonTranslationGluing, "zero-length edge in polygon " + std::to_string(p));
        if (!(polygon_area2(poly.v) > 0))
            fail(Errc::NonTranslationGluing, "polygon " + std::to_string(p) + " not positively oriented");
        if (!polygon_is_simple(poly.v))
            fail(Errc::NonTranslationGluing, "polygon " + std::to_string(p) + " not simple");
    }

    s.polys_ = std::move(polys);
    s.partner_.assign(s.polys_.size(), {});
    for (size_t p = 0; p < s.polys_.size(); ++p) s.partner_[p].assign(s.polys_[p].size(), EdgeRef{});

    auto valid_ref = [&](const EdgeRef& e) {
        return e.poly >= 0 && e.poly < static_cast<int>(s.polys_.size()) && e.edge >= 0 &&
               e.edge < s.polys_[e.poly].size();
    };
    std::set<EdgeRef> seen;
    for (auto& [a, b] : gluings) {
        if (!valid_ref(a) || !valid_ref(b)) fail(Errc::UnmatchedEdge, "gluing references a missing edge");
        if (a == b) fail(Errc::NonTranslationGluing, "edge glued to itself");
        if (seen.count(a) || seen.count(b)) fail(Errc::UnmatchedEdge, "edge glued twice");
        seen.insert(a);
        seen.insert(b);
        RVec2 va = s.polys_[a.poly].edge_vec(a.edge);
        RVec2 vb = s.polys_[b.poly].edge_vec(b.edge);
        if (!(va + vb == RVec2()))
            fail(Errc::NonTranslationGluing, "partner edges not equal and opposite");
        s.partner_[a.poly][a.edge] = b;
        s.partner_[b.poly][b.edge] = a;
    }
    int total_edges = 0;
    for (auto& poly : s.polys_) total_edges += poly.size();
    if (static_cast<int>(seen.size()) != total_edges) fail(Errc::UnmatchedEdge, "unglued edge present");

    UnionFind uf(static_cast<int>(s.polys_.size()));
    for (auto& [a, b] : gluings) uf.unite(a.poly, b.poly);
    for (size_t p = 1; p < s.polys_.size(); ++p)
        if (uf.find(static_cast<int>(p)) != uf.find(0)) fail(Errc::Disconnected, "surface is not connected");

    // vertex classes by corner walking: across the incoming edge of a corner
    // lies the corner at the start vertex of the partner edge
    s.vclass_.assign(s.polys_.size(), {});
    for (size_t p = 0; p < s.polys_.size(); ++p) s.vclass_[p].assign(s.polys_[p].size(), -1);
    int n_class = 0;
    for (size_t p = 0; p < s.polys_.size(); ++p) {
        for (int j = 0; j < s.polys_[p].size(); ++j) {
            if (s.vclass_[p][j] >= 0) continue;
            int cls = n_class++;
            int cp = static_cast<int>(p), cj = j;
            do {
                s.vclass_[cp][cj] = cls;
                int m = s.polys_[cp].size();
                EdgeRef incoming{cp, (cj + m - 1) % m};
                EdgeRef partner = s.partner_[incoming.poly][incoming.edge];
                cp = partner.poly;
                cj = partner.edge;
            } while (!(cp == static_cast<int>(p) && cj == j));
        }
    }

    s.class_angle_.assign(n_class, 0.0);
    std::vector<std::vector<std::pair<int, int>>> members(n_class);
    for (size_t p = 0; p < s.polys_.size(); ++p) {
        for (int j = 0; j < s.polys_[p].size(); ++j) {
            int cls = s.vclass_[p][j];
            s.class_angle_[cls] += interior_angle(s.polys_[p], j);
            members[cls].push_back({static_cast<int>(p), j});
        }
    }
    for (int c = 0; c < n_class; ++c) {
        double ang = s.class_angle_[c];
        if (std::fabs(ang - 2.0 * pi) > 1e-9) {
            ConePoint cp;
            cp.vertex_class = c;
            cp.angle = ang;
            double q = ang / pi;
            cp.separatrix_count = (std::fabs(q - std::round(q)) < 1e-9) ? static_cast<int>(std::round(q)) : 0;
            cp.corners = members[c];
            s.cones_.push_back(cp);
        }
    }

    int V = n_class, E = total_edges / 2, F = static_cast<int>(s.polys_.size());
    s.chi_ = V - E + F;
    if ((2 - s.chi_) % 2 != 0 || s.chi_ > 2)
        fail(Errc::Internal, "inconsistent Euler characteristic");
    s.genus_ = (2 - s.chi_) / 2;

    s.area_ = 0;
    for (auto& poly : s.polys_) s.area_ += polygon_area2(poly.v) / 2;
    return s;
}

bool TranslationSurface::is_cone_class(int cls) const {
    for (const auto& c : cones_)
        if (c.vertex_class == cls) return true;
    return false;
}

int TranslationSurface::locate(const RVec2& xy) const {
    for (size_t p = 0; p < polys_.size(); ++p)
        if (locate_in_polygon(xy, polys_[p].v) != PolyLoc::Outside) return static_cast<int>(p);
    return -1;
}

RVec2 TranslationSurface::transport(EdgeRef e, const RVec2& xy) const {
    EdgeRef pe = partner_[e.poly][e.edge];
    const auto& src = polys_[e.poly];
    const auto& dst = polys_[pe.poly];
    // end of e maps to start of the partner edge
    RVec2 t = dst.v[pe.edge] - src.v[(e.edge + 1) % src.size()];
    return xy + t;
}

SurfacePoint TranslationSurface::normalize_point(int poly, const RVec2& xy) const {
    if (poly < 0 || poly >= static_cast<int>(polys_.size()))
        fail(Errc::OutsidePolygon, "invalid polygon id");
    const auto& pv = polys_[poly].v;
    PolyLoc loc = locate_in_polygon(xy, pv);
    if (loc == PolyLoc::Outside) fail(Errc::OutsidePolygon, "point outside polygon");
    if (loc == PolyLoc::Inside) return {poly, xy};

    int m = static_cast<int>(pv.size());
    // vertex?
    for (int j = 0; j < m; ++j) {
        if (pv[j] == xy) {
            int cls = vclass_[poly][j];
            int bp = poly, bj = j;
            for (size_t p = 0; p < polys_.size(); ++p)
                for (int t = 0; t < polys_[p].size(); ++t)
                    if (vclass_[p][t] == cls && (static_cast<int>(p) < bp || (static_cast<int>(p) == bp && t < bj))) {
                        bp = static_cast<int>(p);
                        bj = t;
                    }
            return {bp, polys_[bp].v[bj]};
        }
    }
    // edge interior: pick the lower (poly, edge) side
    for (int e = 0; e < m; ++e) {
        if (point_on_segment(xy, pv[e], pv[(e + 1) % m])) {
            EdgeRef here{poly, e};
            EdgeRef there = partner_[poly][e];
            if (here < there) return {poly, xy};
            return {there.poly, transport(here, xy)};
        }
    }
    fail(Errc::Internal, "normalize_point: boundary point not on any edge");
}

StraightArc trace_arc(const TranslationSurface& s, const SurfacePoint& start, const RVec2& dir,
                      const Rat& t_max) {
    if (dir == RVec2()) fail(Errc::NonPositive, "direction must be nonzero");
    if (t_max <= 0) fail(Errc::NonPositive, "trace parameter must be positive");

    StraightArc arc;
    int poly = start.poly;
    RVec2 x = start.xy;
    Rat remaining = t_max;
    double done_len = 0.0;
    const double dn = norm(dir);

    for (int guard = 0; guard < 1000000; ++guard) {
        const auto& pv = s.polygons()[poly].v;
        int m = static_cast<int>(pv.size());

        // earliest exit through the boundary
        bool found = false;
        Rat best_t;
        int best_edge = -1;
        Rat best_s;
        for (int e = 0; e < m; ++e) {
            RVec2 ev = s.polygons()[poly].edge_vec(e);
            Rat den = cross(dir, ev);
            if (den == 0) continue;
            RVec2 w = pv[e] - x;
            Rat t = cross(w, ev) / den;
            Rat u = cross(w, dir) / den;
            if (t > 0 && u >= 0 && u <= 1) {
                if (!found || t < best_t) {
                    found = true;
                    best_t = t;
                    best_edge = e;
                    best_s = u;
                }
            }
        }
        if (!found) fail(Errc::Internal, "trace_arc: ray found no exit (degenerate direction along an edge?)");

        Rat step = best_t < remaining ? best_t : remaining;
        RVec2 y = x + dir * step;

        // cone-point proximity along [x,y] (exact vertex hits handled below)
        for (int j = 0; j < m; ++j) {
            if (!s.is_cone_class(s.vertex_class(poly, j))) continue;
            RVec2 cv = pv[j];
            // distance from cv to segment [x,y] in doubles
            double px = to_double(x.x), py = to_double(x.y);
            double qx = to_double(y.x), qy = to_double(y.y);
            double cx = to_double(cv.x), cy = to_double(cv.y);
            double vx = qx - px, vy = qy - py;
            double L2 = vx * vx + vy * vy;
            double tt = L2 > 0 ? ((cx - px) * vx + (cy - py) * vy) / L2 : 0.0;
            tt = std::clamp(tt, 0.0, 1.0);
            double dx = px + tt * vx - cx, dy = py + tt * vy - cy;
            double dist = std::hypot(dx, dy);
            if (dist < 1e-12 && !(cv == x)) {
                double at = done_len + tt * to_double(step) * dn;
                fail(Errc::HitConePoint, "trajectory hits a cone point", at);
            }
        }

        arc.segments.push_back({poly, x, y});
        done_len += to_double(step) * dn;
        remaining -= step;
        if (remaining == 0) return arc;

        // crossed the boundary: vertex or edge interior?
        if (best_s == 0 || best_s == 1) {
            int vj = best_s == 0 ? best_edge : (best_edge + 1) % m;
            int cls = s.vertex_class(poly, vj);
            if (s.is_cone_class(cls)) fail(Errc::HitConePoint, "trajectory hits a cone point", done_len);
            // regular vertex: continue in the corner whose wedge contains dir
            bool moved = false;
            for (size_t p2 = 0; p2 < s.polygons().size() && !moved; ++p2) {
                const auto& poly2 = s.polygons()[p2];
                for (int j2 = 0; j2 < poly2.size() && !moved; ++j2) {
                    if (s.vertex_class(static_cast<int>(p2), j2) != cls) continue;
                    int m2 = poly2.size();
                    RVec2 w1 = poly2.v[(j2 + 1) % m2] - poly2.v[j2];      // outgoing edge
                    RVec2 w2 = poly2.v[(j2 + m2 - 1) % m2] - poly2.v[j2]; // incoming edge reversed
                    Rat s1 = cross(w1, dir), s2 = cross(dir, w2), sw = cross(w1, w2);
                    bool inside;
                    if (sw > 0) inside = s1 > 0 && s2 > 0;
                    else if (sw < 0) inside = s1 > 0 || s2 > 0;
                    else inside = dot(w1, w2) < 0 ? s1 > 0 : false;
                    if (inside) {
                        poly = static_cast<int>(p2);
                        x = poly2.v[j2];
                        moved = true;
                    }
                }
            }
            if (!moved) fail(Errc::Internal, "trace_arc: direction along an edge at a vertex");
        } else {
            EdgeRef here{poly, best_edge};
            EdgeRef there = s.partner(here);
            x = s.transport(here, y);
            poly = there.poly;
        }
    }
    fail(Errc::Internal, "trace_arc: iteration guard exceeded");
}

StraightArc trace_arc_length(const TranslationSurface& s, const SurfacePoint& start, const RVec2& dir,
                             double length) {
    if (length <= 0) fail(Errc::NonPositive, "length must be positive");
    double t = length / norm(dir);
    // dyadic rational parameter; geometry stays exact from here on
    const long den = 1L << 40;
    Rat tq(static_cast<long>(std::llround(t * static_cast<double>(den))), den);
    if (tq <= 0) tq = Rat(1, den);
    return trace_arc(s, start, dir, tq);
}

SurfacePoint arc_endpoint(const TranslationSurface& s, const StraightArc& a) {
    if (a.segments.empty()) fail(Errc::Internal, "empty arc");
    const auto& last = a.segments.back();
    return s.normalize_point(last.poly, last.b);
}

Golden transversal_measure_exact(const TranslationSurface& s, const DirectionalFoliation& f,
                                 const StraightArc& a) {
    (void)s;
    Golden total(0);
    for (const auto& seg : a.segments) {
        RVec2 d = seg.b - seg.a;
        if (d == RVec2()) continue;
        Golden v = f.covector.x * Golden(d.x) + f.covector.y * Golden(d.y);
        if (v.is_zero()) fail(Errc::ArcTangentToLeaves, "arc segment lies along a leaf");
        total += abs(v);
    }
    return total;
}

double transversal_measure(const TranslationSurface& s, const DirectionalFoliation& f,
                           const StraightArc& a) {
    return to_double(transversal_measure_exact(s, f, a));
}

std::string render_foliation(const TranslationSurface& s, const DirectionalFoliation& f, int density) {
    if (density <= 0) fail(Errc::NonPositive, "density must be positive");
    const double scale = 260.0, margin = 20.0;

    double min_x = 1e9, min_y = 1e9, max_x = -1e9, max_y = -1e9;
    for (const auto& poly : s.polygons())
        for (const auto& v : poly.v) {
            min_x = std::min(min_x, to_double(v.x));
            max_x = std::max(max_x, to_double(v.x));
            min_y = std::min(min_y, to_double(v.y));
            max_y = std::max(max_y, to_double(v.y));
        }
    // lay polygons out in a row, one cell per polygon, flipping y for svg
    int n = static_cast<int>(s.polygons().size());
    double cell_w = (max_x - min_x) * scale + margin;
    SvgDoc doc(margin + n * cell_w, (max_y - min_y) * scale + 2 * margin);

    double ex = to_double(f.covector.x), ey = to_double(f.covector.y);
    double en = std::hypot(ex, ey);

    for (int p = 0; p < n; ++p) {
        const auto& poly = s.polygons()[p].v;
        double ox = margin + p * cell_w;
        auto map_pt = [&](const RVec2& v) {
            return std::pair<double, double>{ox + (to_double(v.x) - min_x) * scale,
                                             margin + (max_y - to_double(v.y)) * scale};
        };
        std::vector<std::pair<double, double>> outline;
        for (const auto& v : poly) outline.push_back(map_pt(v));
        doc.polygon(outline, "none", "#333", 1.2);

        // leaves eta.x = c clipped to the polygon
        double c_lo = 1e18, c_hi = -1e18;
        for (const auto& v : poly) {
            double c = ex * to_double(v.x) + ey * to_double(v.y);
            c_lo = std::min(c_lo, c);
            c_hi = std::max(c_hi, c);
        }
        double dc = en / density;
        for (double c = c_lo + dc / 2; c < c_hi; c += dc) {
            std::vector<std::pair<double, double>> hits;
            int m = static_cast<int>(poly.size());
            for (int e = 0; e < m; ++e) {
                double ax = to_double(poly[e].x), ay = to_double(poly[e].y);
                double bx = to_double(poly[(e + 1) % m].x), by = to_double(poly[(e + 1) % m].y);
                double ca = ex * ax + ey * ay, cb = ex * bx + ey * by;
                if ((ca < c) == (cb < c)) continue;
                double t = (c - ca) / (cb - ca);
                RVec2 dummy;
                (void)dummy;
                hits.push_back({ox + (ax + t * (bx - ax) - min_x) * scale,
                                margin + (max_y - (ay + t * (by - ay))) * scale});
            }
            for (size_t i = 0; i + 1 < hits.size(); i += 2)
                doc.line(hits[i].first, hits[i].second, hits[i + 1].first, hits[i + 1].second, "#4a76b8", 0.6);
        }

        for (int j = 0; j < static_cast<int>(poly.size()); ++j)
            if (s.is_cone_class(s.vertex_class(p, j))) {
                auto [cx, cy] = map_pt(poly[j]);
                doc.circle(cx, cy, 3.5, "#c23");
            }
    }
    return doc.str();
}

} // namespace flatdyn
