#pragma once

#include <optional>
#include <vector>

#include "flatdyn/golden.hpp"
#include "flatdyn/numeric.hpp"

namespace flatdyn {

// Exact planar predicates over Q or Q(phi). Scalar S must provide +,-,*,
// comparisons and an exact sign via ordering.

template <class V>
auto orient(const V& p, const V& q, const V& r) {
    return cross(q - p, r - p);
}

template <class V>
bool point_on_segment(const V& p, const V& a, const V& b) {
    auto o = orient(a, b, p);
    if (!(o == decltype(o)(0))) return false;
    auto lo_x = a.x < b.x ? a.x : b.x;
    auto hi_x = a.x < b.x ? b.x : a.x;
    auto lo_y = a.y < b.y ? a.y : b.y;
    auto hi_y = a.y < b.y ? b.y : a.y;
    return lo_x <= p.x && p.x <= hi_x && lo_y <= p.y && p.y <= hi_y;
}

struct CrossResult {
    int crossings = 0;   // proper transversal crossings
    bool degenerate = false; // endpoint touch / collinear overlap encountered
};

// Proper crossing of open segments [a,b] and [c,d]; degenerate when any
// endpoint is collinear with the other segment and inside its bounding box.
template <class V>
CrossResult segment_cross(const V& a, const V& b, const V& c, const V& d) {
    auto o1 = orient(a, b, c), o2 = orient(a, b, d);
    auto o3 = orient(c, d, a), o4 = orient(c, d, b);
    using S = decltype(o1);
    const S zero(0);
    if (o1 == zero || o2 == zero || o3 == zero || o4 == zero) {
        if ((o1 == zero && point_on_segment(c, a, b)) || (o2 == zero && point_on_segment(d, a, b)) ||
            (o3 == zero && point_on_segment(a, c, d)) || (o4 == zero && point_on_segment(b, c, d)))
            return {0, true};
        return {0, false};
    }
    if (((o1 > zero) != (o2 > zero)) && ((o3 > zero) != (o4 > zero))) return {1, false};
    return {0, false};
}

enum class PolyLoc { Inside, Boundary, Outside };

// Exact even-odd point-in-polygon test (simple polygons).
template <class V>
PolyLoc locate_in_polygon(const V& p, const std::vector<V>& poly) {
    using S = std::decay_t<decltype(p.x)>;
    const S zero(0);
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        if (point_on_segment(p, poly[i], poly[(i + 1) % n])) return PolyLoc::Boundary;
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const V& a = poly[i];
        const V& b = poly[(i + 1) % n];
        bool a_above = a.y > p.y, b_above = b.y > p.y;
        if (a_above == b_above) continue;
        // x-coordinate of edge at height p.y, compared exactly:
        // p.x < a.x + (p.y-a.y)*(b.x-a.x)/(b.y-a.y)
        S lhs = (p.x - a.x) * (b.y - a.y);
        S rhs = (p.y - a.y) * (b.x - a.x);
        bool cr = (b.y > a.y) ? (lhs < rhs) : (lhs > rhs);
        if (cr) inside = !inside;
    }
    return inside ? PolyLoc::Inside : PolyLoc::Outside;
}

// Twice the signed area (shoelace).
template <class V>
auto polygon_area2(const std::vector<V>& poly) {
    using S = std::decay_t<decltype(poly[0].x)>;
    S acc(0);
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) acc += cross(poly[i], poly[(i + 1) % n]);
    return acc;
}

template <class V>
bool polygon_is_simple(const std::vector<V>& poly) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            auto r = segment_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]);
            if (r.crossings > 0) return false;
            if (!adjacent && r.degenerate) {
                // touching non-adjacent edges: allow shared endpoints only if
                // they are a common vertex (not the case for distinct corners)
                return false;
            }
        }
    }
    return true;
}

template <class V>
V polygon_centroid_vertex_mean(const std::vector<V>& poly) {
    V acc = poly[0];
    for (size_t i = 1; i < poly.size(); ++i) acc = acc + poly[i];
    using S = decltype(acc.x);
    // divide by n: multiply by 1/n exactly when S supports it via Rat
    S inv = S(Rat(1, static_cast<long>(poly.size())));
    return {acc.x * inv, acc.y * inv};
}

// Crossing parity of the path a -> b against a wall system whose endpoint
// nodes all have even degree (so the parity is invariant under path homotopy,
// including sweeps across wall endpoints). Falls back to a two-segment detour
// when the straight path is degenerate, and to a common tiny shift when an
// endpoint itself sits on a wall.
template <class V>
int robust_parity(const V& a, const V& b, const std::vector<std::pair<RVec2, RVec2>>& walls);

// Count crossings of the open segment [a,b] with every Z^2-translate of each
// wall segment. Exact; flags degeneracies instead of guessing.
template <class V>
CrossResult wall_crossings(const V& a, const V& b, const std::vector<std::pair<RVec2, RVec2>>& walls) {
    using S = std::decay_t<decltype(a.x)>;
    CrossResult out;
    double ax = to_double(a.x), bx = to_double(b.x), ay = to_double(a.y), by = to_double(b.y);
    for (const auto& [ws, we] : walls) {
        double wx_lo = std::min(to_double(ws.x), to_double(we.x));
        double wx_hi = std::max(to_double(ws.x), to_double(we.x));
        double wy_lo = std::min(to_double(ws.y), to_double(we.y));
        double wy_hi = std::max(to_double(ws.y), to_double(we.y));
        long mlo = static_cast<long>(std::floor(std::min(ax, bx) - wx_hi)) - 1;
        long mhi = static_cast<long>(std::ceil(std::max(ax, bx) - wx_lo)) + 1;
        long nlo = static_cast<long>(std::floor(std::min(ay, by) - wy_hi)) - 1;
        long nhi = static_cast<long>(std::ceil(std::max(ay, by) - wy_lo)) + 1;
        for (long m = mlo; m <= mhi; ++m) {
            for (long n = nlo; n <= nhi; ++n) {
                V s{S(ws.x + m), S(ws.y + n)};
                V e{S(we.x + m), S(we.y + n)};
                auto r = segment_cross(a, b, s, e);
                out.crossings += r.crossings;
                out.degenerate |= r.degenerate;
            }
        }
    }
    return out;
}

template <class V>
int robust_parity(const V& a, const V& b, const std::vector<std::pair<RVec2, RVec2>>& walls) {
    using S = std::decay_t<decltype(a.x)>;
    auto r = wall_crossings(a, b, walls);
    if (!r.degenerate) return r.crossings & 1;
    // detour through a perturbed midpoint
    for (int k = 1; k <= 10; ++k) {
        S hx = (a.x + b.x) * S(Rat(1, 2)) + S(Rat(k, 1L << 38));
        S hy = (a.y + b.y) * S(Rat(1, 2)) + S(Rat(3 * k + 1, 1L << 39));
        V mid{hx, hy};
        auto r1 = wall_crossings(a, mid, walls);
        auto r2 = wall_crossings(mid, b, walls);
        if (!r1.degenerate && !r2.degenerate) return (r1.crossings + r2.crossings) & 1;
    }
    // an endpoint sits on a wall: shift the whole path off it
    for (int k = 1; k <= 10; ++k) {
        V sa{a.x + S(Rat(k, 1L << 44)), a.y + S(Rat(5 * k, 1L << 45))};
        V sb{b.x + S(Rat(k, 1L << 44)), b.y + S(Rat(5 * k, 1L << 45))};
        auto rs = wall_crossings(sa, sb, walls);
        if (!rs.degenerate) return rs.crossings & 1;
        for (int j = 1; j <= 4; ++j) {
            S hx = (sa.x + sb.x) * S(Rat(1, 2)) + S(Rat(j, 1L << 38));
            S hy = (sa.y + sb.y) * S(Rat(1, 2)) + S(Rat(j + 2, 1L << 39));
            V mid{hx, hy};
            auto r1 = wall_crossings(sa, mid, walls);
            auto r2 = wall_crossings(mid, sb, walls);
            if (!r1.degenerate && !r2.degenerate) return (r1.crossings + r2.crossings) & 1;
        }
    }
    fail(Errc::Internal, "robust_parity: persistent degeneracy");
}

} // namespace flatdyn
