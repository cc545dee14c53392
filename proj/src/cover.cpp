#include "flatdyn/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace flatdyn {

LinearTorusMap make_linear_torus_map(IMat2 m) {
    long d = m.det();
    if (d != 1 && d != -1) fail(Errc::Unsupported, "torus map must have determinant +-1");
    return {m};
}

LinearTorusMap cat_map() { return {{2, 1, 1, 1}}; }

double perron_eigenvalue(const IMat2& m) {
    if (std::llabs(m.trace()) <= 2) fail(Errc::NotHyperbolic, "matrix trace in [-2,2]");
    double t = static_cast<double>(std::llabs(m.trace()));
    double disc = t * t - 4.0 * static_cast<double>(m.det());
    return (t + std::sqrt(disc)) / 2.0;
}

std::vector<RVec2> periodic_points_torus(const LinearTorusMap& m, int period) {
    if (period < 1) fail(Errc::NonPositive, "period must be >= 1");
    IMat2 p = imat_pow(m.m, period);
    IMat2 b{p.a - 1, p.b, p.c, p.d - 1};
    long D = b.det();
    if (D == 0) fail(Errc::NonHyperbolicPeriod, "det(M^n - I) = 0");
    long aD = std::labs(D);
    std::vector<RVec2> out;
    for (long i = 0; i < aD; ++i) {
        for (long j = 0; j < aD; ++j) {
            // B (i/|D|, j/|D|) integral <=> |D| divides both components
            long u = b.a * i + b.b * j;
            long v = b.c * i + b.d * j;
            if (u % aD == 0 && v % aD == 0) out.push_back({Rat(i, aD), Rat(j, aD)});
        }
    }
    if (static_cast<long>(out.size()) != aD)
        fail(Errc::Internal, "periodic point count does not match |det(M^n - I)|");
    return out;
}

// ---------------------------------------------------------------------------
// Cover construction

SlitCover build_cover_struct(std::vector<PlanarPolygon> torus_polys,
                             std::vector<std::pair<EdgeRef, EdgeRef>> torus_gluings,
                             std::vector<std::pair<RVec2, RVec2>> walls, std::array<RVec2, 2> branch,
                             RVec2 marked) {
    int n = static_cast<int>(torus_polys.size());

    auto is_wall_edge = [&](const PlanarPolygon& poly, int e) {
        RVec2 a = poly.v[e], b = poly.v[(e + 1) % poly.size()];
        for (auto& [ws, we] : walls) {
            if ((a == ws && b == we) || (a == we && b == ws)) return true;
            // sub-segment of a wall
            if (point_on_segment(a, ws, we) && point_on_segment(b, ws, we)) return true;
        }
        return false;
    };

    std::vector<PlanarPolygon> cover_polys;
    for (int s = 0; s < 2; ++s)
        for (auto& p : torus_polys) cover_polys.push_back(p);

    std::vector<std::pair<EdgeRef, EdgeRef>> cover_gluings;
    for (auto& [a, b] : torus_gluings) {
        bool wall = is_wall_edge(torus_polys[a.poly], a.edge);
        for (int s = 0; s < 2; ++s) {
            int s2 = wall ? 1 - s : s;
            cover_gluings.push_back({EdgeRef{a.poly + s * n, a.edge}, EdgeRef{b.poly + s2 * n, b.edge}});
        }
    }
    // cross-sheet pairs were added twice (once per sheet); dedupe
    std::set<std::pair<EdgeRef, EdgeRef>> dedup;
    std::vector<std::pair<EdgeRef, EdgeRef>> final_gluings;
    for (auto& g : cover_gluings) {
        auto key = g.first < g.second ? std::make_pair(g.first, g.second) : std::make_pair(g.second, g.first);
        if (dedup.insert(key).second) final_gluings.push_back(g);
    }

    SlitCover c;
    c.surf_ = std::make_shared<TranslationSurface>(TranslationSurface::build(cover_polys, final_gluings));
    c.walls_ = std::move(walls);
    c.branch_ = branch;
    c.marked_ = marked;
    c.n_torus_polys_ = n;
    return c;
}

std::shared_ptr<const SlitCover> SlitCover::standard() {
    auto r = [](long n, long d) { return Rat(n, d); };
    PlanarPolygon bot{{{r(0, 1), r(0, 1)}, {r(1, 1), r(0, 1)}, {r(1, 1), r(1, 4)}, {r(1, 1), r(3, 4)}, {r(4, 5), r(3, 5)}}};
    PlanarPolygon mid{{{r(0, 1), r(0, 1)}, {r(4, 5), r(3, 5)}, {r(1, 1), r(3, 4)}, {r(1, 1), r(1, 1)}, {r(1, 5), r(2, 5)}, {r(0, 1), r(1, 4)}}};
    PlanarPolygon top{{{r(0, 1), r(1, 4)}, {r(1, 5), r(2, 5)}, {r(1, 1), r(1, 1)}, {r(0, 1), r(1, 1)}, {r(0, 1), r(3, 4)}}};

    std::vector<std::pair<EdgeRef, EdgeRef>> glue = {
        {{0, 0}, {2, 2}}, // bottom <-> top of the square
        {{0, 1}, {1, 5}}, // right low <-> left low
        {{0, 2}, {2, 4}}, // right mid <-> left mid
        {{1, 2}, {2, 3}}, // right high <-> left high
        {{0, 3}, {1, 1}}, // chord piece beyond b2 (not slit)
        {{0, 4}, {1, 0}}, // slit piece corner->b2
        {{1, 3}, {2, 1}}, // slit piece b1->corner
        {{1, 4}, {2, 0}}, // chord piece below b1 (not slit)
    };
    std::vector<std::pair<RVec2, RVec2>> walls = {
        {{r(0, 1), r(0, 1)}, {r(4, 5), r(3, 5)}},
        {{r(1, 5), r(2, 5)}, {r(1, 1), r(1, 1)}},
    };
    auto cover = build_cover_struct({bot, mid, top}, glue, walls, {RVec2{r(1, 5), r(2, 5)}, RVec2{r(4, 5), r(3, 5)}},
                                    {r(1, 2), r(1, 10)});
    return std::make_shared<const SlitCover>(std::move(cover));
}

namespace {

// side index of a non-corner boundary point: 0 bottom, 1 right, 2 top, 3 left
int boundary_side(const RVec2& p) {
    if (p.y == 0) return 0;
    if (p.x == 1) return 1;
    if (p.y == 1) return 2;
    if (p.x == 0) return 3;
    return -1;
}

RVec2 mirror_across(const RVec2& p) {
    switch (boundary_side(p)) {
        case 0: return {p.x, Rat(1)};
        case 2: return {p.x, Rat(0)};
        case 1: return {Rat(0), p.y};
        case 3: return {Rat(1), p.y};
    }
    fail(Errc::Internal, "mirror of a non-boundary point");
}

// parameter of p along the CCW boundary walk, in [0,4)
Rat boundary_param(const RVec2& p) {
    switch (boundary_side(p)) {
        case 0: return p.x;
        case 1: return Rat(1) + p.y;
        case 2: return Rat(3) - p.x;
        case 3: return Rat(4) - p.y;
    }
    fail(Errc::Internal, "boundary_param of interior point");
}

struct RVecLess {
    bool operator()(const RVec2& a, const RVec2& b) const {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

} // namespace

std::shared_ptr<const SlitCover> SlitCover::short_slit(const RVec2& b1, const RVec2& b2) {
    if (b1 == b2) fail(Errc::Unsupported, "branch points must be distinct");
    RVec2 d = b2 - b1;

    // extend the chord through the slit to the square boundary
    auto extend = [&](const RVec2& from, const RVec2& dir) -> RVec2 {
        // smallest t > 0 with from + t*dir on the boundary; t = 0 if already there
        if (boundary_side(from) >= 0) return from;
        Rat best = -1;
        auto consider = [&](const Rat& t) {
            if (t > 0 && (best < 0 || t < best)) best = t;
        };
        if (dir.x != 0) {
            consider((Rat(0) - from.x) / dir.x);
            consider((Rat(1) - from.x) / dir.x);
        }
        if (dir.y != 0) {
            consider((Rat(0) - from.y) / dir.y);
            consider((Rat(1) - from.y) / dir.y);
        }
        if (best < 0) fail(Errc::Internal, "chord extension failed");
        return from + dir * best;
    };
    RVec2 e1 = extend(b1, RVec2{-d.x, -d.y});
    RVec2 e2 = extend(b2, d);
    for (const RVec2& e : {e1, e2})
        if ((e.x == 0 || e.x == 1) && (e.y == 0 || e.y == 1))
            fail(Errc::Unsupported, "chord through a corner not supported by this builder");

    // boundary vertex set: corners, chord ends, and their opposite-side mirrors
    std::set<RVec2, RVecLess> bset;
    bset.insert({Rat(0), Rat(0)});
    bset.insert({Rat(1), Rat(0)});
    bset.insert({Rat(1), Rat(1)});
    bset.insert({Rat(0), Rat(1)});
    for (const RVec2& e : {e1, e2}) {
        bset.insert(e);
        bset.insert(mirror_across(e));
    }
    std::vector<RVec2> bpts(bset.begin(), bset.end());
    std::sort(bpts.begin(), bpts.end(),
              [](const RVec2& a, const RVec2& b) { return boundary_param(a) < boundary_param(b); });

    // chord vertex sequence e1 -> b1 -> b2 -> e2 (dropping coincident ends)
    std::vector<RVec2> chord{e1};
    if (!(b1 == e1)) chord.push_back(b1);
    chord.push_back(b2);
    if (!(b2 == e2)) chord.push_back(e2);

    auto walk = [&](const RVec2& from, const RVec2& to) {
        // CCW boundary arc from -> to, inclusive of both
        std::vector<RVec2> out{from};
        size_t i = 0;
        while (!(bpts[i] == from)) ++i;
        while (true) {
            i = (i + 1) % bpts.size();
            out.push_back(bpts[i]);
            if (bpts[i] == to) break;
        }
        return out;
    };

    // polygon 1: boundary arc e1 -> e2, then chord reversed e2 -> e1
    std::vector<RVec2> p1 = walk(e1, e2);
    for (int i = static_cast<int>(chord.size()) - 2; i >= 1; --i) p1.push_back(chord[i]);
    // polygon 2: boundary arc e2 -> e1, then chord e1 -> e2
    std::vector<RVec2> p2 = walk(e2, e1);
    for (size_t i = 1; i + 1 < chord.size(); ++i) p2.push_back(chord[i]);

    std::vector<PlanarPolygon> polys{{p1}, {p2}};

    // gluing lookup: directed edge (a->b) pairs with (b+s -> a+s)
    std::map<std::pair<std::pair<std::string, std::string>, std::pair<std::string, std::string>>, EdgeRef> emap;
    auto key = [](const RVec2& a, const RVec2& b) {
        return std::make_pair(std::make_pair(rat_str(a.x), rat_str(a.y)),
                              std::make_pair(rat_str(b.x), rat_str(b.y)));
    };
    for (int p = 0; p < 2; ++p)
        for (int e = 0; e < polys[p].size(); ++e)
            emap[key(polys[p].v[e], polys[p].v[(e + 1) % polys[p].size()])] = {p, e};

    std::vector<std::pair<EdgeRef, EdgeRef>> glue;
    std::set<std::pair<EdgeRef, EdgeRef>> added;
    const RVec2 shifts[5] = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
    for (int p = 0; p < 2; ++p) {
        for (int e = 0; e < polys[p].size(); ++e) {
            RVec2 a = polys[p].v[e], b = polys[p].v[(e + 1) % polys[p].size()];
            EdgeRef partner{-1, -1};
            int found = 0;
            for (const auto& s : shifts) {
                auto it = emap.find(key(b + s, a + s));
                if (it != emap.end() && !(it->second == EdgeRef{p, e})) {
                    partner = it->second;
                    ++found;
                }
            }
            if (found != 1) fail(Errc::Internal, "slit-cover builder: ambiguous edge matching");
            EdgeRef here{p, e};
            auto pr = here < partner ? std::make_pair(here, partner) : std::make_pair(partner, here);
            if (added.insert(pr).second) glue.push_back(pr);
        }
    }

    std::vector<std::pair<RVec2, RVec2>> walls = {{b1, b2}};

    // marked point: interior of polygon 2, off the chord
    RVec2 marked = polygon_centroid_vertex_mean(polys[1].v);
    return std::make_shared<const SlitCover>(
        build_cover_struct(polys, glue, walls, {b1, b2}, marked));
}

int SlitCover::locate_torus(const RVec2& xy) const {
    for (int p = 0; p < n_torus_polys_; ++p)
        if (locate_in_polygon(xy, surf_->polygons()[p].v) != PolyLoc::Outside) return p;
    return -1;
}

SurfacePoint SlitCover::make_point(int torus_poly, int sheet, const RVec2& xy) const {
    return surf_->normalize_point(cover_poly(torus_poly, sheet), xy);
}

bool SlitCover::is_branch(const RVec2& torus_xy) const {
    return torus_xy == branch_[0] || torus_xy == branch_[1];
}

SurfacePoint SlitCover::canonical_branch_point(int which) const {
    const RVec2& b = branch_[which];
    int tp = locate_torus(b);
    if (tp < 0) fail(Errc::Internal, "branch point not on the surface");
    return surf_->normalize_point(cover_poly(tp, 0), b);
}

double SlitCover::distance(const SurfacePoint& a, const SurfacePoint& b) const {
    SurfacePoint ca = surf_->normalize_point(a), cb = surf_->normalize_point(b);
    if (ca == cb) return 0.0;
    // torus distance with lattice offsets
    double ax = to_double(ca.xy.x), ay = to_double(ca.xy.y);
    double bx = to_double(cb.xy.x), by = to_double(cb.xy.y);
    double best = 1e18;
    int om = 0, on = 0;
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n) {
            double d = std::hypot(bx + m - ax, by + n - ay);
            if (d < best) { best = d; om = m; on = n; }
        }
    if (best > 0.25) return best;
    // nearby points: sheets must agree after transporting across the short path
    RVec2 btrans{cb.xy.x + om, cb.xy.y + on};
    for (int attempt = 0; attempt < 6; ++attempt) {
        RVec2 nudge{Rat(attempt, 1L << 41), Rat(attempt * 3, 1L << 42)};
        auto par = wall_parity(ca.xy + nudge, btrans + nudge);
        if (!par) continue;
        int sa = sheet_of(ca.poly), sb = sheet_of(cb.poly);
        // branch vertices belong to both sheets; treat their canonical class as wild
        bool a_branch = is_branch(mod1(ca.xy)), b_branch = is_branch(mod1(cb.xy));
        if (a_branch || b_branch) return best;
        return ((sa ^ *par) == sb) ? best : 1.0;
    }
    return 1.0; // could not certify sheets
}

SurfacePoint SlitCover::sample_point(Rng& rng, double branch_clearance) const {
    for (int guard = 0; guard < 10000; ++guard) {
        RVec2 xy = rng.unit_square_rat();
        int tp = locate_torus(xy);
        if (tp < 0) continue;
        if (locate_in_polygon(xy, surf_->polygons()[tp].v) != PolyLoc::Inside) continue;
        bool clear = true;
        for (const auto& b : branch_) {
            double dx = to_double(xy.x - b.x), dy = to_double(xy.y - b.y);
            if (std::hypot(dx, dy) < branch_clearance) clear = false;
        }
        if (!clear) continue;
        int sheet = static_cast<int>(rng.below(2));
        return {cover_poly(tp, sheet), xy};
    }
    fail(Errc::Internal, "sample_point failed");
}

// ---------------------------------------------------------------------------
// CoverMap

CoverMap CoverMap::identity(std::shared_ptr<const SlitCover> c) {
    CoverMap m;
    m.cover_ = std::move(c);
    return m;
}

CoverMap CoverMap::deck(std::shared_ptr<const SlitCover> c) {
    CoverMap m;
    m.cover_ = std::move(c);
    m.chain_.push_back(Deck{});
    return m;
}

CoverMap deck_involution(std::shared_ptr<const SlitCover> cover) { return CoverMap::deck(std::move(cover)); }

namespace {

std::vector<std::pair<RVec2, RVec2>> transformed_walls(const std::vector<std::pair<RVec2, RVec2>>& walls,
                                                       const AffineTorusMap& t) {
    std::vector<std::pair<RVec2, RVec2>> out = walls;
    for (const auto& [s, e] : walls) out.push_back({t.apply_plane(s), t.apply_plane(e)});
    return out;
}

} // namespace

SurfacePoint CoverMap::apply(const SurfacePoint& p) const {
    SurfacePoint cur = cover_->surface().normalize_point(p);
    for (const auto& atom : chain_) {
        if (std::holds_alternative<Deck>(atom)) {
            int tp = cover_->torus_poly_of(cur.poly);
            int s = cover_->sheet_of(cur.poly);
            cur = cover_->surface().normalize_point(cover_->cover_poly(tp, 1 - s), cur.xy);
            continue;
        }
        const Lift& L = std::get<Lift>(atom);
        int s = cover_->sheet_of(cur.poly);
        const RVec2 x = cur.xy;
        const auto& poly = cover_->surface().polygons()[cur.poly];
        PolyLoc loc = locate_in_polygon(x, poly.v);

        if (loc == PolyLoc::Inside) {
            int par = robust_parity(RVec2(cover_->marked_point()), x, L.rule_walls);
            int s_img = s ^ L.flip0 ^ par;
            RVec2 y_plane = L.base.apply_plane(x);
            RVec2 y = mod1(y_plane);
            int q = cover_->locate_torus(y);
            if (q < 0) fail(Errc::Internal, "image point escaped the decomposition");
            cur = cover_->surface().normalize_point(cover_->cover_poly(q, s_img), y);
            continue;
        }

        // boundary point: determine the image chart from the interior side,
        // then place the exact image coordinates in that chart
        RVec2 centroid = polygon_centroid_vertex_mean(poly.v);
        bool done = false;
        for (int attempt = 1; attempt < 24 && !done; ++attempt) {
            Rat delta(1, 1L << (10 + attempt));
            RVec2 x_eff = x + (centroid - x) * delta;
            if (locate_in_polygon(x_eff, poly.v) != PolyLoc::Inside) continue;
            int par = robust_parity(RVec2(cover_->marked_point()), x_eff, L.rule_walls);
            int s_img = s ^ L.flip0 ^ par;
            RVec2 y_eff_plane = L.base.apply_plane(x_eff);
            RVec2 shift{Rat(rat_floor(y_eff_plane.x)), Rat(rat_floor(y_eff_plane.y))};
            RVec2 y_eff = y_eff_plane - shift;
            int q = cover_->locate_torus(y_eff);
            if (q < 0) continue;
            RVec2 y_final = L.base.apply_plane(x) - shift;
            if (locate_in_polygon(y_final, cover_->surface().polygons()[q].v) == PolyLoc::Outside) continue;
            cur = cover_->surface().normalize_point(cover_->cover_poly(q, s_img), y_final);
            done = true;
        }
        if (!done) fail(Errc::Internal, "CoverMap::apply: persistent boundary degeneracy");
    }
    return cur;
}

GoldenCoverPoint CoverMap::apply(const GoldenCoverPoint& p) const {
    GoldenCoverPoint cur = p;
    for (const auto& atom : chain_) {
        if (std::holds_alternative<Deck>(atom)) {
            cur.sheet ^= 1;
            continue;
        }
        const Lift& L = std::get<Lift>(atom);
        GVec2 x0(cover_->marked_point());
        int par = robust_parity(x0, cur.xy, L.rule_walls);
        int s_img = cur.sheet ^ L.flip0 ^ par;
        const IMat2& M = L.base.m;
        GVec2 y{Golden(Rat(M.a)) * cur.xy.x + Golden(Rat(M.b)) * cur.xy.y + Golden(L.base.t.x),
                Golden(Rat(M.c)) * cur.xy.x + Golden(Rat(M.d)) * cur.xy.y + Golden(L.base.t.y)};
        y.x = y.x - Golden(Rat(golden_floor(y.x)));
        y.y = y.y - Golden(Rat(golden_floor(y.y)));
        cur = {y, s_img};
    }
    return cur;
}

CoverMap CoverMap::compose(const CoverMap& inner) const {
    CoverMap m;
    m.cover_ = cover_;
    m.chain_ = inner.chain_;
    m.chain_.insert(m.chain_.end(), chain_.begin(), chain_.end());
    return m;
}

CoverMap CoverMap::inverse() const {
    CoverMap m;
    m.cover_ = cover_;
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
        if (std::holds_alternative<Deck>(*it)) {
            m.chain_.push_back(Deck{});
            continue;
        }
        const Lift& L = std::get<Lift>(*it);
        Lift inv;
        inv.base = L.base.inverse();
        inv.rule_walls = transformed_walls(cover_->walls(), inv.base.inverse()); // W u B(W)
        RVec2 y0 = L.base.apply(cover_->marked_point());
        auto r = wall_crossings(RVec2(cover_->marked_point()), y0, inv.rule_walls);
        if (r.degenerate) fail(Errc::Internal, "inverse lift: degenerate marked path");
        inv.flip0 = L.flip0 ^ (r.crossings & 1);
        m.chain_.push_back(std::move(inv));
    }
    return m;
}

CoverMap CoverMap::power(int k) const {
    if (k < 0) return inverse().power(-k);
    CoverMap m = CoverMap::identity(cover_);
    for (int i = 0; i < k; ++i) m = compose(m);
    return m;
}

AffineTorusMap CoverMap::base() const {
    AffineTorusMap total{imat_identity(), RVec2()};
    for (const auto& atom : chain_)
        if (const Lift* L = std::get_if<Lift>(&atom)) total = L->base.compose(total);
    return total;
}

bool CoverMap::base_is_identity() const {
    AffineTorusMap b = base();
    return b.m == imat_identity() && mod1(b.t) == RVec2();
}

CoverMap build_cover_map(const AffineTorusMap& base, std::shared_ptr<const SlitCover> cover,
                         int flip_marked, bool verify) {
    // 1. branch set must be permuted
    const auto& br = cover->branch_points();
    RVec2 i0 = base.apply(br[0]), i1 = base.apply(br[1]);
    bool fixes = (i0 == br[0] && i1 == br[1]);
    bool swaps = (i0 == br[1] && i1 == br[0]);
    if (!fixes && !swaps) fail(Errc::BranchSetNotInvariant, "base map does not permute the branch points");

    CoverMap::Lift L;
    L.base = base;
    L.flip0 = flip_marked & 1;
    L.rule_walls = transformed_walls(cover->walls(), base.inverse()); // W u B^{-1}(W)

    // 2. crossing-parity consistency: the combined wall system must look even
    // to every closed loop, otherwise no continuous sheet rule exists
    if (verify) {
        auto loop_parity = [&](const RVec2& a, const RVec2& b) -> std::optional<int> {
            auto r = wall_crossings(a, b, L.rule_walls);
            if (r.degenerate) return std::nullopt;
            return r.crossings & 1;
        };
        const long dens[4] = {7, 13, 29, 61};
        for (int axis = 0; axis < 2; ++axis) {
            bool decided = false;
            for (int yi = 0; yi < 4 && !decided; ++yi) {
                for (int xi = 0; xi < 4 && !decided; ++xi) {
                    Rat c(3, dens[yi]), o(2, dens[xi]);
                    RVec2 a = axis == 0 ? RVec2{o, c} : RVec2{c, o};
                    RVec2 b = axis == 0 ? RVec2{o + 1, c} : RVec2{c, o + 1};
                    auto par = loop_parity(a, b);
                    if (!par) continue;
                    decided = true;
                    if (*par != 0)
                        fail(Errc::NoContinuousSheetRule,
                             "slit-crossing parity inconsistent along a torus loop");
                }
            }
            if (!decided) fail(Errc::Internal, "could not test loop parity");
        }
    }

    CoverMap m = CoverMap::identity(cover);
    m.chain_.push_back(std::move(L));

    if (verify) {
        Rng rng(0xC0FFEE);
        const TranslationSurface& surf = cover->surface();
        // projection to base + deck commutation + inverse, on random points
        CoverMap inv = m.inverse();
        CoverMap dk = CoverMap::deck(cover);
        for (int i = 0; i < 48; ++i) {
            SurfacePoint w = cover->sample_point(rng);
            SurfacePoint img = m.apply(w);
            if (!(mod1(img.xy) == base.apply(w.xy)))
                fail(Errc::Internal, "lift does not project to the base map");
            SurfacePoint a = m.apply(dk.apply(w)), b = dk.apply(m.apply(w));
            if (!(a == b)) fail(Errc::Internal, "lift does not commute with the deck involution");
            if (!(inv.apply(img) == surf.normalize_point(w)))
                fail(Errc::Internal, "lift inverse check failed");
        }
        // sampled continuity across every glued edge (slit included)
        for (int tp = 0; tp < cover->torus_polygons(); ++tp) {
            const auto& poly = surf.polygons()[tp];
            for (int e = 0; e < poly.size(); ++e) {
                for (int rep = 0; rep < 3; ++rep) {
                    Rat t(2 * rep + 1, 7);
                    RVec2 a0 = poly.v[e], ev = poly.edge_vec(e);
                    RVec2 w = a0 + ev * t;
                    // inward normal (CCW polygon): left of edge direction,
                    // scaled to roughly unit length
                    RVec2 nrm{-ev.y, ev.x};
                    Rat eps(1, 1L << 22);
                    double nl = norm(nrm);
                    Rat scale(static_cast<long>(1.0 / nl * (1 << 20)), 1 << 20);
                    RVec2 inner = w + nrm * (eps * scale);
                    int q_in = cover->locate_torus(inner);
                    if (q_in != tp) continue; // sample fell outside; skip
                    EdgeRef partner = surf.partner({cover->cover_poly(tp, 0), e});
                    int tp2 = cover->torus_poly_of(partner.poly);
                    int srel = cover->sheet_of(partner.poly); // 1 for slit edges
                    RVec2 w2 = surf.transport({cover->cover_poly(tp, 0), e}, w);
                    const auto& poly2 = surf.polygons()[tp2];
                    RVec2 ev2 = poly2.edge_vec(partner.edge);
                    RVec2 nrm2{-ev2.y, ev2.x};
                    double nl2 = norm(nrm2);
                    Rat scale2(static_cast<long>(1.0 / nl2 * (1 << 20)), 1 << 20);
                    RVec2 inner2 = w2 + nrm2 * (eps * scale2);
                    if (cover->locate_torus(inner2) != tp2) continue;
                    SurfacePoint pa{cover->cover_poly(tp, 0), inner};
                    SurfacePoint pb{cover->cover_poly(tp2, srel), inner2};
                    if (cover->distance(pa, pb) > 1e-4)
                        fail(Errc::Internal, "edge straddle pair not close before mapping");
                    double d = cover->distance(m.apply(pa), m.apply(pb));
                    if (d > 1e-4)
                        fail(Errc::NoContinuousSheetRule, "sheet rule discontinuous across a glued edge");
                }
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// foliations, measures, centralizer

MeasuredFoliationPair golden_foliations() {
    MeasuredFoliationPair f;
    f.stable.covector = {Golden(1), Golden(Rat(-1), Rat(1))};  // (1, phi-1)
    f.unstable.covector = {Golden(1), Golden(Rat(0), Rat(-1))}; // (1, -phi)
    f.dilatation = to_double(Golden(Rat(1), Rat(1))); // phi^2 = 1 + phi
    return f;
}

MeasureScaling measure_scaling(const CoverMap& q, const MeasuredFoliationPair& fol,
                               const std::vector<StraightArc>& arcs) {
    if (arcs.empty()) fail(Errc::NonPositive, "need at least one arc");
    AffineTorusMap b = q.base();
    auto ratio = [&](const GVec2& eta, const StraightArc& arc) {
        Golden before(0), after(0);
        for (const auto& seg : arc.segments) {
            RVec2 d = seg.b - seg.a;
            if (d == RVec2()) continue;
            Golden v = eta.x * Golden(d.x) + eta.y * Golden(d.y);
            if (v.is_zero()) fail(Errc::ArcTangentToLeaves, "arc tangent to the foliation");
            RVec2 bd = b.m.apply(d);
            Golden w = eta.x * Golden(bd.x) + eta.y * Golden(bd.y);
            before += abs(v);
            after += abs(w);
        }
        if (before.is_zero()) fail(Errc::ArcTangentToLeaves, "empty arc");
        return to_double(after) / to_double(before);
    };
    MeasureScaling out;
    double s_lo = 1e300, s_hi = -1e300, u_lo = 1e300, u_hi = -1e300;
    double s_sum = 0, u_sum = 0;
    for (const auto& a : arcs) {
        double rs = ratio(fol.stable.covector, a);
        double ru = ratio(fol.unstable.covector, a);
        s_sum += rs; u_sum += ru;
        s_lo = std::min(s_lo, rs); s_hi = std::max(s_hi, rs);
        u_lo = std::min(u_lo, ru); u_hi = std::max(u_hi, ru);
    }
    out.nu_s = s_sum / arcs.size();
    out.nu_u = u_sum / arcs.size();
    out.dev_s = std::max(s_hi - out.nu_s, out.nu_s - s_lo);
    out.dev_u = std::max(u_hi - out.nu_u, out.nu_u - u_lo);
    return out;
}

std::vector<StraightArc> random_arcs(const SlitCover& cover, int count, Rng& rng) {
    std::vector<StraightArc> arcs;
    const auto& polys = cover.surface().polygons();
    while (static_cast<int>(arcs.size()) < count) {
        int poly = static_cast<int>(rng.below(polys.size()));
        RVec2 a = rng.unit_square_rat(), b = rng.unit_square_rat();
        if (locate_in_polygon(a, polys[poly].v) != PolyLoc::Inside) continue;
        if (locate_in_polygon(b, polys[poly].v) != PolyLoc::Inside) continue;
        if (a == b) continue;
        StraightArc arc;
        arc.segments.push_back({poly, a, b});
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

bool commutes(const CoverMap& q, const CoverMap& p, int samples, Rng& rng, double tol) {
    const SlitCover& c = q.cover();
    for (int i = 0; i < samples; ++i) {
        SurfacePoint w = c.sample_point(rng);
        SurfacePoint a = q.apply(p.apply(w));
        SurfacePoint b = p.apply(q.apply(w));
        if (a == b) continue;
        if (c.distance(a, b) >= tol) return false;
    }
    return true;
}

CentralizerVerdict classify_centralizer_element(const CoverMap& q, const CoverMap& p, Rng& rng,
                                                int arc_count, int commute_samples, int order_bound,
                                                double tol) {
    if (!commutes(q, p, commute_samples, rng, tol))
        fail(Errc::DoesNotCommute, "map does not commute with the reference pseudo-Anosov");
    auto arcs = random_arcs(q.cover(), arc_count, rng);
    MeasureScaling ms = measure_scaling(q, golden_foliations(), arcs);
    CentralizerVerdict v;
    v.nu = ms.nu_s;
    if (std::fabs(ms.nu_s - 1.0) <= tol) {
        // periodic case: exhibit the order by iterating on sample points
        std::vector<SurfacePoint> pts;
        for (int i = 0; i < 24; ++i) pts.push_back(q.cover().sample_point(rng));
        std::vector<SurfacePoint> cur = pts;
        for (int m = 1; m <= order_bound; ++m) {
            bool all = true;
            for (size_t i = 0; i < pts.size(); ++i) {
                cur[i] = q.apply(cur[i]);
                if (!(cur[i] == pts[i])) all = false;
            }
            if (all) {
                v.kind = CentralizerVerdict::Kind::Periodic;
                v.order = m;
                return v;
            }
        }
        fail(Errc::OrderSearchExceeded, "nu = 1 but no order <= bound found");
    }
    v.kind = CentralizerVerdict::Kind::PseudoAnosov;
    v.dilatation = std::max(ms.nu_s, 1.0 / ms.nu_s);
    return v;
}

double dilatation(const CoverMap& p) {
    AffineTorusMap b = p.base();
    if (std::llabs(b.m.trace()) <= 2) fail(Errc::NotHyperbolic, "base map is not hyperbolic");
    return perron_eigenvalue(b.m);
}

} // namespace flatdyn
