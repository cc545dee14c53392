#include "flatdyn/markov.hpp"

#include <algorithm>
#include <cmath>

namespace flatdyn {

namespace {

const Golden kPhi = Golden::phi();
const Golden kSqrt5 = Golden::sqrt5();

Golden inv_sqrt5() { return kSqrt5 / Golden(5); } // 1/sqrt5 = sqrt5/5

} // namespace

GVec2 plane_to_eigen(const GVec2& xy) {
    Golden is5 = inv_sqrt5();
    Golden p = (kPhi * xy.x + xy.y) * is5;
    Golden q = ((kPhi - Golden(1)) * xy.x - xy.y) * is5;
    return {p, q};
}

GVec2 eigen_to_plane(const GVec2& pq) {
    // x = p + q, y = p(phi-1) - q phi
    return {pq.x + pq.y, pq.x * (kPhi - Golden(1)) - pq.y * kPhi};
}

GVec2 eigen_lattice_g1() { return plane_to_eigen({Golden(1), Golden(0)}); }
GVec2 eigen_lattice_g2() { return plane_to_eigen({Golden(0), Golden(1)}); }

GVec2 MarkovRectangle::center_plane() const {
    Golden quarter(Rat(1, 4));
    return {(c00.x + c10.x + c11.x + c01.x) * quarter, (c00.y + c10.y + c11.y + c01.y) * quarter};
}

namespace {

MarkovRectangle box_rect(const GoldenInterval& p, const GoldenInterval& q, int sheet = -1) {
    MarkovRectangle r;
    r.p = p;
    r.q = q;
    r.aligned = true;
    r.sheet = sheet;
    r.c00 = eigen_to_plane({p.lo, q.lo});
    r.c10 = eigen_to_plane({p.hi, q.lo});
    r.c11 = eigen_to_plane({p.hi, q.hi});
    r.c01 = eigen_to_plane({p.lo, q.hi});
    return r;
}

// eigenvalue of m on the unstable direction, exact; fails if m is not
// diagonal over the golden frame
Golden golden_frame_eigenvalue(const IMat2& m) {
    // m (1, phi-1) must equal lambda (1, phi-1)
    Golden ex(1), ey = kPhi - Golden(1);
    Golden ix = Golden(Rat(m.a)) * ex + Golden(Rat(m.b)) * ey;
    Golden iy = Golden(Rat(m.c)) * ex + Golden(Rat(m.d)) * ey;
    if (!(iy == ix * ey))
        fail(Errc::Unsupported,
             "matrix does not preserve the golden eigenframe; only powers of [[2,1],[1,1]] are supported");
    // stable direction must also be preserved (automatic for symmetric powers,
    // but check anyway)
    Golden sx(1), sy = -kPhi;
    Golden jx = Golden(Rat(m.a)) * sx + Golden(Rat(m.b)) * sy;
    Golden jy = Golden(Rat(m.c)) * sx + Golden(Rat(m.d)) * sy;
    if (!(jy == jx * sy)) fail(Errc::Unsupported, "stable direction not preserved");
    return ix;
}

struct BoxView {
    GoldenInterval p, q;
};

std::vector<BoxView> views(const MarkovPartition& part) {
    std::vector<BoxView> out;
    for (const auto& r : part.rects) {
        if (!r.aligned) fail(Errc::Unsupported, "transition counting needs axis-aligned rectangles");
        out.push_back({r.p, r.q});
    }
    return out;
}

// number of distinct base boxes (cover partitions store each base box twice)
std::vector<std::vector<long>> count_transitions(const std::vector<BoxView>& boxes, const Golden& lambda) {
    const GVec2 g1 = eigen_lattice_g1(), g2 = eigen_lattice_g2();
    const Golden inv_l = Golden(1) / lambda;
    size_t n = boxes.size();
    std::vector<std::vector<long>> t(n, std::vector<long>(n, 0));

    double lam_d = to_double(lambda);
    int range = static_cast<int>(std::ceil(lam_d)) + 3;

    for (size_t i = 0; i < n; ++i) {
        GoldenInterval ip{boxes[i].p.lo * lambda, boxes[i].p.hi * lambda};
        GoldenInterval iq{boxes[i].q.lo * inv_l, boxes[i].q.hi * inv_l};
        Golden wsum(0);
        for (size_t j = 0; j < n; ++j) {
            for (int a = -range; a <= range; ++a) {
                for (int b = -range; b <= range; ++b) {
                    Golden sp = g1.x * Golden(a) + g2.x * Golden(b);
                    Golden sq = g1.y * Golden(a) + g2.y * Golden(b);
                    Golden plo = boxes[j].p.lo + sp, phi_ = boxes[j].p.hi + sp;
                    Golden qlo = boxes[j].q.lo + sq, qhi = boxes[j].q.hi + sq;
                    Golden ow = (ip.hi < phi_ ? ip.hi : phi_) - (ip.lo > plo ? ip.lo : plo);
                    Golden oh = (iq.hi < qhi ? iq.hi : qhi) - (iq.lo > qlo ? iq.lo : qlo);
                    if (ow.sign() > 0 && oh.sign() > 0) {
                        // the image strip's q-band must land inside the target
                        // band, otherwise the partition is not Markov
                        if (iq.lo < qlo || qhi < iq.hi)
                            fail(Errc::Internal, "image band straddles a rectangle in the contracting direction");
                        t[i][j] += 1;
                        wsum += boxes[j].p.width();
                    }
                }
            }
        }
        if (!(wsum == boxes[i].p.width() * lambda))
            fail(Errc::Internal, "transition row identity violated");
    }
    return t;
}

} // namespace

MarkovPartition markov_adler_weiss(const LinearTorusMap& m) {
    if (!m.hyperbolic()) fail(Errc::NotHyperbolic, "Markov construction needs a hyperbolic matrix");
    Golden lambda = golden_frame_eigenvalue(m.m);
    if (!(Golden(1) < lambda)) fail(Errc::Unsupported, "unstable eigenvalue must exceed 1");

    const Rat f(1, 5);
    Golden c1 = (Golden(3) - kPhi) * Golden(f);        // (3-phi)/5
    Golden c2 = (kPhi * Golden(2) - Golden(1)) * Golden(f); // (2phi-1)/5 = 1/sqrt5
    Golden c3 = (kPhi * Golden(3) - Golden(4)) * Golden(f); // (3phi-4)/5
    Golden c4 = (kPhi + Golden(2)) * Golden(f);        // (phi+2)/5
    Golden z(0);

    MarkovPartition part;
    part.rects = {
        box_rect({z, c1}, {z, c1}),        // T1
        box_rect({-c1, z}, {-c1, z}),      // T1 mirrored
        box_rect({z, c2}, {-c3, z}),       // T2
        box_rect({-c2, z}, {z, c3}),       // T2 mirrored
        box_rect({c1, c2}, {z, c1}),       // T3
        box_rect({c2, c4}, {-c3, z}),      // T4
        box_rect({-c2, z}, {c3, c1}),      // T5
    };
    part.transition = count_transitions(views(part), lambda);

    // exact cover check: total eigen-area equals 1/sqrt5
    Golden area(0);
    for (const auto& r : part.rects) area += r.p.width() * r.q.width();
    if (!(area == c2)) fail(Errc::Internal, "partition area mismatch");
    return part;
}

MarkovPartition refine_at_interior_points(const MarkovPartition& part, const LinearTorusMap& m,
                                          const std::vector<GVec2>& pts_eigen) {
    const GVec2 g1 = eigen_lattice_g1(), g2 = eigen_lattice_g2();
    Golden lambda = golden_frame_eigenvalue(m.m);

    std::vector<GoldenInterval> ps, qs;
    std::vector<std::vector<Golden>> cut_p(part.rects.size()), cut_q(part.rects.size());
    for (const auto& pt : pts_eigen) {
        bool placed = false;
        for (size_t i = 0; i < part.rects.size() && !placed; ++i) {
            const auto& r = part.rects[i];
            for (int a = -3; a <= 3 && !placed; ++a) {
                for (int b = -3; b <= 3 && !placed; ++b) {
                    Golden pp = pt.x - (g1.x * Golden(a) + g2.x * Golden(b));
                    Golden qq = pt.y - (g1.y * Golden(a) + g2.y * Golden(b));
                    if (r.p.lo < pp && pp < r.p.hi && r.q.lo < qq && qq < r.q.hi) {
                        cut_p[i].push_back(pp);
                        cut_q[i].push_back(qq);
                        placed = true;
                    }
                }
            }
        }
        if (!placed) fail(Errc::Internal, "refinement point not interior to any rectangle");
    }

    MarkovPartition out;
    for (size_t i = 0; i < part.rects.size(); ++i) {
        const auto& r = part.rects[i];
        std::vector<Golden> pb{r.p.lo};
        for (auto& c : cut_p[i]) pb.push_back(c);
        pb.push_back(r.p.hi);
        std::vector<Golden> qb{r.q.lo};
        for (auto& c : cut_q[i]) qb.push_back(c);
        qb.push_back(r.q.hi);
        std::sort(pb.begin(), pb.end());
        std::sort(qb.begin(), qb.end());
        for (size_t a = 0; a + 1 < pb.size(); ++a)
            for (size_t b = 0; b + 1 < qb.size(); ++b)
                out.rects.push_back(box_rect({pb[a], pb[a + 1]}, {qb[b], qb[b + 1]}));
    }
    out.transition = count_transitions(views(out), lambda);
    return out;
}

namespace {

// parity transport between two golden plane points against the cover walls;
// retries with tiny common shifts when the straight path is degenerate
int parity_or_fail(const SlitCover& cover, const GVec2& a, const GVec2& b) {
    for (int k = 0; k < 8; ++k) {
        GVec2 s{Golden(Rat(k, 1L << 43)), Golden(Rat(3 * k, 1L << 44))};
        auto r = wall_crossings(GVec2{a.x + s.x, a.y + s.y}, GVec2{b.x + s.x, b.y + s.y}, cover.walls());
        if (!r.degenerate) return r.crossings & 1;
    }
    fail(Errc::Internal, "persistently degenerate parity path");
}

GVec2 reduce_mod1(const GVec2& v, GVec2* shift_out = nullptr) {
    Golden fx = Golden(Rat(golden_floor(v.x))), fy = Golden(Rat(golden_floor(v.y)));
    if (shift_out) *shift_out = {fx, fy};
    return {v.x - fx, v.y - fy};
}

// find the lattice placement bringing an eigen point into the box
bool place_in_box(const GoldenInterval& p, const GoldenInterval& q, const GVec2& pt, int range,
                  GVec2* shift_eigen) {
    const GVec2 g1 = eigen_lattice_g1(), g2 = eigen_lattice_g2();
    for (int a = -range; a <= range; ++a) {
        for (int b = -range; b <= range; ++b) {
            Golden sp = g1.x * Golden(a) + g2.x * Golden(b);
            Golden sq = g1.y * Golden(a) + g2.y * Golden(b);
            Golden pp = pt.x - sp, qq = pt.y - sq;
            if (p.lo < pp && pp < p.hi && q.lo < qq && qq < q.hi) {
                *shift_eigen = {sp, sq};
                return true;
            }
        }
    }
    return false;
}

} // namespace

MarkovPartition lift_partition(const MarkovPartition& base, std::shared_ptr<const SlitCover> cover,
                               const CoverMap& p, bool auto_refine) {
    Golden lambda = golden_frame_eigenvalue(p.base().m);

    // branch points in eigen coordinates
    std::vector<GVec2> branch_eigen;
    for (const auto& b : cover->branch_points()) branch_eigen.push_back(plane_to_eigen(GVec2(b)));

    // detect branch points interior to rectangles
    MarkovPartition working = base;
    {
        const GVec2 g1 = eigen_lattice_g1(), g2 = eigen_lattice_g2();
        (void)g1;
        (void)g2;
        std::vector<GVec2> interior;
        for (const auto& be : branch_eigen) {
            for (size_t i = 0; i < working.rects.size(); ++i) {
                GVec2 shift;
                if (place_in_box(working.rects[i].p, working.rects[i].q, be, 3, &shift)) {
                    if (!auto_refine)
                        fail(Errc::BranchInteriorToRectangle,
                             "branch point interior to rectangle " + std::to_string(i), static_cast<double>(i));
                    interior.push_back(be);
                    break;
                }
            }
        }
        if (!interior.empty()) {
            LinearTorusMap m{p.base().m};
            working = refine_at_interior_points(working, m, interior);
        }
    }

    MarkovPartition out;
    out.on_cover = true;
    out.cover = cover;
    size_t nb = working.rects.size();
    for (int s = 0; s < 2; ++s) {
        for (size_t i = 0; i < nb; ++i) {
            MarkovRectangle r = working.rects[i];
            r.sheet = s;
            out.rects.push_back(r);
        }
    }

    // transition matrix with sheet bookkeeping: for every base-level crossing,
    // transport the component's source point through the map and identify the
    // target copy by parity from the target rectangle's center
    const GVec2 g1 = eigen_lattice_g1(), g2 = eigen_lattice_g2();
    const Golden inv_l = Golden(1) / lambda;
    double lam_d = to_double(lambda);
    int range = static_cast<int>(std::ceil(lam_d)) + 3;

    out.transition.assign(2 * nb, std::vector<long>(2 * nb, 0));
    const Golden half(Rat(1, 2));

    for (size_t i = 0; i < nb; ++i) {
        GoldenInterval ip{working.rects[i].p.lo * lambda, working.rects[i].p.hi * lambda};
        GoldenInterval iq{working.rects[i].q.lo * inv_l, working.rects[i].q.hi * inv_l};
        for (size_t j = 0; j < nb; ++j) {
            for (int a = -range; a <= range; ++a) {
                for (int b = -range; b <= range; ++b) {
                    Golden sp = g1.x * Golden(a) + g2.x * Golden(b);
                    Golden sq = g1.y * Golden(a) + g2.y * Golden(b);
                    Golden plo = working.rects[j].p.lo + sp, phi_ = working.rects[j].p.hi + sp;
                    Golden qlo = working.rects[j].q.lo + sq, qhi = working.rects[j].q.hi + sq;
                    Golden o_plo = ip.lo > plo ? ip.lo : plo, o_phi = ip.hi < phi_ ? ip.hi : phi_;
                    Golden o_qlo = iq.lo > qlo ? iq.lo : qlo, o_qhi = iq.hi < qhi ? iq.hi : qhi;
                    if (!((o_phi - o_plo).sign() > 0 && (o_qhi - o_qlo).sign() > 0)) continue;

                    // component center in image coordinates, pulled back to the source box
                    GVec2 z_eigen{(o_plo + o_phi) * half, (o_qlo + o_qhi) * half};
                    GVec2 w_eigen{z_eigen.x / lambda, z_eigen.y * lambda};
                    GVec2 w_plane = eigen_to_plane(w_eigen);
                    GVec2 ci_plane = eigen_to_plane({(working.rects[i].p.lo + working.rects[i].p.hi) * half,
                                                     (working.rects[i].q.lo + working.rects[i].q.hi) * half});
                    int par_src = parity_or_fail(*cover, ci_plane, w_plane);

                    GVec2 w_red = reduce_mod1(w_plane);
                    for (int s = 0; s < 2; ++s) {
                        int s_w = s ^ par_src;
                        GoldenCoverPoint img = p.apply(GoldenCoverPoint{w_red, s_w});
                        // place the image in box j's translate and transport
                        // from that center
                        GVec2 img_eigen = plane_to_eigen(img.xy);
                        GVec2 shift;
                        if (!place_in_box(working.rects[j].p, working.rects[j].q, img_eigen, range + 2, &shift))
                            fail(Errc::Internal, "lifted image escaped every placement of its target box");
                        GVec2 cj_plane = eigen_to_plane(
                            {(working.rects[j].p.lo + working.rects[j].p.hi) * half + shift.x,
                             (working.rects[j].q.lo + working.rects[j].q.hi) * half + shift.y});
                        int par_dst = parity_or_fail(*cover, cj_plane, img.xy);
                        int tau = img.sheet ^ par_dst;
                        out.transition[s * nb + i][tau * nb + j] += 1;
                    }
                }
            }
        }
    }

    // exact row identity for the lifted matrix
    for (size_t i = 0; i < 2 * nb; ++i) {
        Golden wsum(0);
        for (size_t j = 0; j < 2 * nb; ++j)
            for (long c = 0; c < out.transition[i][j]; ++c) wsum += out.rects[j].p.width();
        if (!(wsum == out.rects[i].p.width() * lambda))
            fail(Errc::Internal, "lifted transition row identity violated");
    }
    return out;
}

namespace {

struct SideSet {
    // contracting and stretching sides as plane segments (golden endpoints)
    std::vector<std::pair<GVec2, GVec2>> contracting, stretching;
};

SideSet collect_sides(const MarkovPartition& part) {
    SideSet s;
    for (const auto& r : part.rects) {
        s.contracting.push_back({r.c00, r.c01});
        s.contracting.push_back({r.c10, r.c11});
        s.stretching.push_back({r.c00, r.c10});
        s.stretching.push_back({r.c01, r.c11});
    }
    return s;
}

double seg_dist_d(double px, double py, double ax, double ay, double bx, double by) {
    double vx = bx - ax, vy = by - ay;
    double L2 = vx * vx + vy * vy;
    double t = L2 > 0 ? ((px - ax) * vx + (py - ay) * vy) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(ax + t * vx - px, ay + t * vy - py);
}

// distance of a cover point to the side set, honoring sheets: only sides of
// rectangles whose sheet could match count (base partitions ignore sheets)
double dist_to_sides(const MarkovPartition& part, const std::vector<std::pair<GVec2, GVec2>>& sides,
                     const std::vector<int>& side_rect, const GVec2& pt_plane, int pt_sheet) {
    double px = to_double(pt_plane.x), py = to_double(pt_plane.y);
    double best = 1e18;
    for (size_t k = 0; k < sides.size(); ++k) {
        const auto& [a, b] = sides[k];
        double ax0 = to_double(a.x), ay0 = to_double(a.y);
        double bx0 = to_double(b.x), by0 = to_double(b.y);
        for (int dx = -2; dx <= 2; ++dx) {
            for (int dy = -2; dy <= 2; ++dy) {
                double d = seg_dist_d(px, py, ax0 + dx, ay0 + dy, bx0 + dx, by0 + dy);
                if (d >= best) continue;
                if (part.on_cover && pt_sheet >= 0) {
                    // sheet check: transport from the rectangle center in the
                    // matching placement
                    const auto& r = part.rects[side_rect[k]];
                    GVec2 c = r.center_plane();
                    GVec2 cs{c.x + Golden(dx), c.y + Golden(dy)};
                    int par = parity_or_fail(*part.cover, cs, pt_plane);
                    if ((r.sheet ^ par) != pt_sheet) continue;
                }
                best = d;
            }
        }
    }
    return best;
}

} // namespace

ValidationReport markov_validate(const MarkovPartition& part, const CoverMap& p, Rng& rng,
                                 int mc_samples, int side_samples, double tol) {
    ValidationReport rep;
    if (part.rects.empty()) {
        rep.covers = false;
        rep.disjoint_interiors = true;
        rep.stable_boundary = false;
        rep.unstable_boundary = false;
        return rep;
    }
    const bool cover_mode = part.on_cover;
    const SlitCover* cover = part.cover ? part.cover.get() : &p.cover();

    // --- coverage and disjointness: Monte Carlo membership counting ---------
    long misses = 0, multis = 0, tested = 0;
    for (int it = 0; it < mc_samples; ++it) {
        RVec2 xy = rng.unit_square_rat();
        int sheet = cover_mode ? static_cast<int>(rng.below(2)) : -1;
        GVec2 xg{Golden(xy.x), Golden(xy.y)};
        int hits = 0;
        bool boundary = false;
        for (const auto& r : part.rects) {
            for (int dx = -2; dx <= 2 && !boundary; ++dx) {
                for (int dy = -2; dy <= 2 && !boundary; ++dy) {
                    std::vector<GVec2> quad{
                        {r.c00.x + Golden(dx), r.c00.y + Golden(dy)},
                        {r.c10.x + Golden(dx), r.c10.y + Golden(dy)},
                        {r.c11.x + Golden(dx), r.c11.y + Golden(dy)},
                        {r.c01.x + Golden(dx), r.c01.y + Golden(dy)}};
                    PolyLoc loc = locate_in_polygon(xg, quad);
                    if (loc == PolyLoc::Boundary) { boundary = true; break; }
                    if (loc != PolyLoc::Inside) continue;
                    if (cover_mode) {
                        GVec2 c = r.center_plane();
                        GVec2 cs{c.x + Golden(dx), c.y + Golden(dy)};
                        int par = parity_or_fail(*cover, cs, xg);
                        if ((r.sheet ^ par) != sheet) continue;
                    }
                    ++hits;
                }
            }
        }
        if (boundary) continue;
        ++tested;
        if (hits == 0) ++misses;
        if (hits > 1) ++multis;
    }
    rep.misses = misses;
    rep.multi_hits = multis;
    rep.covers = (misses == 0 && tested > mc_samples / 2);
    rep.disjoint_interiors = (multis == 0);

    // --- boundary conditions -------------------------------------------------
    SideSet sides = collect_sides(part);
    std::vector<int> side_rect;
    for (size_t i = 0; i < part.rects.size(); ++i) { side_rect.push_back(static_cast<int>(i)); side_rect.push_back(static_cast<int>(i)); }

    CoverMap pinv = p.inverse();
    double worst_s = 0, worst_u = 0;
    for (size_t i = 0; i < part.rects.size(); ++i) {
        const auto& r = part.rects[i];
        auto sample_side = [&](const GVec2& a, const GVec2& b, bool stable_side) {
            for (int k = 0; k < side_samples; ++k) {
                Rat t(2 * k + 1, 2 * side_samples + 1);
                GVec2 pt{a.x + (b.x - a.x) * Golden(t), a.y + (b.y - a.y) * Golden(t)};
                int sheet = -1;
                GVec2 pt_red = pt;
                if (cover_mode) {
                    GVec2 c = r.center_plane();
                    int par = parity_or_fail(*cover, c, pt);
                    sheet = r.sheet ^ par;
                    pt_red = reduce_mod1(pt);
                } else {
                    pt_red = reduce_mod1(pt);
                }
                GoldenCoverPoint img = cover_mode
                                           ? p.apply(GoldenCoverPoint{pt_red, sheet})
                                           : [&] {
                                                 AffineTorusMap bmap = p.base();
                                                 GVec2 y{Golden(Rat(bmap.m.a)) * pt_red.x + Golden(Rat(bmap.m.b)) * pt_red.y + Golden(bmap.t.x),
                                                         Golden(Rat(bmap.m.c)) * pt_red.x + Golden(Rat(bmap.m.d)) * pt_red.y + Golden(bmap.t.y)};
                                                 return GoldenCoverPoint{reduce_mod1(y), -1};
                                             }();
                if (stable_side) {
                    double d = dist_to_sides(part, sides.contracting, side_rect, img.xy, img.sheet);
                    worst_s = std::max(worst_s, d);
                } else {
                    GoldenCoverPoint pre = cover_mode
                                               ? pinv.apply(GoldenCoverPoint{pt_red, sheet})
                                               : [&] {
                                                     AffineTorusMap bmap = p.base().inverse();
                                                     GVec2 y{Golden(Rat(bmap.m.a)) * pt_red.x + Golden(Rat(bmap.m.b)) * pt_red.y + Golden(bmap.t.x),
                                                             Golden(Rat(bmap.m.c)) * pt_red.x + Golden(Rat(bmap.m.d)) * pt_red.y + Golden(bmap.t.y)};
                                                     return GoldenCoverPoint{reduce_mod1(y), -1};
                                                 }();
                    double d = dist_to_sides(part, sides.stretching, side_rect, pre.xy, pre.sheet);
                    worst_u = std::max(worst_u, d);
                }
            }
        };
        sample_side(r.c00, r.c01, true);
        sample_side(r.c10, r.c11, true);
        sample_side(r.c00, r.c10, false);
        sample_side(r.c01, r.c11, false);
    }
    rep.worst_stable_dev = worst_s;
    rep.worst_unstable_dev = worst_u;
    rep.stable_boundary = worst_s < tol;
    rep.unstable_boundary = worst_u < tol;
    return rep;
}

double perron_from_transition(const std::vector<std::vector<long>>& t) {
    size_t n = t.size();
    std::vector<double> v(n, 1.0), w(n, 0.0);
    double lam = 0.0;
    for (int it = 0; it < 400; ++it) {
        double nrm = 0;
        for (size_t i = 0; i < n; ++i) {
            w[i] = 0;
            for (size_t j = 0; j < n; ++j) w[i] += static_cast<double>(t[i][j]) * v[j];
            nrm = std::max(nrm, w[i]);
        }
        if (nrm == 0) return 0.0;
        lam = nrm;
        for (size_t i = 0; i < n; ++i) v[i] = w[i] / nrm;
    }
    return lam;
}

void assert_transition_row_identity(const MarkovPartition& part, const Golden& lambda) {
    for (size_t i = 0; i < part.rects.size(); ++i) {
        Golden wsum(0);
        for (size_t j = 0; j < part.rects.size(); ++j)
            for (long c = 0; c < part.transition[i][j]; ++c) wsum += part.rects[j].p.width();
        if (!(wsum == part.rects[i].p.width() * lambda))
            fail(Errc::Internal, "transition row identity violated");
    }
}

} // namespace flatdyn
