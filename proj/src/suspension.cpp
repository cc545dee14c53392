#include "flatdyn/suspension.hpp"

#include <algorithm>
#include <cmath>

namespace flatdyn {

QuotientPoint normalize(const MappingTorus& t, const FiberPoint& p) {
    double fl = std::floor(p.r);
    int m = static_cast<int>(fl);
    double r = p.r - fl;
    if (r >= 1.0) { r -= 1.0; m += 1; } // floor rounding at the seam
    SurfacePoint z = (m == 0) ? t.cover->surface().normalize_point(p.z) : t.j.power(m).apply(p.z);
    return {z, r};
}

bool quotient_equal(const MappingTorus& t, const QuotientPoint& a, const QuotientPoint& b, double tol) {
    auto close = [&](const QuotientPoint& u, const QuotientPoint& v) {
        return std::fabs(u.r - v.r) < tol && t.cover->distance(u.z, v.z) < tol;
    };
    if (close(a, b)) return true;
    // seam: compare a against gamma^{+-1}-shifted b
    if (a.r > 1.0 - tol && b.r < tol) {
        QuotientPoint bs{t.j.inverse().apply(b.z), b.r + 1.0};
        if (std::fabs(a.r - bs.r) < tol && t.cover->distance(a.z, bs.z) < tol) return true;
    }
    if (b.r > 1.0 - tol && a.r < tol) {
        QuotientPoint as{t.j.inverse().apply(a.z), a.r + 1.0};
        if (std::fabs(as.r - b.r) < tol && t.cover->distance(as.z, b.z) < tol) return true;
    }
    return false;
}

ModelMap::ModelMap(MappingTorus torus, CoverMap p, CorrectTriple triple, Rng& rng, bool verify)
    : torus_(std::move(torus)), p_(std::move(p)), triple_(triple) {
    if (verify) {
        if (!commutes(torus_.j, p_, 64, rng)) fail(Errc::DoesNotCommute, "J does not commute with P");
        // J^l P^k must be pseudo-Anosov (hyperbolic base)
        CoverMap ret = torus_.j.power(static_cast<int>(triple_.l)).compose(p_.power(static_cast<int>(triple_.k)));
        if (std::labs(ret.base().m.trace()) <= 2)
            fail(Errc::NotHyperbolic, "J^l P^k is not pseudo-Anosov");
    }
}

QuotientPoint ModelMap::apply(const QuotientPoint& w) const {
    double rn = lift_eval(triple_, w.r);
    SurfacePoint pz = p_.apply(w.z);
    return normalize(torus_, FiberPoint{pz, rn});
}

CirclePoint h_projection(const QuotientPoint& w) { return {w.r}; }

std::vector<NWComponent> nw_components(const ModelMap& m) {
    const auto& t = m.triple();
    long twonk = 2 * t.n * t.k;
    std::vector<NWComponent> out;
    for (long i = 0; i < twonk; ++i) {
        NWComponent c;
        c.index = static_cast<int>(i);
        c.fiber_level = Rat(i, twonk);
        c.attractor = (i % 2) == 1;
        // period of the index orbit i -> i + 2nl
        long period = 1, j = (i + 2 * t.n * t.l) % twonk;
        while (j != i) { j = (j + 2 * t.n * t.l) % twonk; ++period; }
        c.period = period;
        out.push_back(c);
    }
    return out;
}

CoverMap component_return_map(const ModelMap& m, int index) {
    const auto& t = m.triple();
    if (index < 0 || index >= 2 * t.n * t.k) fail(Errc::NonPositive, "component index out of range");
    return m.torus().j.power(static_cast<int>(t.l)).compose(m.p().power(static_cast<int>(t.k)));
}

TrappingReport trapping_check(const ModelMap& m, int index) {
    const auto& t = m.triple();
    long twonk = 2 * t.n * t.k;
    if (index < 0 || index >= twonk) fail(Errc::NonPositive, "component index out of range");
    TrappingReport rep;
    rep.index = index;
    rep.attractor = (index % 2) == 1;

    const double center = static_cast<double>(index) / static_cast<double>(twonk);
    const double half = 1.0 / (4.0 * static_cast<double>(t.n * t.k));
    double a = center - half, b = center + half;

    // one period of the circle lift, drift removed
    auto period_image = [&](double lo, double hi) {
        double lo2 = lo, hi2 = hi;
        for (long s = 0; s < t.k; ++s) {
            lo2 = lift_eval(t, lo2);
            hi2 = lift_eval(t, hi2);
        }
        return std::pair<double, double>{lo2 - t.l, hi2 - t.l};
    };
    auto [ia, ib] = period_image(a, b);
    if (rep.attractor) {
        rep.margin_lo = ia - a;
        rep.margin_hi = b - ib;
    } else {
        rep.margin_lo = a - ia;
        rep.margin_hi = ib - b;
    }
    rep.contained = rep.margin_lo > 0 && rep.margin_hi > 0;

    // 50 period-iterates of interval shrink: forward for attractors, via the
    // inverse lift for repellers (a repeller is the inverse's attractor)
    double lo = a, hi = b;
    for (int j = 0; j < 50; ++j) {
        if (rep.attractor) {
            auto [l2, h2] = period_image(lo, hi);
            lo = l2;
            hi = h2;
        } else {
            double l2 = lo, h2 = hi;
            for (long s = 0; s < t.k; ++s) {
                l2 = inverse_lift_eval(t, l2);
                h2 = inverse_lift_eval(t, h2);
            }
            lo = l2 + t.l;
            hi = h2 + t.l;
            // inverse drifts by -l/k per step; re-center on the component
            double mid = 0.5 * (lo + hi);
            double shift = std::round(mid - center);
            lo -= shift;
            hi -= shift;
        }
        rep.lengths.push_back(hi - lo);
    }
    rep.final_length = rep.lengths.back();
    return rep;
}

int winding_number(const MappingTorus& t, const std::vector<QuotientPoint>& loop) {
    if (loop.size() < 2) fail(Errc::LoopNotClosed, "loop needs at least two points");
    if (!quotient_equal(t, loop.front(), loop.back()))
        fail(Errc::LoopNotClosed, "loop endpoints do not match in the quotient");
    double drift = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        double d = loop[i + 1].r - loop[i].r;
        d -= std::round(d);
        if (std::fabs(d) >= 0.5 - 1e-9)
            fail(Errc::AmbiguousLift, "consecutive fiber gap >= 1/2");
        drift += d;
    }
    // implicit closing edge back to the start (zero when the caller already
    // repeated the first point)
    double closing = loop.front().r - loop.back().r;
    closing -= std::round(closing);
    if (std::fabs(closing) >= 0.5 - 1e-9) fail(Errc::AmbiguousLift, "closing fiber gap >= 1/2");
    double w = drift + closing;
    double wr = std::round(w);
    if (std::fabs(w - wr) > 1e-6) fail(Errc::Internal, "non-integer winding drift");
    return static_cast<int>(wr);
}

std::vector<QuotientPoint> canonical_vertical_loop(const MappingTorus& t, int steps) {
    if (steps < 3) fail(Errc::NonPositive, "need at least 3 steps");
    // anchor at a fixed point of J; the deck involution fixes the branch
    // points, the identity fixes everything
    SurfacePoint z;
    bool have = false;
    {
        SurfacePoint b0 = t.cover->canonical_branch_point(0);
        if (t.j.apply(b0) == b0) { z = b0; have = true; }
    }
    if (!have) {
        Rng rng(11);
        SurfacePoint w = t.cover->sample_point(rng);
        if (t.j.apply(w) == w) { z = w; have = true; }
    }
    if (!have) fail(Errc::Unsupported, "no fixed point of J available for the canonical loop");
    std::vector<QuotientPoint> loop;
    for (int i = 0; i < steps; ++i)
        loop.push_back({z, static_cast<double>(i) / static_cast<double>(steps)});
    loop.push_back({z, 0.0}); // gamma closure: J(z) = z
    return loop;
}

bool nw_factor_property(const ModelMap& m, const std::vector<NWComponent>& comps, int samples, Rng& rng,
                        double tol) {
    const auto& t = m.triple();
    long twonk = 2 * t.n * t.k;
    for (const auto& c : comps) {
        for (int s = 0; s < samples; ++s) {
            SurfacePoint z = m.torus().cover->sample_point(rng);
            QuotientPoint w{z, to_double(c.fiber_level)};
            double theta = h_projection(w).theta;
            // must project into the periodic set {j/(2nk)}
            double best = 1e9;
            for (long j = 0; j < twonk; ++j)
                best = std::min(best, circle_dist(theta, static_cast<double>(j) / static_cast<double>(twonk)));
            if (best > tol) return false;
        }
    }
    return true;
}

ModelChecks run_model_checks(const ModelMap& m, int semi_samples, int return_samples, Rng& rng) {
    ModelChecks out;
    const auto& t = m.triple();
    const MappingTorus& torus = m.torus();
    long twonk = 2 * t.n * t.k;

    // (a) semiconjugacy h(phi(w)) = phi_{n,k,l}(h(w))
    double worst = 0.0;
    for (int i = 0; i < semi_samples; ++i) {
        SurfacePoint z = torus.cover->sample_point(rng);
        QuotientPoint w{z, rng.unit()};
        QuotientPoint iw = m.apply(w);
        CirclePoint lhs = h_projection(iw);
        CirclePoint rhs = circle_apply(t, h_projection(w));
        worst = std::max(worst, circle_dist(lhs.theta, rhs.theta));
    }
    out.semiconjugacy_residual = worst;

    // (b) component invariance: period exactly k on fiber levels
    bool invariance = true;
    for (long i = 0; i < twonk && invariance; ++i) {
        double level = static_cast<double>(i) / static_cast<double>(twonk);
        for (int s = 0; s < 8 && invariance; ++s) {
            SurfacePoint z = torus.cover->sample_point(rng);
            QuotientPoint w{z, level};
            for (long j = 1; j <= t.k; ++j) {
                w = m.apply(w);
                double d = circle_dist(w.r, level);
                if (j < t.k) {
                    // earlier iterates land on other grid levels, at least
                    // 1/(2nk) away
                    if (d < 1.0 / static_cast<double>(twonk) - 1e-9) invariance = false;
                } else {
                    if (d > 1e-12) invariance = false;
                }
            }
        }
    }
    out.component_invariance = invariance;

    // (c) return map identity: k-fold apply equals J^l P^k on the surface part
    CoverMap ret = component_return_map(m, 0);
    double worst_ret = 0.0;
    for (int i = 0; i < return_samples; ++i) {
        SurfacePoint z = torus.cover->sample_point(rng);
        long idx = static_cast<long>(rng.below(static_cast<std::uint64_t>(twonk)));
        double level = static_cast<double>(idx) / static_cast<double>(twonk);
        QuotientPoint w{z, level};
        for (long j = 0; j < t.k; ++j) w = m.apply(w);
        SurfacePoint direct = ret.apply(z);
        worst_ret = std::max(worst_ret, torus.cover->distance(w.z, direct));
        worst_ret = std::max(worst_ret, circle_dist(w.r, level));
    }
    out.return_map_residual = worst_ret;
    {
        Rng crng(rng.next());
        CentralizerVerdict v = classify_centralizer_element(ret, m.p(), crng);
        out.return_map_pa = v.kind == CentralizerVerdict::Kind::PseudoAnosov;
        out.return_map_dilatation = v.dilatation;
    }

    // (d) trapping with 50-iterate shrink
    bool trap = true;
    double worst_len = 0.0;
    for (long i = 0; i < twonk; ++i) {
        TrappingReport r = trapping_check(m, static_cast<int>(i));
        trap = trap && r.contained;
        if (r.attractor) worst_len = std::max(worst_len, r.final_length);
    }
    out.trapping_ok = trap;
    out.worst_final_length = worst_len;

    // (e) non-wandering set projects into the circle's periodic set
    out.nw_factor = nw_factor_property(m, nw_components(m), 4, rng);
    return out;
}

} // namespace flatdyn
