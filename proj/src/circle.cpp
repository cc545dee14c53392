#include "flatdyn/circle.hpp"

#include <cmath>
#include <numbers>

#include "flatdyn/numeric.hpp"

namespace flatdyn {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

CorrectTriple make_correct_triple(long n, long k, long l) {
    if (n <= 0 || k <= 0) fail(Errc::NonPositive, "n and k must be positive");
    if (k == 1) {
        if (l != 0) fail(Errc::BadResidue, "k = 1 requires l = 0");
    } else {
        if (l < 1 || l > k - 1) fail(Errc::BadResidue, "k > 1 requires 1 <= l <= k-1");
        if (gcd_ll(l, k) != 1) fail(Errc::NotCoprime, "gcd(l,k) != 1");
    }
    return {n, k, l};
}

double lift_eval(const CorrectTriple& t, double r) {
    double nk = static_cast<double>(t.n) * static_cast<double>(t.k);
    return r + std::sin(two_pi * nk * r) / (2.0 * two_pi * nk) + static_cast<double>(t.l) / static_cast<double>(t.k);
}

double lift_derivative(const CorrectTriple& t, double r) {
    double nk = static_cast<double>(t.n) * static_cast<double>(t.k);
    return 1.0 + 0.5 * std::cos(two_pi * nk * r);
}

double circle_dist(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

CirclePoint circle_apply(const CorrectTriple& t, CirclePoint s) {
    double v = lift_eval(t, s.theta);
    v -= std::floor(v);
    if (v >= 1.0) v = 0.0; // guard against floor rounding at the seam
    return {v};
}

LiftedCircleMap LiftedCircleMap::family(const CorrectTriple& t) {
    LiftedCircleMap m;
    m.is_family_ = true;
    m.t_ = t;
    return m;
}

LiftedCircleMap LiftedCircleMap::custom(std::function<double(double)> f) {
    LiftedCircleMap m;
    m.f_ = std::move(f);
    return m;
}

double LiftedCircleMap::operator()(double r) const {
    return is_family_ ? lift_eval(t_, r) : f_(r);
}

const CorrectTriple& LiftedCircleMap::triple() const {
    if (!is_family_) fail(Errc::Internal, "custom lift has no triple");
    return t_;
}

// Iterate keeping the fractional part reduced; the integer drift is tracked
// exactly so sin() never sees a large argument.
static double iterate_family_reduced(const CorrectTriple& t, double r0, long steps, long& drift_out) {
    double frac = r0 - std::floor(r0);
    long drift = static_cast<long>(std::floor(r0));
    for (long i = 0; i < steps; ++i) {
        double v = lift_eval(t, frac);
        double fl = std::floor(v);
        frac = v - fl;
        if (frac >= 1.0) { frac -= 1.0; fl += 1.0; }
        drift += static_cast<long>(fl);
    }
    drift_out = drift;
    return frac;
}

double iterate_lift(const LiftedCircleMap& m, double r0, long steps) {
    if (steps < 0) fail(Errc::NonPositive, "steps must be >= 0");
    if (m.is_family()) {
        long drift = 0;
        double frac = iterate_family_reduced(m.triple(), r0, steps, drift);
        return static_cast<double>(drift) + frac;
    }
    double r = r0;
    for (long i = 0; i < steps; ++i) r = m(r);
    return r;
}

double rotation_number(const LiftedCircleMap& m, double r0, long iterations) {
    if (iterations < 1) fail(Errc::NonPositive, "iterations must be >= 1");
    double rn = iterate_lift(m, r0, iterations);
    return (rn - r0) / static_cast<double>(iterations);
}

std::vector<PeriodicOrbitRecord> periodic_points(const CorrectTriple& t) {
    const long m = 2 * t.n * t.k;
    std::vector<PeriodicOrbitRecord> out;
    out.reserve(m);
    for (long i = 0; i < m; ++i) {
        double theta = static_cast<double>(i) / static_cast<double>(m);
        // index orbit i -> i + 2nl (mod 2nk); parity is preserved
        long period = 1, j = (i + 2 * t.n * t.l) % m;
        while (j != i) {
            j = (j + 2 * t.n * t.l) % m;
            ++period;
        }
        // multiplier of the period-th iterate by the chain rule along the orbit
        double mult = 1.0;
        long idx = i;
        for (long s = 0; s < period; ++s) {
            mult *= lift_derivative(t, static_cast<double>(idx) / static_cast<double>(m));
            idx = (idx + 2 * t.n * t.l) % m;
        }
        out.push_back({{theta}, i, period, mult, mult < 1.0});
    }
    return out;
}

bool verify_lift_equivariance(const LiftedCircleMap& m, int samples, double tol) {
    if (samples < 1) fail(Errc::NonPositive, "samples must be >= 1");
    for (int i = 0; i < samples; ++i) {
        double r = -2.0 + 4.0 * (static_cast<double>(i) + 0.5) / samples;
        if (std::fabs(m(r + 1.0) - m(r) - 1.0) >= tol) return false;
    }
    return true;
}

double inverse_lift_eval(const CorrectTriple& t, double y) {
    // f' >= 1/2, so f is a strictly increasing bijection of R
    double lo = y - 1.5, hi = y + 1.5;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (lift_eval(t, mid) < y) lo = mid; else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) x -= (lift_eval(t, x) - y) / lift_derivative(t, x);
    return x;
}

} // namespace flatdyn
