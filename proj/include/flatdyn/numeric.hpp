#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "flatdyn/error.hpp"

namespace flatdyn {

// Exact rational scalar. All polygon/gluing/orbit geometry lives in Q; only
// eigen-direction data leaves it (see golden.hpp).
using Rat = mpq_class;

inline double to_double(const Rat& r) { return r.get_d(); }

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// floor of an exact rational
inline mpz_class rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// reduce into [0,1)
inline Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

// Parse "a/b", "a", or a decimal like "0.25" into an exact rational.
std::optional<Rat> parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

struct RVec2 {
    Rat x, y;
    RVec2() : x(0), y(0) {}
    RVec2(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}
    RVec2 operator+(const RVec2& o) const { return {x + o.x, y + o.y}; }
    RVec2 operator-(const RVec2& o) const { return {x - o.x, y - o.y}; }
    RVec2 operator*(const Rat& s) const { return {x * s, y * s}; }
    bool operator==(const RVec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const RVec2& o) const { return !(*this == o); }
};

inline Rat cross(const RVec2& a, const RVec2& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const RVec2& a, const RVec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const RVec2& a) { return std::hypot(to_double(a.x), to_double(a.y)); }
inline RVec2 mod1(const RVec2& v) { return {mod1(v.x), mod1(v.y)}; }

// 2x2 integer matrix, the linear part of torus maps.
struct IMat2 {
    long a = 1, b = 0, c = 0, d = 1; // [[a,b],[c,d]]

    long det() const { return a * d - b * c; }
    long trace() const { return a + d; }
    IMat2 mul(const IMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // valid for det = +-1 only
    IMat2 inverse() const {
        long D = det();
        if (D != 1 && D != -1) fail(Errc::Internal, "IMat2::inverse: determinant not +-1");
        return {d / D, -b / D, -c / D, a / D};
    }
    RVec2 apply(const RVec2& v) const { return {Rat(a) * v.x + Rat(b) * v.y, Rat(c) * v.x + Rat(d) * v.y}; }
    bool operator==(const IMat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

inline IMat2 imat_identity() { return {1, 0, 0, 1}; }

inline IMat2 imat_pow(IMat2 m, int e) {
    IMat2 r = imat_identity();
    for (int i = 0; i < e; ++i) r = r.mul(m);
    return r;
}

// x |-> M x + t  (mod Z^2)
struct AffineTorusMap {
    IMat2 m;
    RVec2 t;

    RVec2 apply_plane(const RVec2& v) const { return m.apply(v) + t; }
    RVec2 apply(const RVec2& v) const { return mod1(apply_plane(v)); }
    AffineTorusMap compose(const AffineTorusMap& inner) const {
        return {m.mul(inner.m), m.apply(inner.t) + t};
    }
    AffineTorusMap inverse() const {
        IMat2 mi = m.inverse();
        RVec2 ti = mi.apply(t);
        return {mi, RVec2(-ti.x, -ti.y)};
    }
};

inline long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace flatdyn
