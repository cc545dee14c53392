#pragma once

#include <cmath>
#include <string>

#include "flatdyn/numeric.hpp"

namespace flatdyn {

// Exact arithmetic in Q(phi), phi = (1+sqrt5)/2, phi^2 = phi + 1.
// The eigenframe of the cat-map family lives here, so eigen-coordinate
// geometry (Markov boxes, transversal measures of rational arcs) is exact.
struct Golden {
    Rat a, b; // value a + b*phi

    Golden() : a(0), b(0) {}
    Golden(Rat ra) : a(std::move(ra)), b(0) {}
    Golden(long v) : a(v), b(0) {}
    Golden(int v) : a(v), b(0) {}
    Golden(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}

    static Golden phi() { return {Rat(0), Rat(1)}; }
    static Golden sqrt5() { return {Rat(-1), Rat(2)}; } // 2phi - 1

    Golden operator+(const Golden& o) const { return {a + o.a, b + o.b}; }
    Golden operator-(const Golden& o) const { return {a - o.a, b - o.b}; }
    Golden operator-() const { return {-a, -b}; }
    Golden operator*(const Golden& o) const {
        // (a1 + b1 p)(a2 + b2 p) = a1a2 + b1b2 + (a1b2 + a2b1 + b1b2) p
        return {a * o.a + b * o.b, a * o.b + o.a * b + b * o.b};
    }
    // Galois conjugate phi -> 1 - phi; norm (a+b phi)(a + b - b phi) = a^2 + ab - b^2
    Golden inverse() const {
        Rat n = a * a + a * b - b * b;
        if (n == 0) fail(Errc::Internal, "Golden::inverse of zero");
        return {(a + b) / n, -b / n};
    }
    Golden operator/(const Golden& o) const { return *this * o.inverse(); }

    Golden& operator+=(const Golden& o) { a += o.a; b += o.b; return *this; }
    Golden& operator-=(const Golden& o) { a -= o.a; b -= o.b; return *this; }
    Golden& operator*=(const Golden& o) { *this = *this * o; return *this; }

    bool is_zero() const { return a == 0 && b == 0; }

    // exact sign of a + b*phi
    int sign() const {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // mixed signs: sign(b) * sign(phi - (-a/b))
        Rat r = -a / b; // compare phi with r
        // phi > r  <=>  2r - 1 < 0  or  (2r-1)^2 < 5
        Rat u = 2 * r - 1;
        bool phi_gt = (u < 0) || (u * u < 5);
        return sb * (phi_gt ? 1 : -1);
    }

    bool operator==(const Golden& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Golden& o) const { return !(*this == o); }
    bool operator<(const Golden& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const Golden& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const Golden& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const Golden& o) const { return (*this - o).sign() >= 0; }

    double to_d() const { return flatdyn::to_double(a) + flatdyn::to_double(b) * 1.6180339887498948482; }

  private:
    static int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }
};

inline Golden abs(const Golden& g) { return g.sign() < 0 ? -g : g; }
inline double to_double(const Golden& g) { return g.to_d(); }

// floor of an exact Golden value
inline mpz_class golden_floor(const Golden& g) {
    mpz_class f(static_cast<long>(std::floor(g.to_d())));
    // fix up possible double rounding at integer boundaries
    while (Golden(Rat(f)) > g) f -= 1;
    while (Golden(Rat(f + 1)) <= g) f += 1;
    return f;
}

struct GVec2 {
    Golden x, y;
    GVec2() = default;
    GVec2(Golden xx, Golden yy) : x(std::move(xx)), y(std::move(yy)) {}
    GVec2(const RVec2& v) : x(v.x), y(v.y) {}
    GVec2 operator+(const GVec2& o) const { return {x + o.x, y + o.y}; }
    GVec2 operator-(const GVec2& o) const { return {x - o.x, y - o.y}; }
    GVec2 operator*(const Golden& s) const { return {x * s, y * s}; }
    bool operator==(const GVec2& o) const { return x == o.x && y == o.y; }
};

inline Golden cross(const GVec2& a, const GVec2& b) { return a.x * b.y - a.y * b.x; }
inline Golden dot(const GVec2& a, const GVec2& b) { return a.x * b.x + a.y * b.y; }

} // namespace flatdyn
