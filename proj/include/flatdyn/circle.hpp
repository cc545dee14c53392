#pragma once

#include <functional>
#include <vector>

#include "flatdyn/error.hpp"

namespace flatdyn {

// Validated parameter triple (n,k,l): k >= 1, l = 0 when k = 1, otherwise
// l in {1,...,k-1} coprime to k.
struct CorrectTriple {
    long n = 1, k = 1, l = 0;
};

CorrectTriple make_correct_triple(long n, long k, long l);

struct CirclePoint {
    double theta = 0.0; // point is e^{i 2 pi theta}, 0 <= theta < 1
};

// distance on R/Z
double circle_dist(double a, double b);

// lift value:  r + sin(2 pi n k r)/(4 pi n k) + l/k
double lift_eval(const CorrectTriple& t, double r);
// derivative: 1 + cos(2 pi n k r)/2, always in [1/2, 3/2]
double lift_derivative(const CorrectTriple& t, double r);

CirclePoint circle_apply(const CorrectTriple& t, CirclePoint s);

// A lift of a circle diffeomorphism: strictly increasing, f(r+1) = f(r)+1.
// Either the parameter family above or a user-supplied callable.
class LiftedCircleMap {
  public:
    static LiftedCircleMap family(const CorrectTriple& t);
    static LiftedCircleMap custom(std::function<double(double)> f);

    double operator()(double r) const;
    bool is_family() const { return is_family_; }
    const CorrectTriple& triple() const;

  private:
    LiftedCircleMap() = default;
    bool is_family_ = false;
    CorrectTriple t_;
    std::function<double(double)> f_;
};

double iterate_lift(const LiftedCircleMap& m, double r0, long steps);

// drift average (f^n(r0) - r0)/n; for the family it converges to l/k
double rotation_number(const LiftedCircleMap& m, double r0, long iterations);

struct PeriodicOrbitRecord {
    CirclePoint point;
    long index = 0;       // i in {0,...,2nk-1}, theta = i/(2nk)
    long period = 0;      // = k for the family
    double multiplier = 0; // derivative of the period-th iterate along the orbit
    bool sink = false;     // multiplier < 1; odd index for the family
};

// All periodic points of phi_{n,k,l}: the 2nk grid points i/(2nk).
std::vector<PeriodicOrbitRecord> periodic_points(const CorrectTriple& t);

bool verify_lift_equivariance(const LiftedCircleMap& m, int samples, double tol = 1e-9);

// monotone inverse of the family lift (bisection + Newton)
double inverse_lift_eval(const CorrectTriple& t, double y);

} // namespace flatdyn
