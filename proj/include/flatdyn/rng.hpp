#pragma once

#include <cstdint>
#include <random>

#include "flatdyn/numeric.hpp"

namespace flatdyn {

// Deterministic sampling. Raw mt19937_64 words only: std:: distributions are
// implementation-defined and would break byte-identical reports.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling, bias-free
        std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return v % bound;
    }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // random rational in [0,1) with denominator 2^30; generic for exact predicates
    Rat unit_rat() { return Rat(static_cast<long>(below(1u << 30)), 1L << 30); }

    RVec2 unit_square_rat() { return {unit_rat(), unit_rat()}; }

  private:
    std::mt19937_64 eng_;
};

} // namespace flatdyn
