#pragma once

#include <memory>
#include <vector>

#include "flatdyn/cover.hpp"
#include "flatdyn/golden.hpp"

namespace flatdyn {

// Eigen coordinates of the golden frame: a plane point x decomposes as
// x = p*e_u + q*e_s with e_u = (1, phi-1), e_s = (1, -phi). Stretching sides
// of rectangles run along e_u (constant q), contracting sides along e_s
// (constant p). Everything here is exact in Q(phi).
GVec2 plane_to_eigen(const GVec2& xy);
GVec2 eigen_to_plane(const GVec2& pq);
GVec2 eigen_lattice_g1(); // eigen coords of (1,0)
GVec2 eigen_lattice_g2(); // eigen coords of (0,1)

struct GoldenInterval {
    Golden lo, hi;
    Golden width() const { return hi - lo; }
};

// Rectangle given by its corners in plane coordinates. c00-c10 and c01-c11 are
// the stretching sides, c00-c01 and c10-c11 the contracting sides. For
// partitions produced by the constructor the corners come from a product box
// in eigen coordinates (kept for exact transition counting).
struct MarkovRectangle {
    GVec2 c00, c10, c11, c01;
    GoldenInterval p, q; // eigen product box (valid when axis-aligned)
    bool aligned = true;
    int sheet = -1; // -1 on the base torus; else sheet label of the center
    GVec2 center_plane() const;
};

struct MarkovPartition {
    std::vector<MarkovRectangle> rects;
    std::vector<std::vector<long>> transition; // T[i][j] = #components of P(int Ri) n int Rj
    bool on_cover = false;
    std::shared_ptr<const SlitCover> cover; // set when on_cover
};

// Markov partition of the torus for a hyperbolic matrix in the golden
// eigenframe (powers of [[2,1],[1,1]]): spine segments of the stable/unstable
// manifolds of the fixed point whose free ends close up on each other.
MarkovPartition markov_adler_weiss(const LinearTorusMap& m);

// split every rectangle whose interior contains a branch point into four at
// that point (the cuts extend the stable/unstable segments through the branch
// orbit, so the Markov conditions survive)
MarkovPartition refine_at_interior_points(const MarkovPartition& part, const LinearTorusMap& m,
                                          const std::vector<GVec2>& pts_eigen);

// Lift to the double cover: two rectangles per base rectangle, distinguished
// by the sheet label of the center. Branch points interior to a rectangle
// either trigger refinement (auto_refine) or BranchInteriorToRectangle.
MarkovPartition lift_partition(const MarkovPartition& base, std::shared_ptr<const SlitCover> cover,
                               const CoverMap& p, bool auto_refine = true);

struct ValidationReport {
    bool covers = false;
    bool disjoint_interiors = false;
    bool stable_boundary = false;   // P(d^s) inside d^s
    bool unstable_boundary = false; // P(d^u) contains d^u
    double worst_stable_dev = 0.0;
    double worst_unstable_dev = 0.0;
    long multi_hits = 0, misses = 0;
    bool pass() const { return covers && disjoint_interiors && stable_boundary && unstable_boundary; }
};

ValidationReport markov_validate(const MarkovPartition& part, const CoverMap& p, Rng& rng,
                                 int mc_samples = 1200, int side_samples = 5, double tol = 1e-9);

double perron_from_transition(const std::vector<std::vector<long>>& t);

// spectral radius consistency: sum_j T_ij * width_j == lambda * width_i, exact
void assert_transition_row_identity(const MarkovPartition& part, const Golden& lambda);

} // namespace flatdyn
