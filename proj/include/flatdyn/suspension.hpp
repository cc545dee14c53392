#pragma once

#include <memory>
#include <vector>

#include "flatdyn/circle.hpp"
#include "flatdyn/cover.hpp"

namespace flatdyn {

// Mapping torus of J: quotient of surface x R by gamma(z,r) = (J(z), r-1).
struct MappingTorus {
    std::shared_ptr<const SlitCover> cover;
    CoverMap j;

    MappingTorus(std::shared_ptr<const SlitCover> c, CoverMap jj) : cover(std::move(c)), j(std::move(jj)) {}
};

struct FiberPoint {
    SurfacePoint z;
    double r = 0.0;
};

struct QuotientPoint {
    SurfacePoint z;
    double r = 0.0; // in [0,1)
};

// gamma-normalization: (z,r) -> (J^floor(r)(z), r - floor(r))
QuotientPoint normalize(const MappingTorus& t, const FiberPoint& p);

// equality in the quotient with seam handling at r = 0/1
bool quotient_equal(const MappingTorus& t, const QuotientPoint& a, const QuotientPoint& b,
                    double tol = 1e-9);

// The suspension model: fiberwise P with the circle family on the base.
// Construction validates that P and J commute and that J^l P^k is hyperbolic.
class ModelMap {
  public:
    ModelMap(MappingTorus torus, CoverMap p, CorrectTriple triple, Rng& rng, bool verify = true);

    const MappingTorus& torus() const { return torus_; }
    const CoverMap& p() const { return p_; }
    const CorrectTriple& triple() const { return triple_; }

    QuotientPoint apply(const QuotientPoint& w) const;

  private:
    MappingTorus torus_;
    CoverMap p_;
    CorrectTriple triple_;
};

CirclePoint h_projection(const QuotientPoint& w);

struct NWComponent {
    int index = 0;        // i in {0,...,2nk-1}
    Rat fiber_level;      // i/(2nk)
    bool attractor = false; // odd index
    long period = 0;      // k
};

std::vector<NWComponent> nw_components(const ModelMap& m);

// the symbolic return map J^l P^k on a component
CoverMap component_return_map(const ModelMap& m, int index);

struct TrappingReport {
    int index = 0;
    bool attractor = false;
    bool contained = false;    // strict containment in the right direction
    double margin_lo = 0.0, margin_hi = 0.0;
    std::vector<double> lengths; // interval lengths over 50 period-iterates
    double final_length = 0.0;
};

TrappingReport trapping_check(const ModelMap& m, int index);

int winding_number(const MappingTorus& t, const std::vector<QuotientPoint>& loop);

// canonical generator loop: constant surface point (a fixed point of J),
// fiber coordinate stepping 0 -> 1, closed through the gamma identification
std::vector<QuotientPoint> canonical_vertical_loop(const MappingTorus& t, int steps);

bool nw_factor_property(const ModelMap& m, const std::vector<NWComponent>& comps, int samples, Rng& rng,
                        double tol = 1e-12);

// Theorem-2 style verification data
struct ModelChecks {
    double semiconjugacy_residual = 0.0;   // max |h(phi(w)) - phi_circle(h(w))|
    bool component_invariance = false;     // period-k return, no earlier return
    double return_map_residual = 0.0;      // max distance of k-fold apply vs J^l P^k
    bool return_map_pa = false;            // classified pseudo-Anosov
    double return_map_dilatation = 0.0;
    bool trapping_ok = false;
    double worst_final_length = 0.0;
    bool nw_factor = false;
    bool pass(double tol_semi, double tol_geom) const {
        return semiconjugacy_residual < tol_semi && component_invariance &&
               return_map_residual < tol_geom && return_map_pa && trapping_ok && nw_factor;
    }
};

ModelChecks run_model_checks(const ModelMap& m, int semi_samples, int return_samples, Rng& rng);

} // namespace flatdyn
