#pragma once

#include <array>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "flatdyn/rng.hpp"
#include "flatdyn/surface.hpp"

namespace flatdyn {

// 2x2 integer matrix with |det| = 1 acting on the torus [0,1)^2.
struct LinearTorusMap {
    IMat2 m;
    bool hyperbolic() const { return std::llabs(m.trace()) > 2; }
};

LinearTorusMap cat_map();                       // [[2,1],[1,1]]
LinearTorusMap make_linear_torus_map(IMat2 m);  // validates |det| = 1

// Perron eigenvalue of a hyperbolic det-1 matrix
double perron_eigenvalue(const IMat2& m);

// all x with M^n x = x (mod Z^2); count equals |det(M^n - I)|
std::vector<RVec2> periodic_points_torus(const LinearTorusMap& m, int period);

// Branched double cover of the torus branched over two points, realized by
// cutting the square along straight slit segments and cross-gluing two sheets.
class SlitCover {
  public:
    // the standard carrier: branch points on the cat map's period-2 orbit,
    // slit along the straight arc from (1/5,2/5) with displacement (8/5,6/5)
    // (the representative for which affine lifts of the cat map exist)
    static std::shared_ptr<const SlitCover> standard();
    // slit along the plain chord between the branch points; the cat map has no
    // lift here (the crossing-parity consistency check fails)
    static std::shared_ptr<const SlitCover> short_slit(const RVec2& b1, const RVec2& b2);

    const TranslationSurface& surface() const { return *surf_; }
    const std::vector<std::pair<RVec2, RVec2>>& walls() const { return walls_; }
    const std::array<RVec2, 2>& branch_points() const { return branch_; }
    const RVec2& marked_point() const { return marked_; }

    int sheets() const { return 2; }
    int torus_polygons() const { return n_torus_polys_; }
    int sheet_of(int poly) const { return poly / n_torus_polys_; }
    int torus_poly_of(int poly) const { return poly % n_torus_polys_; }
    int cover_poly(int torus_poly, int sheet) const { return sheet * n_torus_polys_ + torus_poly; }

    // torus polygon containing a point of [0,1]^2 (lowest id on boundaries)
    int locate_torus(const RVec2& xy) const;

    // parity of slit crossings along the straight path a->b; nullopt when the
    // path is degenerate against the wall system
    template <class V>
    std::optional<int> wall_parity(const V& a, const V& b) const {
        auto r = wall_crossings(a, b, walls_);
        if (r.degenerate) return std::nullopt;
        return r.crossings & 1;
    }

    SurfacePoint make_point(int torus_poly, int sheet, const RVec2& xy) const;
    SurfacePoint canonical_branch_point(int which) const;

    bool is_branch(const RVec2& torus_xy) const;

    // distance in the flat metric of the cover; points on different local
    // sheets are reported as far apart (1.0)
    double distance(const SurfacePoint& a, const SurfacePoint& b) const;

    // random interior point avoiding branch-point neighborhoods
    SurfacePoint sample_point(Rng& rng, double branch_clearance = 1e-6) const;

  private:
    SlitCover() = default;
    std::shared_ptr<const TranslationSurface> surf_;
    std::vector<std::pair<RVec2, RVec2>> walls_;
    std::array<RVec2, 2> branch_;
    RVec2 marked_;
    int n_torus_polys_ = 0;
    friend SlitCover build_cover_struct(std::vector<PlanarPolygon>, std::vector<std::pair<EdgeRef, EdgeRef>>,
                                        std::vector<std::pair<RVec2, RVec2>>, std::array<RVec2, 2>, RVec2);
};

// image of a cover point expressed in eigen-field coordinates (used by the
// Markov layer, which works with exact Q(phi) points)
struct GoldenCoverPoint {
    GVec2 xy;  // in [0,1)^2
    int sheet = 0;
};

// A homeomorphism of the cover given as a chain of elementary pieces: affine
// lifts of torus maps (sheet rule by slit-crossing parity) and the deck
// involution. All such maps are affine over the flat structure.
class CoverMap {
  public:
    struct Lift {
        AffineTorusMap base;
        int flip0 = 0; // sheet of the marked point's image
        // cached wall system W u base^{-1}(W) for the sheet rule
        std::vector<std::pair<RVec2, RVec2>> rule_walls;
    };
    struct Deck {};
    using Atom = std::variant<Lift, Deck>;

    static CoverMap identity(std::shared_ptr<const SlitCover> c);
    static CoverMap deck(std::shared_ptr<const SlitCover> c);

    const SlitCover& cover() const { return *cover_; }
    std::shared_ptr<const SlitCover> cover_ptr() const { return cover_; }

    SurfacePoint apply(const SurfacePoint& p) const;
    SurfacePoint operator()(const SurfacePoint& p) const { return apply(p); }
    GoldenCoverPoint apply(const GoldenCoverPoint& p) const;

    // this-after-inner composition
    CoverMap compose(const CoverMap& inner) const;
    CoverMap inverse() const;
    CoverMap power(int k) const; // negative powers via inverse

    AffineTorusMap base() const; // product of the chain's affine parts
    bool base_is_identity() const;

    const std::vector<Atom>& chain() const { return chain_; }

  private:
    CoverMap() = default;
    std::shared_ptr<const SlitCover> cover_;
    std::vector<Atom> chain_; // applied chain_[0] first

    friend CoverMap build_cover_map(const AffineTorusMap&, std::shared_ptr<const SlitCover>, int, bool);
};

// Lift of an affine torus map to the cover. Verifies branch-set invariance and
// the crossing-parity consistency of the sheet rule, plus sampled continuity
// and deck-commutation. flip_marked selects between the two lifts (they differ
// by the deck involution).
CoverMap build_cover_map(const AffineTorusMap& base, std::shared_ptr<const SlitCover> cover,
                         int flip_marked = 0, bool verify = true);

inline CoverMap build_cover_map(const LinearTorusMap& base, std::shared_ptr<const SlitCover> cover,
                                int flip_marked = 0, bool verify = true) {
    return build_cover_map(AffineTorusMap{base.m, RVec2()}, std::move(cover), flip_marked, verify);
}

CoverMap deck_involution(std::shared_ptr<const SlitCover> cover);

bool commutes(const CoverMap& q, const CoverMap& p, int samples, Rng& rng, double tol = 1e-9);

// Invariant stable/unstable foliation pair of an affine pseudo-Anosov; the
// covectors are the transposed eigenvectors, exact in Q(phi).
struct MeasuredFoliationPair {
    DirectionalFoliation stable;   // measure scales by lambda under the map
    DirectionalFoliation unstable; // scales by 1/lambda
    double dilatation = 0.0;
};

// eigenfoliations of the golden (cat-map) frame
MeasuredFoliationPair golden_foliations();

struct MeasureScaling {
    double nu_s = 0, nu_u = 0;       // mean ratios
    double dev_s = 0, dev_u = 0;     // max deviation over the arcs
};

MeasureScaling measure_scaling(const CoverMap& q, const MeasuredFoliationPair& fol,
                               const std::vector<StraightArc>& arcs);

// straight one-segment arcs in random polygons, transverse to both foliations
std::vector<StraightArc> random_arcs(const SlitCover& cover, int count, Rng& rng);

struct CentralizerVerdict {
    enum class Kind { Periodic, PseudoAnosov } kind = Kind::Periodic;
    long order = 0;          // Periodic
    double dilatation = 0.0; // PseudoAnosov
    double nu = 1.0;         // stable-measure scaling factor
};

CentralizerVerdict classify_centralizer_element(const CoverMap& q, const CoverMap& p, Rng& rng,
                                                int arc_count = 64, int commute_samples = 128,
                                                int order_bound = 64, double tol = 1e-9);

double dilatation(const CoverMap& p);

} // namespace flatdyn
