#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "flatdyn/geom.hpp"
#include "flatdyn/golden.hpp"
#include "flatdyn/numeric.hpp"

namespace flatdyn {

// Simple positively oriented polygon with exact rational vertices.
struct PlanarPolygon {
    std::vector<RVec2> v;
    int size() const { return static_cast<int>(v.size()); }
    // directed edge e: v[e] -> v[e+1]
    RVec2 edge_vec(int e) const { return v[(e + 1) % v.size()] - v[e]; }
};

struct EdgeRef {
    int poly = -1, edge = -1;
    bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
    bool operator<(const EdgeRef& o) const { return poly != o.poly ? poly < o.poly : edge < o.edge; }
};

struct ConePoint {
    int vertex_class = -1;
    double angle = 0.0;       // total cone angle
    int separatrix_count = 0; // angle/pi when that is an integer, else 0
    std::vector<std::pair<int, int>> corners; // (poly, vertex) members
};

struct SurfacePoint {
    int poly = -1;
    RVec2 xy;
    bool operator==(const SurfacePoint& o) const { return poly == o.poly && xy == o.xy; }
};

struct ArcSegment {
    int poly = -1;
    RVec2 a, b;
};

struct StraightArc {
    std::vector<ArcSegment> segments;
    double length() const;
};

// Leaves are the lines eta . x = const in every chart; exact covector so the
// eigenfoliations of the cat map are representable without rounding.
struct DirectionalFoliation {
    GVec2 covector;
};

// Compact translation surface: polygons glued edge-to-edge by translations.
class TranslationSurface {
  public:
    static TranslationSurface build(std::vector<PlanarPolygon> polys,
                                    std::vector<std::pair<EdgeRef, EdgeRef>> gluings);

    int genus() const { return genus_; }
    int euler_characteristic() const { return chi_; }
    const std::vector<PlanarPolygon>& polygons() const { return polys_; }
    const std::vector<ConePoint>& cone_points() const { return cones_; }
    EdgeRef partner(EdgeRef e) const { return partner_[e.poly][e.edge]; }
    int vertex_class(int poly, int vtx) const { return vclass_[poly][vtx]; }
    double class_angle(int cls) const { return class_angle_[cls]; }
    int num_vertex_classes() const { return static_cast<int>(class_angle_.size()); }
    const Rat& total_area() const { return area_; }
    bool is_cone_class(int cls) const;

    // canonical representative: interior point unchanged, edge point mapped to
    // the lower (poly,edge) side, vertex mapped to the lowest corner of its class
    SurfacePoint normalize_point(int poly, const RVec2& xy) const;
    SurfacePoint normalize_point(const SurfacePoint& p) const { return normalize_point(p.poly, p.xy); }

    // polygon containing the point (ties broken by lowest id); exact
    int locate(const RVec2& xy) const;

    // cross the glued edge: translate a point on edge e to the partner chart
    RVec2 transport(EdgeRef e, const RVec2& xy) const;

  private:
    std::vector<PlanarPolygon> polys_;
    std::vector<std::vector<EdgeRef>> partner_;
    std::vector<std::vector<int>> vclass_;
    std::vector<double> class_angle_;
    std::vector<ConePoint> cones_;
    int genus_ = 0, chi_ = 0;
    Rat area_ = 0;
};

// Geodesic segment of the flat metric. Traced by rational parameter:
// x(t) = start + t*dir, t in [0, t_max]; flat length is t_max*|dir|.
StraightArc trace_arc(const TranslationSurface& s, const SurfacePoint& start, const RVec2& dir,
                      const Rat& t_max);
// length-based wrapper (t_max = length/|dir| rounded to a dyadic rational)
StraightArc trace_arc_length(const TranslationSurface& s, const SurfacePoint& start, const RVec2& dir,
                             double length);

SurfacePoint arc_endpoint(const TranslationSurface& s, const StraightArc& a);

// integral of |eta . dx| along the arc; exact inside Q(phi)
Golden transversal_measure_exact(const TranslationSurface& s, const DirectionalFoliation& f,
                                 const StraightArc& a);
double transversal_measure(const TranslationSurface& s, const DirectionalFoliation& f,
                           const StraightArc& a);

// SVG rendering of the leaf field; density = leaves per unit of transverse measure
std::string render_foliation(const TranslationSurface& s, const DirectionalFoliation& f, int density);

} // namespace flatdyn
