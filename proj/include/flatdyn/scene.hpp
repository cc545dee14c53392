#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatdyn/report.hpp"
#include "flatdyn/surface.hpp"

namespace flatdyn {

// Scene file: one verification job. Rational numbers may be written "a/b".
struct Scene {
    std::string kind = "all"; // circle | surface | pa | centralizer | model | all
    std::uint64_t seed = 0;
    Tolerances tol;
    CorrectTriple triple{1, 1, 0};
    long iters = 1000000;
    int samples = 1000;
    int semi_samples = 2000;
    int return_samples = 400;
    std::string j_spec = "deck";
    IMat2 matrix{2, 1, 1, 1};
    std::string cover_kind = "standard"; // standard | short-slit
    std::vector<Rat> branch;             // 4 entries (b1x b1y b2x b2y) for short-slit
    // optional explicit surface payload for surface scenes
    std::optional<std::vector<PlanarPolygon>> polygons;
    std::optional<std::vector<std::pair<EdgeRef, EdgeRef>>> gluings;
};

Scene parse_scene(const nlohmann::json& j);
Scene load_scene_file(const std::string& path);

TranslationSurface build_surface_from_scene(const Scene& s);

// checks applicable to any user surface
Report custom_surface_report(const TranslationSurface& s, std::uint64_t seed, const Tolerances& tol);

// dispatch; "all" produces one report per kind
std::vector<Report> run_scene(const Scene& s);

} // namespace flatdyn
