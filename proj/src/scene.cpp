#include "flatdyn/scene.hpp"

#include <cmath>
#include <fstream>

namespace flatdyn {

namespace {

Rat json_rat(const nlohmann::json& v) {
    if (v.is_string()) {
        auto r = parse_rat(v.get<std::string>());
        if (!r) fail(Errc::ParseError, "bad rational: " + v.get<std::string>());
        return *r;
    }
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_number_float()) {
        auto r = parse_rat(std::to_string(v.get<double>()));
        if (!r) fail(Errc::ParseError, "bad numeric literal");
        return *r;
    }
    fail(Errc::SchemaMismatch, "expected a number or \"a/b\" string");
}

} // namespace

Scene parse_scene(const nlohmann::json& j) {
    if (!j.is_object()) fail(Errc::SchemaMismatch, "scene must be a JSON object");
    Scene s;
    if (j.contains("kind")) s.kind = j.at("kind").get<std::string>();
    static const std::vector<std::string> kinds{"circle", "surface", "pa", "centralizer", "model", "all"};
    if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end())
        fail(Errc::SchemaMismatch, "unknown scene kind: " + s.kind);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 0)
            fail(Errc::SchemaMismatch, "seed must be a nonnegative integer");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("triple")) {
        const auto& t = j.at("triple");
        if (!t.is_array() || t.size() != 3) fail(Errc::SchemaMismatch, "triple must be [n,k,l]");
        s.triple = make_correct_triple(t[0].get<long>(), t[1].get<long>(), t[2].get<long>());
    }
    if (j.contains("iters")) s.iters = j.at("iters").get<long>();
    if (j.contains("samples")) s.samples = j.at("samples").get<int>();
    if (j.contains("semi_samples")) s.semi_samples = j.at("semi_samples").get<int>();
    if (j.contains("return_samples")) s.return_samples = j.at("return_samples").get<int>();
    if (j.contains("J")) s.j_spec = j.at("J").get<std::string>();
    if (j.contains("matrix")) {
        const auto& m = j.at("matrix");
        if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
            fail(Errc::SchemaMismatch, "matrix must be 2x2");
        s.matrix = {m[0][0].get<long>(), m[0][1].get<long>(), m[1][0].get<long>(), m[1][1].get<long>()};
    }
    if (j.contains("cover")) s.cover_kind = j.at("cover").get<std::string>();
    if (j.contains("branch")) {
        for (const auto& b : j.at("branch")) s.branch.push_back(json_rat(b));
        if (s.branch.size() != 4) fail(Errc::SchemaMismatch, "branch needs 4 rational entries");
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (t.contains("geom")) s.tol.geom = t.at("geom").get<double>();
        if (t.contains("semiconj")) s.tol.semiconj = t.at("semiconj").get<double>();
        if (t.contains("rotation")) s.tol.rotation = t.at("rotation").get<double>();
    }
    if (j.contains("polygons")) {
        std::vector<PlanarPolygon> polys;
        for (const auto& pj : j.at("polygons")) {
            PlanarPolygon poly;
            for (const auto& vj : pj) {
                if (!vj.is_array() || vj.size() != 2) fail(Errc::SchemaMismatch, "vertex must be [x,y]");
                poly.v.push_back({json_rat(vj[0]), json_rat(vj[1])});
            }
            polys.push_back(std::move(poly));
        }
        s.polygons = std::move(polys);
        if (!j.contains("gluings")) fail(Errc::SchemaMismatch, "polygons given without gluings");
        std::vector<std::pair<EdgeRef, EdgeRef>> glue;
        for (const auto& gj : j.at("gluings")) {
            if (!gj.is_array() || gj.size() != 4) fail(Errc::SchemaMismatch, "gluing must be [p,e,p2,e2]");
            glue.push_back({EdgeRef{gj[0].get<int>(), gj[1].get<int>()},
                            EdgeRef{gj[2].get<int>(), gj[3].get<int>()}});
        }
        s.gluings = std::move(glue);
    }
    return s;
}

Scene load_scene_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(Errc::ParseError, "cannot open scene file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::ParseError, std::string("scene JSON: ") + e.what());
    }
    return parse_scene(j);
}

TranslationSurface build_surface_from_scene(const Scene& s) {
    if (!s.polygons || !s.gluings) fail(Errc::SchemaMismatch, "scene carries no surface payload");
    return TranslationSurface::build(*s.polygons, *s.gluings);
}

Report custom_surface_report(const TranslationSurface& s, std::uint64_t seed, const Tolerances& tol) {
    Report rep;
    rep.kind = "surface";
    rep.seed = seed;
    rep.tol = tol;
    rep.params = {{"polygons", s.polygons().size()}, {"genus", s.genus()}};

    rep.add("built", true, 1, 1);
    rep.add("genus-consistent", (2 - s.euler_characteristic()) % 2 == 0, s.genus(),
            static_cast<double>(s.genus()));
    double gb = 0;
    for (const auto& c : s.cone_points()) gb += c.angle - 2.0 * M_PI;
    gb += 2.0 * M_PI * s.euler_characteristic();
    rep.add("gauss-bonnet", std::fabs(gb) < tol.geom, std::fabs(gb), tol.geom);

    auto cones = nlohmann::ordered_json::array();
    for (const auto& c : s.cone_points())
        cones.push_back({{"class", c.vertex_class}, {"angle", c.angle}, {"separatrices", c.separatrix_count}});
    rep.tables["cone_points"] = cones;
    return rep;
}

std::vector<Report> run_scene(const Scene& s) {
    std::vector<Report> out;
    auto run_one = [&](const std::string& kind) {
        if (kind == "circle") {
            out.push_back(circle_report(s.triple, s.iters, s.samples, s.seed, s.tol));
        } else if (kind == "surface") {
            if (s.polygons) {
                TranslationSurface surf = build_surface_from_scene(s);
                out.push_back(custom_surface_report(surf, s.seed, s.tol));
            } else {
                out.push_back(surface_report(s.seed, s.tol));
            }
        } else if (kind == "pa") {
            out.push_back(pa_report(s.seed, s.tol));
        } else if (kind == "centralizer") {
            out.push_back(centralizer_report(s.seed, s.tol));
        } else if (kind == "model") {
            out.push_back(model_report(s.triple, s.seed, s.tol, s.semi_samples, s.return_samples, s.j_spec));
        }
    };
    if (s.kind == "all") {
        for (const char* k : {"circle", "surface", "pa", "centralizer", "model"}) run_one(k);
    } else {
        run_one(s.kind);
    }
    return out;
}

} // namespace flatdyn
