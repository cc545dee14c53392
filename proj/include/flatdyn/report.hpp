#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatdyn/circle.hpp"
#include "flatdyn/cover.hpp"
#include "flatdyn/markov.hpp"
#include "flatdyn/suspension.hpp"

namespace flatdyn {

inline constexpr const char* kToolVersion = "0.1.0";

struct Tolerances {
    double geom = 1e-9;
    double semiconj = 1e-12;
    double rotation = 1e-6;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct Report {
    std::string kind;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    Tolerances tol;
    std::vector<CheckResult> checks;
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();

    bool pass() const;
    CheckResult& add(const std::string& name, bool ok, double measured = 0.0, double threshold = 0.0,
                     const std::string& detail = "");
    nlohmann::ordered_json to_json() const;
};

// verification suites; the acceptance tests and the CLI share these
Report circle_report(const CorrectTriple& t, long iters, int samples, std::uint64_t seed,
                     const Tolerances& tol);
Report surface_report(std::uint64_t seed, const Tolerances& tol);
Report pa_report(std::uint64_t seed, const Tolerances& tol);
Report centralizer_report(std::uint64_t seed, const Tolerances& tol);
Report model_report(const CorrectTriple& t, std::uint64_t seed, const Tolerances& tol, int semi_samples,
                    int return_samples, const std::string& j_spec = "deck");

// J from its scene spec: "deck", "P-power-m", or "deck*P-power-m"
CoverMap make_j(const std::string& spec, const CoverMap& p);

} // namespace flatdyn
