#pragma once

#include <stdexcept>
#include <string>

namespace flatdyn {

enum class Errc {
    NonPositive,
    BadResidue,
    NotCoprime,
    UnmatchedEdge,
    NonTranslationGluing,
    Disconnected,
    OutsidePolygon,
    HitConePoint,
    ArcTangentToLeaves,
    NotAffineImage,
    BranchSetNotInvariant,
    NoContinuousSheetRule,
    DoesNotCommute,
    OrderSearchExceeded,
    NotHyperbolic,
    NonHyperbolicPeriod,
    BranchInteriorToRectangle,
    LoopNotClosed,
    AmbiguousLift,
    ParseError,
    SchemaMismatch,
    Unsupported,
    Internal,
};

const char* errc_name(Errc c);

struct Error : std::runtime_error {
    Errc code;
    // extra payload for errors that carry a measurement (e.g. arc length at a
    // cone-point hit, or the offending rectangle index)
    double value = 0.0;

    Error(Errc c, const std::string& what_arg, double v = 0.0)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what_arg), code(c), value(v) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg, double v = 0.0) {
    throw Error(c, msg, v);
}

} // namespace flatdyn
