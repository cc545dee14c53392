#include "flatdyn/numeric.hpp"

#include <cctype>

namespace flatdyn {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPositive: return "NonPositive";
        case Errc::BadResidue: return "BadResidue";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::UnmatchedEdge: return "UnmatchedEdge";
        case Errc::NonTranslationGluing: return "NonTranslationGluing";
        case Errc::Disconnected: return "Disconnected";
        case Errc::OutsidePolygon: return "OutsidePolygon";
        case Errc::HitConePoint: return "HitConePoint";
        case Errc::ArcTangentToLeaves: return "ArcTangentToLeaves";
        case Errc::NotAffineImage: return "NotAffineImage";
        case Errc::BranchSetNotInvariant: return "BranchSetNotInvariant";
        case Errc::NoContinuousSheetRule: return "NoContinuousSheetRule";
        case Errc::DoesNotCommute: return "DoesNotCommute";
        case Errc::OrderSearchExceeded: return "OrderSearchExceeded";
        case Errc::NotHyperbolic: return "NotHyperbolic";
        case Errc::NonHyperbolicPeriod: return "NonHyperbolicPeriod";
        case Errc::BranchInteriorToRectangle: return "BranchInteriorToRectangle";
        case Errc::LoopNotClosed: return "LoopNotClosed";
        case Errc::AmbiguousLift: return "AmbiguousLift";
        case Errc::ParseError: return "ParseError";
        case Errc::SchemaMismatch: return "SchemaMismatch";
        case Errc::Unsupported: return "Unsupported";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            mpz_class num(s.substr(0, slash));
            mpz_class den(s.substr(slash + 1));
            if (den == 0) return std::nullopt;
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            size_t frac_len = s.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
            mpz_class num(digits);
            mpz_class den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        return Rat(mpz_class(s));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

} // namespace flatdyn
