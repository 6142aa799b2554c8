#include "bcnf/region.hpp"

#include <cmath>

namespace bcnf {

const char* to_string(RegionKind k) {
    switch (k) {
        case RegionKind::Trivial: return "Trivial";
        case RegionKind::SaddleNodeLike: return "SaddleNodeLike";
        case RegionKind::PeriodDoublingLike: return "PeriodDoublingLike";
        case RegionKind::OutOfScope: return "OutOfScope";
    }
    return "?";
}

const char* to_string(Reduction r) {
    switch (r) {
        case Reduction::Identity: return "Identity";
        case Reduction::FlipX: return "FlipX";
        case Reduction::InverseMap: return "InverseMap";
        case Reduction::FlipXAndInverse: return "FlipXAndInverse";
    }
    return "?";
}

const char* to_string(TheoremTag t) {
    switch (t) {
        case TheoremTag::Persistence: return "persistence";
        case TheoremTag::SaddleNode: return "saddle_node";
        case TheoremTag::PeriodDoubling: return "period_doubling";
        case TheoremTag::None: return "none";
    }
    return "?";
}

bool is_trivial(double a_L, double a_R) {
    return (a_L - 1.0) * (a_R - 1.0) > 0.0 && (a_L + 1.0) * (a_R + 1.0) > 0.0 && a_L != 0.0 &&
           a_R != 0.0;
}

bool is_saddle_node(double a_L, double a_R) {
    return a_L > 1.0 && std::fabs(a_R) < 1.0 && a_R != 0.0;
}

bool is_period_doubling(double a_L, double a_R) {
    return a_R < -1.0 && 1.0 / a_R < a_L && a_L < 0.0;
}

RegionClass classify(double a_L, double a_R) {
    RegionClass rc;
    if (!std::isfinite(a_L) || !std::isfinite(a_R)) return rc;
    bool third_quadrant = a_L < 0.0 && a_R < 0.0 && a_L * a_R >= 1.0;
    if (third_quadrant)
        rc.warning = "third-quadrant slopes with a_L*a_R >= 1: the map is not conjugate to a "
                     "normal form of the same slopes in general";

    if (is_trivial(a_L, a_R)) {
        rc.kind = RegionKind::Trivial;
        rc.theorem = TheoremTag::Persistence;
        return rc;
    }
    if (is_saddle_node(a_L, a_R) || is_saddle_node(a_R, a_L)) {
        rc.kind = RegionKind::SaddleNodeLike;
        rc.theorem = TheoremTag::SaddleNode;
        rc.reduction = is_saddle_node(a_L, a_R) ? Reduction::Identity : Reduction::FlipX;
        return rc;
    }
    rc.kind = RegionKind::PeriodDoublingLike;
    rc.theorem = TheoremTag::PeriodDoubling;
    if (is_period_doubling(a_L, a_R)) return rc;
    if (is_period_doubling(a_R, a_L)) {
        rc.reduction = Reduction::FlipX;
        return rc;
    }
    if (a_L != 0.0 && a_R != 0.0) {
        if (is_period_doubling(1.0 / a_L, 1.0 / a_R)) {
            rc.reduction = Reduction::InverseMap;
            return rc;
        }
        if (is_period_doubling(1.0 / a_R, 1.0 / a_L)) {
            rc.reduction = Reduction::FlipXAndInverse;
            return rc;
        }
    }
    rc.kind = RegionKind::OutOfScope;
    rc.theorem = TheoremTag::None;
    rc.reduction = Reduction::Identity;
    return rc;
}

}  // namespace bcnf
