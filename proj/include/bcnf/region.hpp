#pragma once

#include <string>

namespace bcnf {

enum class RegionKind { Trivial, SaddleNodeLike, PeriodDoublingLike, OutOfScope };
enum class Reduction { Identity, FlipX, InverseMap, FlipXAndInverse };
// Which normal-form family applies.
enum class TheoremTag { Persistence, SaddleNode, PeriodDoubling, None };

struct RegionClass {
    RegionKind kind = RegionKind::OutOfScope;
    Reduction reduction = Reduction::Identity;
    TheoremTag theorem = TheoremTag::None;
    std::string warning;  // empty when there is nothing to flag
};

const char* to_string(RegionKind k);
const char* to_string(Reduction r);
const char* to_string(TheoremTag t);

// Open-set predicates in (a_L, a_R); the boundaries are excluded.
bool is_trivial(double a_L, double a_R);
bool is_saddle_node(double a_L, double a_R);
bool is_period_doubling(double a_L, double a_R);

RegionClass classify(double a_L, double a_R);

}  // namespace bcnf
