#pragma once

#include "bcnf/map.hpp"
#include "bcnf/poly.hpp"

namespace bcnf {

struct NormalFormParams;

struct FixedPointRecord {
    double location = 0.0;
    Side side = Side::Left;
    double multiplier = 0.0;
    bool admissible = false;
    double residual = 0.0;
};

struct PeriodTwoRecord {
    double u_L = 0.0;
    double u_R = 0.0;
    double multiplier = 0.0;
    double residual = 0.0;
};

FixedPointRecord find_fixed_point(const PiecewiseMap& map, double mu, Side side);
PeriodTwoRecord find_period_two(const PiecewiseMap& map, double mu);
double multiplier_of_normal_form_cycle(const NormalFormParams& params);

// Building blocks shared with the normal form side.
// Fixed point of a single polynomial near `seed`; nullopt-free: throws NoConvergence.
double polish_fixed_point(const Poly1& piece, double seed);
// 2-cycle u_L -> u_R -> u_L of (left, right) from the given seeds.
PeriodTwoRecord polish_period_two(const Poly1& left, const Poly1& right, double seed_L,
                                  double seed_R);

}  // namespace bcnf
