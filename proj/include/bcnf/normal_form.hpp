#pragma once

#include <utility>

#include "bcnf/map.hpp"
#include "bcnf/poly.hpp"
#include "bcnf/region.hpp"

namespace bcnf {

enum class CaseTag { Trivial, SaddleNode, PeriodDoubling };

const char* to_string(CaseTag c);

struct NormalFormParams {
    double nu = 0.0;
    double s_L = 0.0;
    double s_R = 0.0;
    double t = 0.0;
    double mu = 0.0;
    CaseTag case_tag = CaseTag::Trivial;
};

// g(y) = nu + s_L y + t y^2 (y <= 0), nu + s_R y (y >= 0).
class NormalFormMap {
public:
    NormalFormMap() = default;
    explicit NormalFormMap(const NormalFormParams& params) : p_(params) {}

    const NormalFormParams& params() const { return p_; }
    Poly1 left() const { return Poly1({p_.nu, p_.s_L, p_.t}); }
    Poly1 right() const { return Poly1({p_.nu, p_.s_R}); }
    double operator()(double y) const;
    double derivative(double y, Side side) const;

private:
    NormalFormParams p_;
};

// Slopes copying the multiplier of the fixed point on `matched` and the
// derivative ratio of f at 0.
std::pair<double, double> match_slopes_on(const PiecewiseMap& map, double mu, Side matched);
// Right branch for mu >= 0, left branch for mu < 0.
std::pair<double, double> match_slopes(const BifurcationData& data, const PiecewiseMap& map,
                                       double mu);

double t_saddle_node_limit(const BifurcationData& d);
double t_period_doubling_limit(const BifurcationData& d);

double match_t_saddle_node(const BifurcationData& data, const PiecewiseMap& map, double mu);
double match_t_period_doubling(const BifurcationData& data, const PiecewiseMap& map, double mu);

// Fixed point of y -> nu + s y + t y^2 on the branch through 0 as nu -> 0.
double quadratic_fixed_point(double nu, double s, double t);

NormalFormMap build_normal_form(const BifurcationData& data, const PiecewiseMap& map, double mu,
                                const RegionClass& region);

}  // namespace bcnf
