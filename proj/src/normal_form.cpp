#include "bcnf/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "bcnf/error.hpp"
#include "bcnf/invariant_sets.hpp"

namespace bcnf {

const char* to_string(CaseTag c) {
    switch (c) {
        case CaseTag::Trivial: return "Trivial";
        case CaseTag::SaddleNode: return "SaddleNode";
        case CaseTag::PeriodDoubling: return "PeriodDoubling";
    }
    return "?";
}

double NormalFormMap::operator()(double y) const {
    return y > 0.0 ? p_.nu + p_.s_R * y : p_.nu + (p_.s_L + p_.t * y) * y;
}

double NormalFormMap::derivative(double y, Side side) const {
    if (side == Side::Auto) {
        if (y == 0.0) fail(ErrorKind::AmbiguousSide, "derivative at the switching manifold needs a side");
        side = y < 0.0 ? Side::Left : Side::Right;
    }
    return side == Side::Left ? p_.s_L + 2.0 * p_.t * y : p_.s_R;
}

namespace {

std::pair<double, double> border_slopes(const PiecewiseMap& map, double mu) {
    double dL = map.left.dx(0.0, mu, 1), dR = map.right.dx(0.0, mu, 1);
    if (dL == 0.0 || dR == 0.0)
        fail(ErrorKind::ZeroDerivativeAtSwitch, "piece derivative vanishes at x = 0");
    return {dL, dR};
}

std::pair<double, double> linear_cycle(double nu, double a_L, double a_R) {
    double den = 1.0 - a_L * a_R;
    return {nu * (1.0 + a_R) / den, nu * (1.0 + a_L) / den};
}

// Multiplier of the (possibly virtual) 2-cycle of the pair of pieces.
double cycle_multiplier(const Poly1& L, const Poly1& R, double nu, double sL, double sR) {
    auto [uL, uR] = linear_cycle(nu, sL, sR);
    return polish_period_two(L, R, uL, uR).multiplier;
}

}  // namespace

std::pair<double, double> match_slopes_on(const PiecewiseMap& map, double mu, Side matched) {
    auto [dL, dR] = border_slopes(map, mu);
    if (mu == 0.0) return {dL, dR};
    if (matched == Side::Right) {
        double lam = find_fixed_point(map, mu, Side::Right).multiplier;
        return {dL * lam / dR, lam};
    }
    double lam = find_fixed_point(map, mu, Side::Left).multiplier;
    return {lam, dR * lam / dL};
}

std::pair<double, double> match_slopes(const BifurcationData&, const PiecewiseMap& map, double mu) {
    return match_slopes_on(map, mu, mu >= 0.0 ? Side::Right : Side::Left);
}

double t_saddle_node_limit(const BifurcationData& d) {
    return d.c_L - d.a_L * (1.0 - d.a_L) * d.c_R / (d.a_R * (1.0 - d.a_R));
}

double t_period_doubling_limit(const BifurcationData& d) {
    double aL = d.a_L, aR = d.a_R;
    return d.c_L + aL * (1.0 + aL) * d.c_R / (aR * (1.0 + aR)) -
           2.0 * (1.0 - aL * aR) * aL * d.c_R / (aR * (1.0 + aR) * (1.0 - aR));
}

double quadratic_fixed_point(double nu, double s, double t) {
    double b = s - 1.0;
    if (t == 0.0) {
        if (b == 0.0) fail(ErrorKind::SlopeOne, "normal-form slope equals 1");
        return -nu / b;
    }
    double disc = b * b - 4.0 * t * nu;
    if (!(disc > 0.0)) fail(ErrorKind::DegenerateQuadratic, "no fixed point near 0 for this t");
    return -2.0 * nu / (b + std::copysign(std::sqrt(disc), b));
}

double match_t_saddle_node(const BifurcationData& data, const PiecewiseMap& map, double mu) {
    double t = t_saddle_node_limit(data);
    if (mu == 0.0) return t;
    auto [sL, sR] = match_slopes_on(map, mu, Side::Right);
    (void)sR;
    double lamL = find_fixed_point(map, mu, Side::Left).multiplier;
    double nu = map.left.eval(0.0, mu);
    for (int it = 0; it < newton_max_iter; ++it) {
        double y = quadratic_fixed_point(nu, sL, t);
        double U = sL + 2.0 * t * y - lamL;
        double dy = -y * y / (2.0 * t * y + sL - 1.0);
        double dU = 2.0 * y + 2.0 * t * dy;
        if (U == 0.0) return t;
        if (dU == 0.0) break;
        double step = std::clamp(U / dU, -10.0, 10.0);
        t -= step;
        if (std::fabs(step) <= 1e-14 * (1.0 + std::fabs(t))) return t;
    }
    fail(ErrorKind::NoConvergence, "saddle-node t solve did not converge");
}

double match_t_period_doubling(const BifurcationData& data, const PiecewiseMap& map, double mu) {
    double t = t_period_doubling_limit(data);
    if (mu == 0.0) return t;
    auto [sL, sR] = match_slopes_on(map, mu, Side::Right);
    double nu = map.left.eval(0.0, mu);
    Poly1 fL = map.left.at(mu), fR = map.right.at(mu);
    double xi = cycle_multiplier(fL, fR, nu, data.a_L, data.a_R);
    auto xi_hat = [&](double tt) {
        return cycle_multiplier(Poly1({nu, sL, tt}), Poly1({nu, sR}), nu, sL, sR);
    };
    for (int it = 0; it < newton_max_iter; ++it) {
        double U = xi_hat(t) - xi;
        if (U == 0.0) return t;
        double h = 1e-4 * std::max(1.0, std::fabs(t));
        double dU = (xi_hat(t + h) - xi_hat(t - h)) / (2.0 * h);
        if (dU == 0.0) break;
        double step = std::clamp(U / dU, -10.0, 10.0);
        t -= step;
        if (std::fabs(step) <= 1e-13 * (1.0 + std::fabs(t))) return t;
    }
    fail(ErrorKind::NoConvergence, "period-doubling t solve did not converge");
}

NormalFormMap build_normal_form(const BifurcationData& data, const PiecewiseMap& map, double mu,
                                const RegionClass& region) {
    if (region.kind == RegionKind::OutOfScope)
        fail(ErrorKind::RegionUnsupported, "slopes are outside the covered regions");
    if (region.reduction != Reduction::Identity)
        fail(ErrorKind::RegionUnsupported,
             std::string("normal form is built in the reduced frame; apply the ") +
                 to_string(region.reduction) + " reduction first");
    NormalFormParams p;
    p.mu = mu;
    p.nu = map.left.eval(0.0, mu);
    switch (region.kind) {
        case RegionKind::Trivial: {
            p.case_tag = CaseTag::Trivial;
            bool expanding = data.a_L > 1.0 && data.a_R > 1.0;
            Side matched = (mu >= 0.0) != expanding ? Side::Right : Side::Left;
            std::tie(p.s_L, p.s_R) = match_slopes_on(map, mu, matched);
            break;
        }
        case RegionKind::SaddleNodeLike:
            p.case_tag = CaseTag::SaddleNode;
            std::tie(p.s_L, p.s_R) = match_slopes_on(map, mu, Side::Right);
            p.t = match_t_saddle_node(data, map, mu);
            break;
        case RegionKind::PeriodDoublingLike: {
            p.case_tag = CaseTag::PeriodDoubling;
            std::tie(p.s_L, p.s_R) = match_slopes_on(map, mu, Side::Right);
            p.t = match_t_period_doubling(data, map, mu);
            if (mu < 0.0) {
                // Left fixed point of g must carry lambda_L despite the y^2 term.
                double lamL = find_fixed_point(map, mu, Side::Left).multiplier;
                auto [dL, dR] = border_slopes(map, mu);
                auto resid = [&](double s) {
                    return s + 2.0 * p.t * quadratic_fixed_point(p.nu, s, p.t) - lamL;
                };
                double s = lamL;
                for (int it = 0; it < newton_max_iter; ++it) {
                    double r = resid(s);
                    double h = 1e-7;
                    double dr = (resid(s + h) - resid(s - h)) / (2.0 * h);
                    double step = r / dr;
                    s -= step;
                    if (std::fabs(step) <= 1e-16 * std::fabs(s) || r == 0.0) break;
                }
                p.s_L = s;
                p.s_R = dR * s / dL;
            }
            break;
        }
        case RegionKind::OutOfScope: break;
    }
    return NormalFormMap(p);
}

}  // namespace bcnf
