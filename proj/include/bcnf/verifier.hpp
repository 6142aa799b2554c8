#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bcnf/conjugacy.hpp"
#include "bcnf/map.hpp"
#include "bcnf/pipeline.hpp"

namespace bcnf {

using RealFn = std::function<double(double)>;

double conjugacy_residual(const RealFn& f, const RealFn& g, const ConjugacyMap& h, int samples);

struct Witness {
    double x = 0.0;
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct BoundReport {
    int checks = 0;
    int violations = 0;
    std::vector<Witness> witnesses;  // first few violations
    double K = 0.0;
    double r = 0.0;
    double lambda = 0.0;
    double chi = 0.0;
};

// f(u) with f(0) = 0 and f'(0) = lambda, checked on the grid [a, b].
struct AppendixConfig {
    double lambda = 0.5;
    double K = 0.0;  // <= 0: estimate from 1e4 samples, inflated by 1%
    double a = 0.0, b = 0.0;
    int grid_points = 501;
    int n_max = 60;
    double r_tightening = 1.0;  // > 1 shrinks the bounds (negative control)
};
BoundReport check_appendix_bounds(const Poly1& f, const AppendixConfig& cfg);

struct ChiConfig {
    double lambda = 0.5;
    double K = 0.0;  // <= 0: estimate
    double x_star = 0.0, y_star = 0.0;
    double a = 0.0, b = 0.0;  // x-interval, with h(b) = d
    int samples = 1000;
};
// f2, g2: second derivatives of the two maps (or of their inverses when the
// fixed points repel); h the conjugacy.
BoundReport check_chi_bound(const RealFn& f2, const RealFn& g2, const RealFn& h, const ChiConfig& cfg);

// Quadratic family u -> lambda u + c u^2 on |u| <= radius_scale * r.
BoundReport appendix_suite_case(double lambda, double c, double radius_scale, int grid_points,
                                int n_max, double r_tightening = 1.0);
// f(u) = lambda u + c_f u^2, g(v) = lambda v + c_g v^2 and the conjugacy with
// h(0) = 0, h(b) = chi b, built from their linearising coordinates.
BoundReport chi_suite_case(double lambda, double c_f, double c_g, double chi, double radius_scale,
                           int samples);

struct NeighborhoodReport {
    double q_minus = 0.0, q_plus = 0.0;
    double ratio_minus = 0.0, ratio_plus = 0.0;
    bool pass = false;
};
NeighborhoodReport check_neighborhood_ratio(const std::vector<ConjugacyMap>& hs, double p, double delta);

enum class Stability { Stable, Unstable, Semistable };
const char* to_string(Stability s);

struct SlopeFreedomRow {
    double mu = 0.0;
    std::array<int, 3> counts{};  // f, piecewise-linear, quadratic
    std::array<std::vector<Stability>, 3> patterns;
    std::array<std::vector<double>, 3> multipliers;
    bool counts_agree = false;
    bool patterns_agree = false;
    bool multipliers_differ = false;
};
struct SlopeFreedomReport {
    std::vector<SlopeFreedomRow> rows;
    bool pass = false;
};
SlopeFreedomReport slope_freedom_report(const PiecewiseMap& map, double s_L, double s_R,
                                        const std::vector<double>& mu_grid);

struct VerificationReport {
    double residual_sup = 0.0;
    double derivative_gap = 0.0;
    double h_at_zero = 0.0;
    bool monotone = true;
    std::vector<double> multiplier_gaps;
    bool appendix_applicable = false;
    BoundReport appendix;
    bool chi_applicable = false;
    BoundReport chi;
    bool neighborhood_applicable = false;
    NeighborhoodReport neighborhood;
    bool pass = false;  // neighborhood ratios are reported, not gated
    std::vector<std::string> notes;
};

inline constexpr double derivative_gap_tol = 1e-4;
inline constexpr double multiplier_gap_tol = 1e-9;

// One-sided difference quotients of h at 0, Richardson-refined.
double derivative_gap_at_zero(const ConjugacyMap& h);

VerificationReport verify(const Analysis& a, double delta, int samples = 1000);

}  // namespace bcnf
