#pragma once

#include <limits>
#include <vector>

#include "bcnf/poly.hpp"

namespace bcnf {

inline constexpr double tol_seed = 1e-12;
inline constexpr int seed_max_iter = 10000;

// One step of a local chain in shifted coordinates: u -> q(u) with q(0) = 0.
// |u| must stay below `limit` so that the step uses the right piece.
struct ChainStep {
    Poly1 q;
    double limit = std::numeric_limits<double>::infinity();
};

// q(u) = piece(center + u) - next_center, constant term dropped.
ChainStep make_step(const Poly1& piece, double center, double next_center, double limit);

// Koenigs coordinate phi of the composed chain about its fixed point:
// phi(F(x)) = lambda phi(x), phi(center) = 0, phi'(center) = 1.
class SeedChart {
public:
    SeedChart() = default;
    SeedChart(double center, double lambda, std::vector<ChainStep> steps, double max_radius);

    double center() const { return center_; }
    double multiplier() const { return lambda_; }
    double radius() const { return radius_; }
    bool inverted() const { return inverted_; }
    bool contains(double x) const { return std::fabs(x - center_) <= radius_; }

    double phi(double x) const;
    double phi_derivative(double x) const;
    // Range of phi over the seed interval.
    double phi_min() const { return phi_lo_; }
    double phi_max() const { return phi_hi_; }
    bool try_phi_inverse(double w, double& x) const;
    double phi_inverse(double w) const;

    // phi in local coordinates u = x - center, with optional derivative.
    double phi_local(double u, double* dphi = nullptr) const;

private:
    // One step of the contracting version of the chain; NaN when a limit is hit.
    double contract(double u, double* du) const;

    double center_ = 0.0;
    double lambda_ = 0.0;
    double lambda_c_ = 0.0;  // multiplier of the contracting map
    double radius_ = 0.0;
    bool inverted_ = false;
    std::vector<ChainStep> steps_;
    double phi_lo_ = 0.0, phi_hi_ = 0.0;
};

// Chart of a single smooth map about x_star (its multiplier is lambda).
SeedChart build_seed_chart(const Poly1& map, double x_star, double lambda, double max_radius);

}  // namespace bcnf
