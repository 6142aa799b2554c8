#include "bcnf/seed_chart.hpp"

#include <cmath>

#include "bcnf/error.hpp"

namespace bcnf {

namespace {

double invert_step(const ChainStep& s, double w, double* dv) {
    double v = w / s.q.derivative(0.0);
    for (int it = 0; it < newton_max_iter; ++it) {
        double d = s.q.derivative(v);
        if (d == 0.0 || !std::isfinite(v)) return NAN;
        double step = (s.q(v) - w) / d;
        v -= step;
        if (std::fabs(step) <= 4e-16 * std::fabs(v)) break;
    }
    if (!std::isfinite(v) || std::fabs(s.q(v) - w) > 1e-13 * std::fabs(w)) return NAN;
    if (!(std::fabs(v) <= s.limit)) return NAN;
    if (dv) *dv = 1.0 / s.q.derivative(v);
    return v;
}

}  // namespace

ChainStep make_step(const Poly1& piece, double center, double next_center, double limit) {
    std::vector<double> c = piece.shifted(center).coeffs();
    (void)next_center;
    c[0] = 0.0;
    return {Poly1(std::move(c)), limit};
}

double SeedChart::contract(double u, double* du) const {
    double d = 1.0;
    if (!inverted_) {
        for (const auto& s : steps_) {
            if (!(std::fabs(u) <= s.limit)) return NAN;
            d *= s.q.derivative(u);
            u = s.q(u);
        }
    } else {
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            double dv = 1.0;
            u = invert_step(*it, u, &dv);
            if (std::isnan(u)) return NAN;
            d *= dv;
        }
    }
    if (du) *du = d;
    return u;
}

double SeedChart::phi_local(double u, double* dphi) const {
    if (u == 0.0) {
        if (dphi) *dphi = 1.0;
        return 0.0;
    }
    double v = u, d = 1.0, scale = 1.0;
    double prev = u;
    double tail = std::fabs(lambda_c_) / (1.0 - std::fabs(lambda_c_));
    for (int m = 1; m <= seed_max_iter; ++m) {
        double dv = 1.0;
        v = contract(v, &dv);
        if (std::isnan(v)) fail(ErrorKind::NoConvergence, "seed chain left its pieces");
        d *= dv;
        scale /= lambda_c_;
        double cur = v * scale;
        if (std::fabs(cur - prev) * tail <= tol_seed * std::fabs(cur) || v == 0.0) {
            if (dphi) *dphi = d * scale;
            return cur;
        }
        prev = cur;
    }
    fail(ErrorKind::NoConvergence, "Koenigs iteration hit the iteration cap");
}

double SeedChart::phi(double x) const { return phi_local(x - center_); }

double SeedChart::phi_derivative(double x) const {
    double d = 0.0;
    phi_local(x - center_, &d);
    return d;
}

bool SeedChart::try_phi_inverse(double w, double& x) const {
    if (!(w >= phi_lo_ && w <= phi_hi_)) return false;
    if (w == 0.0) {
        x = center_;
        return true;
    }
    double last_u = NAN, last_p = 0.0, last_d = 1.0;
    auto eval = [&](double u) {
        if (u != last_u) {
            last_p = phi_local(u, &last_d);
            last_u = u;
        }
    };
    auto g = [&](double u) { eval(u); return last_p - w; };
    auto dg = [&](double u) { eval(u); return last_d; };
    RootResult r = safeguarded_newton(g, dg, -radius_, radius_, w, 200);
    if (!r.converged && std::fabs(g(r.x)) > 1e-14 * std::fabs(w)) return false;
    x = center_ + r.x;
    return true;
}

double SeedChart::phi_inverse(double w) const {
    double x;
    if (!try_phi_inverse(w, x))
        fail(ErrorKind::AnchorOutsideDomain, "value outside the range of the seed chart");
    return x;
}

SeedChart::SeedChart(double center, double lambda, std::vector<ChainStep> steps, double max_radius)
    : center_(center), lambda_(lambda), steps_(std::move(steps)) {
    double a = std::fabs(lambda);
    if (!(a > 0.0) || std::fabs(a - 1.0) < 1e-6 || !std::isfinite(lambda))
        fail(ErrorKind::NonHyperbolic, "multiplier too close to 0 or to unit modulus");
    inverted_ = a > 1.0;
    lambda_c_ = inverted_ ? 1.0 / lambda : lambda;
    double theta = 0.5 * (1.0 + std::fabs(lambda_c_));

    auto ok = [&](double r) {
        const int n = 64;
        double prev_phi = -INFINITY;
        for (int i = 0; i <= n; ++i) {
            double u = -r + 2.0 * r * i / n;
            if (u == 0.0 || i == n / 2) {
                u = 0.0;
            } else {
                double du = 0.0;
                double w = contract(u, &du);
                if (std::isnan(w) || du * lambda_c_ <= 0.0 || std::fabs(w) > theta * std::fabs(u))
                    return false;
            }
            double dp = 1.0, p;
            try {
                p = phi_local(u, &dp);
            } catch (const Error&) {
                return false;
            }
            if (!(p > prev_phi) || !(dp > 0.0)) return false;
            prev_phi = p;
        }
        return true;
    };
    double r = max_radius;
    int halvings = 0;
    while (!ok(r)) {
        r *= 0.5;
        if (++halvings > 60) fail(ErrorKind::NoConvergence, "no valid seed radius found");
    }
    radius_ = r;
    phi_lo_ = phi_local(-r);
    phi_hi_ = phi_local(r);
}

SeedChart build_seed_chart(const Poly1& map, double x_star, double lambda, double max_radius) {
    return SeedChart(x_star, lambda, {make_step(map, x_star, x_star, INFINITY)}, max_radius);
}

}  // namespace bcnf
