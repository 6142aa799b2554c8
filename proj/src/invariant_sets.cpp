#include "bcnf/invariant_sets.hpp"

#include <cmath>
#include <string>

#include "bcnf/error.hpp"
#include "bcnf/normal_form.hpp"
#include "bcnf/region.hpp"

namespace bcnf {

namespace {

bool try_fixed_point(const Poly1& piece, double seed, double& out) {
    double x = seed;
    double r = piece(x) - x;
    for (int it = 0; it < newton_max_iter; ++it) {
        double d = piece.derivative(x) - 1.0;
        if (d == 0.0) return false;
        double step = r / d;
        double lam = 1.0;
        double xn = x - step, rn = piece(xn) - xn;
        while (std::fabs(rn) > std::fabs(r) && lam > 1e-6) {
            lam *= 0.5;
            xn = x - lam * step;
            rn = piece(xn) - xn;
        }
        x = xn;
        r = rn;
        if (std::fabs(lam * step) <= 1e-15 * std::max(std::fabs(x), 1e-300) || r == 0.0) break;
    }
    out = x;
    return std::isfinite(x) && std::fabs(r) <= tol_root;
}

bool try_period_two(const Poly1& L, const Poly1& R, double sL, double sR, PeriodTwoRecord& out) {
    double uL = sL, uR = sR;
    auto resid = [&](double a, double b) {
        return std::max(std::fabs(L(a) - b), std::fabs(R(b) - a));
    };
    double r = resid(uL, uR);
    for (int it = 0; it < newton_max_iter && r > 0.0; ++it) {
        double F1 = L(uL) - uR, F2 = R(uR) - uL;
        double dl = L.derivative(uL), dr = R.derivative(uR);
        double det = dl * dr - 1.0;
        if (det == 0.0) return false;
        double dL = -(F2 + dr * F1) / det;
        double dR = dl * dL + F1;
        double lam = 1.0;
        double rn = resid(uL + dL, uR + dR);
        while (rn > r && lam > 1e-6) {
            lam *= 0.5;
            rn = resid(uL + lam * dL, uR + lam * dR);
        }
        uL += lam * dL;
        uR += lam * dR;
        double moved = lam * std::max(std::fabs(dL), std::fabs(dR));
        r = rn;
        if (moved <= 1e-15 * std::max(std::max(std::fabs(uL), std::fabs(uR)), 1e-300)) break;
    }
    if (!(std::isfinite(uL) && std::isfinite(uR) && r <= tol_root)) return false;
    out.u_L = uL;
    out.u_R = uR;
    out.residual = r;
    out.multiplier = L.derivative(uL) * R.derivative(uR);
    return true;
}

// Exact 2-cycle of y -> nu + a_L y (y <= 0), nu + a_R y (y >= 0).
std::pair<double, double> linear_cycle(double nu, double a_L, double a_R) {
    double den = 1.0 - a_L * a_R;
    return {nu * (1.0 + a_R) / den, nu * (1.0 + a_L) / den};
}

}  // namespace

double polish_fixed_point(const Poly1& piece, double seed) {
    double x;
    if (!try_fixed_point(piece, seed, x))
        fail(ErrorKind::NoConvergence, "fixed-point Newton did not converge");
    return x;
}

PeriodTwoRecord polish_period_two(const Poly1& left, const Poly1& right, double seed_L,
                                  double seed_R) {
    PeriodTwoRecord rec;
    if (!try_period_two(left, right, seed_L, seed_R, rec))
        fail(ErrorKind::NoConvergence, "period-two Newton did not converge");
    return rec;
}

FixedPointRecord find_fixed_point(const PiecewiseMap& map, double mu, Side side) {
    if (side == Side::Auto) fail(ErrorKind::InvalidArgument, "fixed point needs a side");
    const SmoothPiece& sp = side == Side::Left ? map.left : map.right;
    double a = sp.coeff(1, 0);
    if (a == 1.0) fail(ErrorKind::SlopeOne, "slope 1 at the border makes the seed singular");
    auto seed_at = [&](double m) { return sp.at(m)(0.0) / (1.0 - a); };

    Poly1 piece = sp.at(mu);
    double x = 0.0;
    bool ok = try_fixed_point(piece, seed_at(mu), x);
    for (int n = 2; !ok && n <= 256; n *= 2) {
        double xc = seed_at(mu / n);
        ok = true;
        for (int k = 1; k <= n && ok; ++k) ok = try_fixed_point(sp.at(mu * k / n), xc, xc);
        x = xc;
    }
    if (!ok) fail(ErrorKind::NoConvergence, "fixed-point Newton and continuation failed");

    FixedPointRecord rec;
    rec.location = x;
    rec.side = side;
    rec.multiplier = piece.derivative(x);
    rec.residual = std::fabs(piece(x) - x);
    rec.admissible = side == Side::Left ? x <= 0.0 : x >= 0.0;
    return rec;
}

PeriodTwoRecord find_period_two(const PiecewiseMap& map, double mu) {
    if (!(mu > 0.0)) fail(ErrorKind::PreconditionViolation, "period-two orbit requires mu > 0");
    BifurcationData d = extract_bifurcation_data(map);
    RegionClass rc = classify(d.a_L, d.a_R);
    if (rc.kind != RegionKind::PeriodDoublingLike || rc.reduction != Reduction::Identity)
        fail(ErrorKind::PreconditionViolation, "period-two search requires period-doubling slopes");

    auto solve_at = [&](double m, double sL, double sR, PeriodTwoRecord& out) {
        return try_period_two(map.left.at(m), map.right.at(m), sL, sR, out);
    };
    double nu = map.left.eval(0.0, mu);
    auto [sL, sR] = linear_cycle(nu, d.a_L, d.a_R);
    PeriodTwoRecord rec;
    bool ok = solve_at(mu, sL, sR, rec);
    for (int n = 2; !ok && n <= 256; n *= 2) {
        auto [cL, cR] = linear_cycle(map.left.eval(0.0, mu / n), d.a_L, d.a_R);
        ok = true;
        for (int k = 1; k <= n && ok; ++k) {
            ok = solve_at(mu * k / n, cL, cR, rec);
            cL = rec.u_L;
            cR = rec.u_R;
        }
    }
    if (!ok) fail(ErrorKind::NoConvergence, "period-two Newton and continuation failed");
    if (!(rec.u_L < 0.0 && rec.u_R > 0.0))
        fail(ErrorKind::WrongSides, "converged 2-cycle does not straddle the border");
    return rec;
}

double multiplier_of_normal_form_cycle(const NormalFormParams& params) {
    if (!(params.nu > 0.0))
        fail(ErrorKind::PreconditionViolation, "normal-form 2-cycle requires nu > 0");
    NormalFormMap g(params);
    auto [sL, sR] = linear_cycle(params.nu, params.s_L, params.s_R);
    return polish_period_two(g.left(), g.right(), sL, sR).multiplier;
}

}  // namespace bcnf
