#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "bcnf/error.hpp"
#include "bcnf/invariant_sets.hpp"
#include "bcnf/normal_form.hpp"
#include "oracles.hpp"

using namespace bcnf;
using doctest::Approx;

TEST_CASE("affine fixed points and admissibility") {
    PiecewiseMap m = oracle::quadratic_map(2.0, 0.5, 0.0, 0.0, 0.5);
    FixedPointRecord l = find_fixed_point(m, 0.1, Side::Left);
    CHECK(l.location == Approx(-0.1).epsilon(1e-14));
    CHECK(l.multiplier == 2.0);
    CHECK(l.admissible);

    FixedPointRecord r = find_fixed_point(m, -0.1, Side::Right);
    CHECK(r.location == Approx(-0.2).epsilon(1e-14));
    CHECK(r.multiplier == 0.5);
    CHECK_FALSE(r.admissible);

    PiecewiseMap one = oracle::quadratic_map(1.0, 0.5, 0.0, 0.0, 0.5);
    CHECK_THROWS_AS(find_fixed_point(one, 0.1, Side::Left), Error);
}

TEST_CASE("quadratic fixed point against the quadratic formula") {
    PiecewiseMap m = oracle::quadratic_map(2.0, 0.5, 1.0, 0.0, 0.1);
    FixedPointRecord l = find_fixed_point(m, 0.01, Side::Left);
    // x^2 + x + mu = 0, root near -mu
    double expect = oracle::quadratic_roots(1.0, 1.0, 0.01)[1];
    CHECK(l.location == Approx(expect).epsilon(1e-13));
    CHECK(l.residual <= 1e-12);
    CHECK(l.multiplier == Approx(2.0 + 2.0 * expect).epsilon(1e-13));
}

TEST_CASE("fixed point asymptotics scale like mu squared") {
    PiecewiseMap m = oracle::quadratic_map(0.5, 0.8, 0.2, -0.1, 0.05);
    std::vector<double> lmu, lerr;
    for (double mu : {0.016, 0.008, 0.004, 0.002, 0.001}) {
        FixedPointRecord r = find_fixed_point(m, mu, Side::Right);
        lmu.push_back(std::log(mu));
        lerr.push_back(std::log(std::fabs(r.location - mu / (1.0 - 0.8))));
    }
    double n = lmu.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lmu.size(); ++i) {
        sx += lmu[i];
        sy += lerr[i];
        sxx += lmu[i] * lmu[i];
        sxy += lmu[i] * lerr[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == Approx(2.0).epsilon(0.05));
}

TEST_CASE("exactly one admissible fixed point before and after in region 1") {
    PiecewiseMap m = oracle::quadratic_map(0.5, 0.8, 0.2, -0.1, 0.05);
    for (double mu : {-0.02, -0.005, 0.005, 0.02}) {
        bool l = find_fixed_point(m, mu, Side::Left).admissible;
        bool r = find_fixed_point(m, mu, Side::Right).admissible;
        CHECK(l != r);
    }
}

TEST_CASE("linear 2-cycle") {
    PiecewiseMap m = oracle::quadratic_map(-0.4, -2.0, 0.0, 0.0, 1.0);
    PeriodTwoRecord c = find_period_two(m, 0.1);
    auto [uL, uR] = oracle::linear_cycle(0.1, -0.4, -2.0);
    CHECK(c.u_L == Approx(uL).epsilon(1e-13));
    CHECK(c.u_R == Approx(uR).epsilon(1e-13));
    CHECK(c.u_L == Approx(-0.5).epsilon(1e-13));
    CHECK(c.u_R == Approx(0.3).epsilon(1e-13));
    CHECK(c.multiplier == Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(find_period_two(m, -0.05), Error);
}

TEST_CASE("quadratic 2-cycle against bisection on the second iterate") {
    PiecewiseMap m = oracle::quadratic_map(-0.4, -2.0, 1.0, 0.5, 0.05);
    const double mu = 0.003;
    PeriodTwoRecord c = find_period_two(m, mu);
    auto f = [&](double x) { return evaluate(m, x, mu); };
    FixedPointRecord r = find_fixed_point(m, mu, Side::Right);
    // root of f(f(x)) - x on x > 0 nearest the piecewise-linear cycle point
    double seed = oracle::linear_cycle(mu, -0.4, -2.0).second, uR = NAN;
    for (double x : oracle::grid_roots([&](double z) { return f(f(z)) - z; }, 1e-9, 0.05))
        if (std::fabs(x - r.location) > 1e-6 && !(std::fabs(x - seed) >= std::fabs(uR - seed))) uR = x;
    CHECK(c.u_R == Approx(uR).epsilon(1e-10));
    CHECK(c.u_L == Approx(f(uR)).epsilon(1e-10));
    double xi = derivative(m, c.u_L, mu, 1, Side::Left) * derivative(m, c.u_R, mu, 1, Side::Right);
    CHECK(c.multiplier == Approx(xi).epsilon(1e-12));
}

TEST_CASE("cycle multiplier tends to the slope product") {
    PiecewiseMap m = oracle::quadratic_map(-0.4, -2.0, 1.0, 0.5, 0.05);
    double x1 = find_period_two(m, 1e-6).multiplier, x2 = find_period_two(m, 5e-7).multiplier;
    CHECK(std::fabs(oracle::richardson(1e-6, x1, 5e-7, x2) - 0.8) <= 1e-6);
    std::vector<double> mus = {1e-3, 5e-4, 2.5e-4, 1.25e-4}, xis;
    for (double mu : mus) xis.push_back(find_period_two(m, mu).multiplier);
    CHECK(std::fabs(oracle::extrapolate_to_zero(mus, xis) - 0.8) <= 1e-6);
}

TEST_CASE("normal-form cycle multiplier") {
    NormalFormParams q;
    q.nu = 0.1;
    q.s_L = -0.4;
    q.s_R = -2.0;
    q.t = 0.0;
    CHECK(multiplier_of_normal_form_cycle(q) == Approx(0.8).epsilon(1e-14));

    q.nu = 1e-7;
    q.t = 3.0;
    CHECK(multiplier_of_normal_form_cycle(q) == Approx(0.8).epsilon(1e-5));

    // first-order response to t: 2 a_R (1 + a_R) t nu / (1 - a_L a_R)
    q.nu = 1e-4;
    q.t = 0.0;
    double base = multiplier_of_normal_form_cycle(q);
    q.t = 1.0;
    double shifted = multiplier_of_normal_form_cycle(q);
    double predicted = 2.0 * -2.0 * (1.0 - 2.0) * 1.0 * 1e-4 / (1.0 - 0.8);
    CHECK((shifted - base) == Approx(predicted).epsilon(1e-3));
}

TEST_CASE("first-order cycle multiplier coefficient") {
    const double aL = -0.4, aR = -2.0, cL = 1.0, cR = 0.5, dL = 0.3, dR = -0.2;
    PiecewiseMap m = oracle::quadratic_map(aL, aR, cL, cR, 0.05);
    m.left.set(1, 1, dL);
    m.right.set(1, 1, dR);
    double coeff = aL * dR + aR * dL + 2.0 * (aL * (1 + aL) * cR + aR * (1 + aR) * cL) / (1.0 - aL * aR);
    auto slope = [&](double mu) { return (find_period_two(m, mu).multiplier - aL * aR) / mu; };
    double est = oracle::richardson(1e-4, slope(1e-4), 5e-5, slope(5e-5));
    CHECK(est == Approx(coeff).epsilon(1e-4));
}
