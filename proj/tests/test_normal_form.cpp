#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bcnf/error.hpp"
#include "bcnf/invariant_sets.hpp"
#include "bcnf/normal_form.hpp"
#include "bcnf/region.hpp"
#include "oracles.hpp"

using namespace bcnf;
using doctest::Approx;

namespace {

NormalFormMap matched(const PiecewiseMap& m, double mu) {
    BifurcationData d = extract_bifurcation_data(m);
    return build_normal_form(d, m, mu, classify(d.a_L, d.a_R));
}

// Closed-form limit of t for the saddle-node family.
double tsn_oracle(double aL, double aR, double cL, double cR) {
    return cL - aL * (1.0 - aL) * cR / (aR * (1.0 - aR));
}

double tpd_oracle(double aL, double aR, double cL, double cR) {
    return cL + aL * (1.0 + aL) * cR / (aR * (1.0 + aR)) -
           2.0 * (1.0 - aL * aR) * aL * cR / (aR * (1.0 + aR) * (1.0 - aR));
}

double extrapolated_t(const PiecewiseMap& m, double mu1, double mu2) {
    return oracle::richardson(mu1, matched(m, mu1).params().t, mu2, matched(m, mu2).params().t);
}

}  // namespace

TEST_CASE("slopes at the bifurcation and for piecewise-linear maps") {
    PiecewiseMap q = oracle::quadratic_map(2.0, 0.5, 1.0, 1.0, 0.1);
    BifurcationData d = extract_bifurcation_data(q);
    auto [sL, sR] = match_slopes(d, q, 0.0);
    CHECK(sL == 2.0);
    CHECK(sR == 0.5);

    PiecewiseMap lin = oracle::quadratic_map(0.5, 0.8, 0.0, 0.0, 0.1);
    for (double mu : {-0.03, 0.01, 0.05}) {
        auto [a, b] = match_slopes(extract_bifurcation_data(lin), lin, mu);
        CHECK(a == Approx(0.5).epsilon(1e-15));
        CHECK(b == Approx(0.8).epsilon(1e-15));
    }
}

TEST_CASE("slopes copy the right multiplier and the derivative ratio") {
    PiecewiseMap q = oracle::quadratic_map(2.0, 0.5, 0.0, 1.0, 0.1);
    const double mu = 0.01;
    // x^2 - 0.5 x + mu = 0, root near 2 mu
    double xR = oracle::quadratic_roots(1.0, -0.5, mu)[0];
    double lamR = 0.5 + 2.0 * xR;
    auto [sL, sR] = match_slopes(extract_bifurcation_data(q), q, mu);
    CHECK(sR == Approx(lamR).epsilon(1e-12));
    CHECK(sL == Approx(2.0 * lamR / 0.5).epsilon(1e-12));
}

TEST_CASE("saddle-node t: closed form and implicit solve") {
    PiecewiseMap q = oracle::quadratic_map(2.0, 0.5, 1.0, 1.0, 0.1);
    BifurcationData d = extract_bifurcation_data(q);
    CHECK(t_saddle_node_limit(d) == Approx(9.0).epsilon(1e-14));
    CHECK(tsn_oracle(2.0, 0.5, 1.0, 1.0) == Approx(9.0).epsilon(1e-14));
    CHECK(extrapolated_t(q, 1e-4, 1e-5) == Approx(9.0).epsilon(1e-3));
    CHECK(matched(q, 0.0).params().t == Approx(9.0).epsilon(1e-12));

    PiecewiseMap lin = oracle::quadratic_map(2.0, 0.5, 0.0, 0.0, 0.1);
    for (double mu : {-0.01, 0.01}) CHECK(std::fabs(matched(lin, mu).params().t) <= 1e-12);

    PiecewiseMap left_only = oracle::quadratic_map(2.0, 0.5, 1.0, 0.0, 0.1);
    CHECK(extrapolated_t(left_only, 1e-4, 1e-5) == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("saddle-node t limit does not scale with beta") {
    PiecewiseMap q = oracle::quadratic_map(2.0, 0.5, 1.0, 1.0, 0.1, 2.0);
    BifurcationData d = extract_bifurcation_data(q);
    CHECK(d.beta == 2.0);
    CHECK(t_saddle_node_limit(d) == Approx(9.0).epsilon(1e-14));
    CHECK(extrapolated_t(q, 1e-4, 1e-5) == Approx(9.0).epsilon(1e-3));
}

TEST_CASE("saddle-node left multiplier is matched") {
    PiecewiseMap q = oracle::quadratic_map(2.0, 0.5, 1.0, 1.0, 0.1);
    for (double mu : {1e-3, 1e-4, 0.02}) {
        NormalFormMap g = matched(q, mu);
        const NormalFormParams& p = g.params();
        double y = quadratic_fixed_point(p.nu, p.s_L, p.t);
        CHECK(std::fabs(g(y) - y) <= 1e-14);
        double lam_g = p.s_L + 2.0 * p.t * y;
        double lam_f = find_fixed_point(q, mu, Side::Left).multiplier;
        CHECK(std::fabs(lam_g - lam_f) <= 1e-9);
    }
}

TEST_CASE("period-doubling t: closed form and implicit solve") {
    PiecewiseMap lin = oracle::quadratic_map(-0.4, -2.0, 0.0, 0.0, 0.05);
    for (double mu : {-0.002, 0.002}) CHECK(std::fabs(matched(lin, mu).params().t) <= 1e-10);

    PiecewiseMap a = oracle::quadratic_map(-0.4, -2.0, 1.0, 0.0, 0.05);
    CHECK(t_period_doubling_limit(extract_bifurcation_data(a)) == Approx(1.0).epsilon(1e-14));
    CHECK(extrapolated_t(a, 1e-4, 1e-5) == Approx(1.0).epsilon(1e-3));

    PiecewiseMap b = oracle::quadratic_map(-0.4, -2.0, 0.0, 1.0, 0.05);
    double expect = tpd_oracle(-0.4, -2.0, 0.0, 1.0);
    CHECK(t_period_doubling_limit(extract_bifurcation_data(b)) == Approx(expect).epsilon(1e-14));
    CHECK(extrapolated_t(b, 1e-4, 1e-5) == Approx(expect).epsilon(1e-3));

    PiecewiseMap beta2 = oracle::quadratic_map(-0.4, -2.0, 0.0, 1.0, 0.05, 2.0);
    CHECK(extrapolated_t(beta2, 1e-4, 1e-5) == Approx(expect).epsilon(1e-3));
}

TEST_CASE("period-doubling cycle multiplier is matched") {
    PiecewiseMap q = oracle::quadratic_map(-0.4, -2.0, 1.0, 0.5, 0.05);
    for (double mu : {1e-3, 3e-3}) {
        NormalFormMap g = matched(q, mu);
        double xi_g = multiplier_of_normal_form_cycle(g.params());
        double xi_f = find_period_two(q, mu).multiplier;
        CHECK(std::fabs(xi_g - xi_f) <= 1e-9);
        double lam_f = find_fixed_point(q, mu, Side::Right).multiplier;
        CHECK(std::fabs(g.params().s_R - lam_f) <= 1e-12);
    }
}

TEST_CASE("trivial case and the sign of nu") {
    PiecewiseMap lin = oracle::quadratic_map(0.5, 0.8, 0.0, 0.0, 0.1);
    const NormalFormParams& p = matched(lin, 0.05).params();
    CHECK(p.nu == Approx(0.05).epsilon(1e-15));
    CHECK(p.s_L == Approx(0.5).epsilon(1e-15));
    CHECK(p.s_R == Approx(0.8).epsilon(1e-15));
    CHECK(p.t == 0.0);

    PiecewiseMap q = oracle::quadratic_map(0.5, 0.8, 0.2, -0.1, 0.05);
    q.left.set(0, 2, -3.0);
    q.right.set(0, 2, -3.0);
    for (double mu : {-0.01, -0.001, 0.001, 0.01}) {
        double nu = matched(q, mu).params().nu;
        CHECK((nu > 0.0) == (mu > 0.0));
    }
}

TEST_CASE("unsupported reductions are refused") {
    PiecewiseMap flip = oracle::quadratic_map(0.5, 2.0, 0.0, 0.0, 0.1);
    BifurcationData d = extract_bifurcation_data(flip);
    CHECK_THROWS_AS(build_normal_form(d, flip, 0.01, classify(d.a_L, d.a_R)), Error);
}
