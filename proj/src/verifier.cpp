#include "bcnf/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcnf/error.hpp"
#include "bcnf/invariant_sets.hpp"
#include "bcnf/seed_chart.hpp"

namespace bcnf {

namespace {

constexpr int max_witnesses = 8;
constexpr double eps = std::numeric_limits<double>::epsilon();

void record(BoundReport& rep, double x, int n, double lhs, double rhs, bool violated) {
    ++rep.checks;
    if (!violated) return;
    ++rep.violations;
    if (static_cast<int>(rep.witnesses.size()) < max_witnesses) rep.witnesses.push_back({x, n, lhs, rhs});
}

double sampled_max_abs(const RealFn& fn, double lo, double hi, int n = 10000) {
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m = std::max(m, std::fabs(fn(lo + (hi - lo) * i / n)));
    return m;
}

// Value at 0 of the interpolating polynomial through (s_i, v_i).
double neville_at_zero(std::vector<double> s, std::vector<double> v) {
    const std::size_t n = s.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            v[i] = (s[i + m] * v[i] - s[i] * v[i + 1]) / (s[i + m] - s[i]);
    return v[0];
}

}  // namespace

double conjugacy_residual(const RealFn& f, const RealFn& g, const ConjugacyMap& h, int samples) {
    double sup = 0.0;
    const auto& dom = h.domain();
    if (dom.empty()) fail(ErrorKind::InvalidArgument, "conjugacy has an empty domain");
    int per = std::max(1, samples / static_cast<int>(dom.size()));
    for (const auto& I : dom) {
        for (int i = 0; i < per; ++i) {
            double x = I.lo + (I.hi - I.lo) * (i + 0.5) / per;
            double fx = f(x);
            if (!h.contains(fx)) continue;
            sup = std::max(sup, std::fabs(h(fx) - g(h(x))));
        }
    }
    return sup;
}

BoundReport check_appendix_bounds(const Poly1& f, const AppendixConfig& cfg) {
    const double lam = cfg.lambda;
    if (!(lam > 0.0 && lam < 1.0)) fail(ErrorKind::HypothesisViolation, "lambda must lie in (0, 1)");
    if (!(cfg.a < 0.0 && cfg.b > 0.0)) fail(ErrorKind::HypothesisViolation, "grid must straddle 0");
    if (std::fabs(f(0.0)) > 1e-15 || std::fabs(f.derivative(0.0) - lam) > 1e-12)
        fail(ErrorKind::HypothesisViolation, "map must fix 0 with multiplier lambda");
    double sampled = sampled_max_abs([&](double x) { return f.derivative(x, 2); }, cfg.a, cfg.b);
    BoundReport rep;
    rep.lambda = lam;
    if (cfg.K > 0.0) {
        if (sampled > cfg.K) fail(ErrorKind::HypothesisViolation, "|f''| exceeds K on the grid");
        rep.K = cfg.K;
    } else {
        rep.K = 1.01 * sampled;
    }
    rep.r = rep.K > 0.0 ? lam * (1.0 - lam) / (10.0 * rep.K) : INFINITY;
    if (std::max(-cfg.a, cfg.b) > rep.r * (1.0 + 1e-12))
        fail(ErrorKind::HypothesisViolation, "grid extends beyond r");
    const double rc = rep.r * cfg.r_tightening;

    auto [mlo, mhi] = monotone_interval(f, 4.0 * std::max(-cfg.a, cfg.b) / lam);
    const int N = std::max(2, cfg.grid_points);
    for (int i = 0; i < N; ++i) {
        double u = cfg.a + (cfg.b - cfg.a) * i / (N - 1);
        double z = u, ln = 1.0;
        for (int n = 0; n <= cfg.n_max; ++n) {
            double lhs = std::fabs(z - ln * u);
            double rhs = (1.0 - ln) * ln * u * u / (5.0 * rc);
            record(rep, u, n, lhs, rhs, lhs > rhs + 4e-16 * std::fabs(ln * u));
            z = f(z);
            ln *= lam;
        }
        double w = u;
        ln = 1.0;
        for (int n = 0; n <= cfg.n_max; ++n) {
            if (!(w > cfg.a && w < cfg.b) && n > 0) break;
            double lhs = std::fabs(w - u / ln);
            double rhs = 2.0 * (1.0 - ln) * u * u / (5.0 * ln * ln * rc);
            record(rep, u, -n, lhs, rhs, lhs > rhs + 4e-16 * std::fabs(u / ln));
            if ((f(mlo) - w) * (f(mhi) - w) > 0.0) break;
            w = invert_on(f, w, mlo, mhi, false);
            ln *= lam;
        }
    }
    return rep;
}

BoundReport check_chi_bound(const RealFn& f2, const RealFn& g2, const RealFn& h, const ChiConfig& cfg) {
    const double lam = cfg.lambda;
    if (!(lam > 0.0 && lam < 1.0)) fail(ErrorKind::HypothesisViolation, "lambda must lie in (0, 1)");
    if (!(cfg.a < cfg.x_star && cfg.x_star < cfg.b))
        fail(ErrorKind::HypothesisViolation, "x* must lie inside (a, b)");
    double c = h(cfg.a + 1e-12 * (cfg.b - cfg.a)), d = h(cfg.b);
    double Kf = sampled_max_abs(f2, cfg.a, cfg.b), Kg = sampled_max_abs(g2, c, d);
    BoundReport rep;
    rep.lambda = lam;
    if (cfg.K > 0.0) {
        if (std::max(Kf, Kg) > cfg.K) fail(ErrorKind::HypothesisViolation, "second derivative exceeds K");
        rep.K = cfg.K;
    } else {
        rep.K = 1.01 * std::max(Kf, Kg);
    }
    rep.r = rep.K > 0.0 ? lam * (1.0 - lam) / (10.0 * rep.K) : INFINITY;
    double radius = std::max(cfg.x_star - cfg.a, cfg.b - cfg.x_star);
    if (radius > rep.r * (1.0 + 1e-12)) fail(ErrorKind::HypothesisViolation, "interval wider than r");
    rep.chi = (d - cfg.y_star) / (cfg.b - cfg.x_star);
    if (!(rep.chi <= 1.5)) fail(ErrorKind::HypothesisViolation, "chi exceeds 3/2");

    const int N = std::max(1, cfg.samples);
    for (int i = 0; i < N; ++i) {
        double x = cfg.a + (cfg.b - cfg.a) * (i + 0.5) / N;
        if (x == cfg.x_star) continue;
        double hx = h(x);
        double lhs = std::fabs((hx - cfg.y_star) / (x - cfg.x_star) - rep.chi);
        double rhs = 1.5 / rep.r * (4.0 * std::fabs(x - cfg.x_star) + cfg.b - cfg.x_star);
        // rounding in the difference quotient
        double slack = 8.0 * eps * ((std::fabs(hx) + std::fabs(cfg.y_star)) / std::fabs(x - cfg.x_star) +
                                    std::fabs(rep.chi));
        record(rep, x, 0, lhs, rhs, !(lhs < rhs + slack));
    }
    return rep;
}

BoundReport appendix_suite_case(double lambda, double c, double radius_scale, int grid_points,
                                int n_max, double r_tightening) {
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::HypothesisViolation, "lambda must lie in (0, 1)");
    AppendixConfig cfg;
    cfg.lambda = lambda;
    cfg.K = 2.02 * std::fabs(c);
    double r = cfg.K > 0.0 ? lambda * (1.0 - lambda) / (10.0 * cfg.K) : 0.05;
    cfg.a = -radius_scale * r;
    cfg.b = radius_scale * r;
    cfg.grid_points = grid_points;
    cfg.n_max = n_max;
    cfg.r_tightening = r_tightening;
    return check_appendix_bounds(Poly1({0.0, lambda, c}), cfg);
}

BoundReport chi_suite_case(double lambda, double c_f, double c_g, double chi, double radius_scale,
                           int samples) {
    if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::HypothesisViolation, "lambda must lie in (0, 1)");
    if (!(chi > 0.0)) fail(ErrorKind::HypothesisViolation, "chi must be positive");
    const double K = 2.02 * std::max(std::fabs(c_f), std::fabs(c_g));
    const double r = K > 0.0 ? lambda * (1.0 - lambda) / (10.0 * K) : 0.05;
    const double b = radius_scale * r, d = chi * b;
    Poly1 f({0.0, lambda, c_f}), g({0.0, lambda, c_g});
    SeedChart cf = build_seed_chart(f, 0.0, lambda, 2.0 * b);
    SeedChart cg = build_seed_chart(g, 0.0, lambda, 2.0 * d);
    if (!cf.contains(b) || !cf.contains(-b) || !cg.contains(d))
        fail(ErrorKind::DomainTooSmall, "linearising chart does not cover the interval");
    const double k = cg.phi(d) / cf.phi(b);
    RealFn h = [&](double x) { return cg.phi_inverse(k * cf.phi(x)); };
    ChiConfig cc;
    cc.lambda = lambda;
    cc.K = K;
    cc.a = -b;
    cc.b = b;
    cc.samples = samples;
    BoundReport rep = check_chi_bound([c_f](double) { return 2.0 * c_f; },
                                      [c_g](double) { return 2.0 * c_g; }, h, cc);
    return rep;
}

NeighborhoodReport check_neighborhood_ratio(const std::vector<ConjugacyMap>& hs, double p, double delta) {
    auto limit = [&](double end, double dir) {
        for (const auto& h : hs)
            for (const auto& I : h.domain()) {
                double edge = dir > 0 ? I.lo : I.hi;
                if (std::fabs(edge - end) > 1e-14 * p) continue;
                if (I.hi - I.lo < 0.05 * p) fail(ErrorKind::DomainTooSmall, "interval at the edge of N is too short");
                std::vector<double> s, v;
                for (int k = 0; k < 5; ++k) {
                    s.push_back(0.01 * p * std::ldexp(1.0, -k));
                    v.push_back(h.eval_unchecked(end + dir * s.back()));
                }
                return neville_at_zero(s, v);
            }
        fail(ErrorKind::DomainTooSmall, "no conjugacy reaches the edge of N");
    };
    NeighborhoodReport rep;
    rep.q_minus = limit(-p, 1.0);
    rep.q_plus = limit(p, -1.0);
    rep.ratio_minus = std::fabs(rep.q_minus) / p;
    rep.ratio_plus = std::fabs(rep.q_plus) / p;
    auto in = [&](double r) { return r > 1.0 - delta && r < 1.0 + delta; };
    rep.pass = in(rep.ratio_minus) && in(rep.ratio_plus);
    return rep;
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        case Stability::Semistable: return "semistable";
    }
    return "?";
}

namespace {

struct PointSet {
    std::vector<double> x;
    std::vector<double> mult;
};

std::vector<Stability> classify_points(const RealFn& F, const std::vector<double>& pts) {
    std::vector<Stability> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double gap = INFINITY;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) gap = std::min(gap, std::fabs(pts[j] - pts[i]));
        double eps = std::isfinite(gap) ? 1e-3 * gap : 1e-6;
        double x = pts[i];
        double dm = F(x - eps) - (x - eps), dp = F(x + eps) - (x + eps);
        if (dm > 0.0 && dp < 0.0) out.push_back(Stability::Stable);
        else if (dm < 0.0 && dp > 0.0) out.push_back(Stability::Unstable);
        else out.push_back(Stability::Semistable);
    }
    return out;
}

}  // namespace

SlopeFreedomReport slope_freedom_report(const PiecewiseMap& map, double s_L, double s_R,
                                        const std::vector<double>& mu_grid) {
    BifurcationData d = extract_bifurcation_data(map);
    if (!(d.a_L > 1.0 && d.a_R > 0.0 && d.a_R < 1.0))
        fail(ErrorKind::PreconditionViolation, "needs a_L > 1 and 0 < a_R < 1");
    if (!(s_L > 1.0 && s_R > 0.0 && s_R < 1.0))
        fail(ErrorKind::PreconditionViolation, "free slopes must satisfy 0 < s_R < 1 < s_L");
    SlopeFreedomReport rep;
    rep.pass = true;
    for (double mu : mu_grid) {
        SlopeFreedomRow row;
        row.mu = mu;
        double nu = map.left.eval(0.0, mu);
        std::array<PointSet, 3> sets;
        if (mu == 0.0) {
            sets[0] = {{0.0}, {d.a_L, d.a_R}};
            sets[1] = {{0.0}, {s_L, s_R}};
            sets[2] = {{0.0}, {1.0}};
        } else {
            for (Side s : {Side::Left, Side::Right}) {
                FixedPointRecord r = find_fixed_point(map, mu, s);
                if (r.admissible) {
                    sets[0].x.push_back(r.location);
                    sets[0].mult.push_back(r.multiplier);
                }
            }
            double yl = nu / (1.0 - s_L), yr = nu / (1.0 - s_R);
            if (yl <= 0.0) { sets[1].x.push_back(yl); sets[1].mult.push_back(s_L); }
            if (yr >= 0.0) { sets[1].x.push_back(yr); sets[1].mult.push_back(s_R); }
            if (nu > 0.0) {
                double q = std::sqrt(nu);
                sets[2].x = {-q, q};
                sets[2].mult = {1.0 + 2.0 * q, 1.0 - 2.0 * q};
            }
        }
        std::array<RealFn, 3> maps = {
            [&](double x) { return evaluate(map, x, mu); },
            [&](double y) { return y > 0.0 ? nu + s_R * y : nu + s_L * y; },
            [&](double y) { return nu + y - y * y; }};
        for (int k = 0; k < 3; ++k) {
            row.counts[k] = static_cast<int>(sets[k].x.size());
            row.patterns[k] = classify_points(maps[k], sets[k].x);
            row.multipliers[k] = sets[k].mult;
        }
        row.counts_agree = row.counts[0] == row.counts[1] && row.counts[1] == row.counts[2];
        row.patterns_agree = row.patterns[0] == row.patterns[1] && row.patterns[1] == row.patterns[2];
        auto differ = [](const std::vector<double>& u, const std::vector<double>& v) {
            if (u.size() != v.size()) return true;
            for (std::size_t i = 0; i < u.size(); ++i)
                if (std::fabs(u[i] - v[i]) > 1e-6) return true;
            return false;
        };
        bool any = !sets[0].mult.empty();
        row.multipliers_differ = !any || (differ(row.multipliers[0], row.multipliers[1]) &&
                                          differ(row.multipliers[0], row.multipliers[2]) &&
                                          differ(row.multipliers[1], row.multipliers[2]));
        rep.pass = rep.pass && row.counts_agree && row.patterns_agree && row.multipliers_differ;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

double derivative_gap_at_zero(const ConjugacyMap& h) {
    const double s1 = 1e-5, s2 = 5e-6;
    double h0 = h(0.0);
    auto plus = [&](double s) { return (h(s) - h0) / s; };
    auto minus = [&](double s) { return (h0 - h(-s)) / s; };
    double dp = 2.0 * plus(s2) - plus(s1);
    double dm = 2.0 * minus(s2) - minus(s1);
    return std::fabs(dp - dm);
}

namespace {

Side side_of(double x) { return x > 0.0 ? Side::Right : Side::Left; }

// Multiplier of the orbit through the given points under a piecewise map.
double orbit_multiplier(const Poly1& L, const Poly1& R, const std::vector<double>& pts) {
    double m = 1.0;
    for (double x : pts) m *= (side_of(x) == Side::Left ? L : R).derivative(x);
    return m;
}

// Hypotheses of the chi-bound check near the first usable fixed point.
void local_bound_checks(const Analysis& a, VerificationReport& rep) {
    const PiecewiseMap& fm = a.frame_map;
    Poly1 fL = fm.left.at(a.frame_mu), fR = fm.right.at(a.frame_mu);
    Poly1 gL = a.g.left(), gR = a.g.right();
    for (const auto& h : a.h) {
        if (h.fixed_pairs.size() != 1) continue;
        double xs = h.fixed_pairs[0][0], ys = h.fixed_pairs[0][1];
        if (a.reflected) { xs = -xs; ys = -ys; }
        if (xs == 0.0) continue;
        Side s = side_of(xs);
        const Poly1& F = s == Side::Left ? fL : fR;
        const Poly1& G = s == Side::Left ? gL : gR;
        double lam = F.derivative(xs);
        if (!(lam > 0.0) || std::fabs(lam - 1.0) < 1e-6) continue;
        bool inverse = lam > 1.0;
        double lc = inverse ? 1.0 / lam : lam;

        // h in the frame coordinates
        RealFn hf = [&h, refl = a.reflected](double x) {
            return refl ? -h.eval_unchecked(-x) : h.eval_unchecked(x);
        };
        double room = 0.9 * std::fabs(xs);
        bool inside = false;
        for (const auto& I : h.domain()) {
            double lo = a.reflected ? -I.hi : I.lo, hi = a.reflected ? -I.lo : I.hi;
            if (xs > lo && xs < hi) {
                inside = true;
                room = std::min({room, 0.9 * (xs - lo), 0.9 * (hi - xs)});
            }
        }
        if (!inside) continue;
        auto second = [inverse](const Poly1& P, double center, double reach) -> RealFn {
            if (!inverse) return [&P](double x) { return P.derivative(x, 2); };
            auto br = monotone_interval(P.shifted(center), reach);
            double lo = center + br.first, hi = center + br.second;
            return [&P, lo, hi](double y) {
                double x = invert_on(P, y, lo, hi, false);
                double d1 = P.derivative(x);
                return -P.derivative(x, 2) / (d1 * d1 * d1);
            };
        };
        RealFn f2 = second(F, xs, 4.0 * room), g2 = second(G, ys, 4.0 * room);
        try {
            double R = room;
            for (int it = 0; it < 4; ++it) {
                double K = 1.01 * std::max(sampled_max_abs(f2, xs - R, xs + R, 2000),
                                           sampled_max_abs(g2, hf(xs - R), hf(xs + R), 2000));
                double r = K > 0.0 ? lc * (1.0 - lc) / (10.0 * K) : INFINITY;
                if (R <= r) break;
                R = 0.99 * r;
            }
            ChiConfig cc;
            cc.lambda = lc;
            cc.x_star = xs;
            cc.y_star = ys;
            cc.a = xs - R;
            cc.b = xs + R;
            cc.samples = 1000;
            rep.chi = check_chi_bound(f2, g2, hf, cc);
            rep.chi_applicable = true;
        } catch (const Error& e) {
            rep.notes.push_back(std::string("chi bound not applicable: ") + e.what());
        }
        if (!inverse) {
            try {
                std::vector<double> c = F.shifted(xs).coeffs();
                c[0] = 0.0;
                Poly1 q(c);
                AppendixConfig ac;
                ac.lambda = lam;
                double K = 1.01 * sampled_max_abs([&](double u) { return q.derivative(u, 2); }, -room, room);
                double r = K > 0.0 ? lam * (1.0 - lam) / (10.0 * K) : room;
                double R = std::min(room, r);
                ac.a = -R;
                ac.b = R;
                ac.grid_points = 201;
                ac.n_max = 40;
                rep.appendix = check_appendix_bounds(q, ac);
                rep.appendix_applicable = true;
            } catch (const Error& e) {
                rep.notes.push_back(std::string("appendix bounds not applicable: ") + e.what());
            }
        }
        return;
    }
    rep.notes.push_back("no fixed point with positive multiplier in the interior of a domain");
}

}  // namespace

VerificationReport verify(const Analysis& a, double delta, int samples) {
    VerificationReport rep;
    RealFn f = [&](double x) { return f_original(a, x); };
    RealFn g = [&](double y) { return g_original(a, y); };
    Poly1 fL = a.map.left.at(a.mu), fR = a.map.right.at(a.mu);
    bool ok = true;
    try {
        for (const auto& h : a.h) {
            rep.residual_sup = std::max(rep.residual_sup, conjugacy_residual(f, g, h, samples));
            for (const auto& I : h.domain()) {
                double prev = -INFINITY;
                for (int i = 0; i < samples; ++i) {
                    double y = h(I.lo + (I.hi - I.lo) * (i + 0.5) / samples);
                    if (!(y > prev)) rep.monotone = false;
                    prev = y;
                }
            }
            if (h.contains(0.0)) {
                rep.h_at_zero = std::max(rep.h_at_zero, std::fabs(h(0.0)));
                rep.derivative_gap = std::max(rep.derivative_gap, derivative_gap_at_zero(h));
            }
            std::vector<double> xs, ys;
            for (const auto& fp : h.fixed_pairs) {
                xs.push_back(fp[0]);
                ys.push_back(fp[1]);
            }
            if (xs.empty() || (xs.size() == 1 && xs[0] == 0.0)) continue;
            double mf = orbit_multiplier(fL, fR, xs);
            double mg = 1.0;
            for (double y : ys) {
                double yf = a.reflected ? -y : y;
                mg *= a.g.derivative(yf, side_of(yf));
            }
            rep.multiplier_gaps.push_back(std::fabs(mf - mg));
        }
    } catch (const Error& e) {
        ok = false;
        rep.notes.push_back(std::string("evaluation failed: ") + e.what());
    }
    local_bound_checks(a, rep);
    try {
        rep.neighborhood = check_neighborhood_ratio(a.h, a.map.p, delta);
        rep.neighborhood_applicable = true;
    } catch (const Error& e) {
        rep.notes.push_back(std::string("neighborhood ratio not applicable: ") + e.what());
    }
    rep.pass = ok && rep.residual_sup <= tol_conj && rep.h_at_zero <= 1e-10 &&
               rep.derivative_gap <= derivative_gap_tol && rep.monotone &&
               (!rep.appendix_applicable || rep.appendix.violations == 0) &&
               (!rep.chi_applicable || rep.chi.violations == 0);
    for (double m : rep.multiplier_gaps) rep.pass = rep.pass && m <= multiplier_gap_tol;
    return rep;
}

}  // namespace bcnf
