#include <algorithm>
#include <cmath>

#include "bcnf/conjugacy.hpp"
#include "bcnf/error.hpp"
#include "bcnf/invariant_sets.hpp"

namespace bcnf {

namespace {

using ChartPtr = std::shared_ptr<const SeedChart>;
using PwPtr = std::shared_ptr<const PwPoly>;

struct Ctx {
    PiecewiseMap map;
    double mu = 0.0;
    double p = 0.0;
    PwPtr F, G;
    NormalFormParams gp;
    BifurcationData d;
};

ChartPtr chart_at(const PwPoly& m, Side s, double x_star, double p) {
    const Poly1& piece = m.piece(s);
    double lam = piece.derivative(x_star);
    double limit = x_star == 0.0 ? INFINITY : 0.9 * std::fabs(x_star);
    double max_r = std::min(p, limit);
    return std::make_shared<SeedChart>(x_star, lam,
                                       std::vector<ChainStep>{make_step(piece, x_star, x_star, limit)},
                                       max_r);
}

ChartPtr chart_cycle(const PwPoly& m, double uL, double uR) {
    double lam = m.left.derivative(uL) * m.right.derivative(uR);
    double lL = 0.9 * std::fabs(uL), lR = 0.9 * std::fabs(uR);
    return std::make_shared<SeedChart>(
        uL, lam, std::vector<ChainStep>{make_step(m.left, uL, uR, lL), make_step(m.right, uR, uL, lR)},
        lL);
}

ChartPtr chart_border_square(const PwPoly& m, double p) {
    double lam = m.left.derivative(0.0) * m.right.derivative(0.0);
    return std::make_shared<SeedChart>(
        0.0, lam,
        std::vector<ChainStep>{make_step(m.left, 0.0, 0.0, INFINITY),
                               make_step(m.right, 0.0, 0.0, INFINITY)},
        p);
}

OrbitMode mode_for(const SeedChart& c, int k, Side piece) {
    return {std::fabs(c.multiplier()) < 1.0 ? Move::Forward : Move::Inverse, k, piece};
}

std::function<double(double)> anchored(const Ctx& ctx, OrbitMode mode, ChartPtr cf, ChartPtr cg) {
    auto h = std::make_shared<BasinConjugacy>(match_endpoints(ctx.F, ctx.G, mode, cf, cg, 0.0, 0.0));
    return [h](double x) { return (*h)(x); };
}

std::function<double(double)> unanchored(const Ctx& ctx, OrbitMode mode, ChartPtr cf, ChartPtr cg) {
    auto h = std::make_shared<BasinConjugacy>();
    h->f = ctx.F;
    h->g = ctx.G;
    h->mode = mode;
    h->seed_radius = std::min(cf->radius(), 0.5 * cg->radius());
    h->chart_f = std::move(cf);
    h->chart_g = std::move(cg);
    return [h](double x) { return (*h)(x); };
}

double g_fixed_point(const Ctx& ctx, Side s) {
    const NormalFormParams& q = ctx.gp;
    return s == Side::Left ? polish_fixed_point(ctx.G->left, quadratic_fixed_point(q.nu, q.s_L, q.t))
                           : polish_fixed_point(ctx.G->right, q.nu / (1.0 - q.s_R));
}

std::string shape_suffix(const BifurcationData& d) {
    if (d.a_L > 0.0 && d.a_R > 0.0) return "increasing";
    if (d.a_L < 0.0 && d.a_R < 0.0) return "decreasing";
    return "non_monotone";
}

std::vector<ConjugacyMap> trivial_case(const Ctx& ctx) {
    FixedPointRecord l = find_fixed_point(ctx.map, ctx.mu, Side::Left);
    FixedPointRecord r = find_fixed_point(ctx.map, ctx.mu, Side::Right);
    if (l.admissible == r.admissible)
        fail(ErrorKind::PreconditionViolation, "expected exactly one admissible fixed point");
    const FixedPointRecord& fp = l.admissible ? l : r;
    double y_star = g_fixed_point(ctx, fp.side);
    auto cf = chart_at(*ctx.F, fp.side, fp.location, ctx.p);
    auto cg = chart_at(*ctx.G, fp.side, y_star, ctx.p);
    ConjugacyMap h({{-ctx.p, ctx.p}}, anchored(ctx, mode_for(*cf, 1, Side::Auto), cf, cg),
                   "one_fixed_point_" + shape_suffix(ctx.d));
    h.fixed_pairs = {{fp.location, y_star}};
    return {h};
}

std::vector<ConjugacyMap> border_case(const Ctx& ctx) {
    double aL = ctx.F->left.derivative(0.0), aR = ctx.F->right.derivative(0.0);
    std::function<double(double)> left, right;
    if (aL < 0.0 && aR < 0.0) {
        auto cf = chart_border_square(*ctx.F, ctx.p);
        auto cg = chart_border_square(*ctx.G, ctx.p);
        left = unanchored(ctx, mode_for(*cf, 2, Side::Auto), cf, cg);
    } else {
        if (aL > 0.0) {
            auto cf = chart_at(*ctx.F, Side::Left, 0.0, ctx.p);
            auto cg = chart_at(*ctx.G, Side::Left, 0.0, ctx.p);
            left = unanchored(ctx, mode_for(*cf, 1, Side::Left), cf, cg);
        }
        if (aR > 0.0) {
            auto cf = chart_at(*ctx.F, Side::Right, 0.0, ctx.p);
            auto cg = chart_at(*ctx.G, Side::Right, 0.0, ctx.p);
            right = unanchored(ctx, mode_for(*cf, 1, Side::Right), cf, cg);
        }
    }
    OrbitMode fwd{Move::Forward, 1, Side::Auto};
    if (!right) right = extend_outward(left, {{-INFINITY, 0.0}}, ctx.F, ctx.G, fwd);
    if (!left) left = extend_outward(right, {{0.0, INFINITY}}, ctx.F, ctx.G, fwd);
    auto eval = [left, right](double x) { return x > 0.0 ? right(x) : left(x); };
    ConjugacyMap h({{-ctx.p, ctx.p}}, eval, "border_fixed_point_" + shape_suffix(ctx.d));
    h.fixed_pairs = {{0.0, 0.0}};
    return {h};
}

std::vector<ConjugacyMap> saddle_node_two_fixed(const Ctx& ctx) {
    FixedPointRecord l = find_fixed_point(ctx.map, ctx.mu, Side::Left);
    FixedPointRecord r = find_fixed_point(ctx.map, ctx.mu, Side::Right);
    if (!l.admissible || !r.admissible)
        fail(ErrorKind::PreconditionViolation, "expected two admissible fixed points");
    double yl = g_fixed_point(ctx, Side::Left), yr = g_fixed_point(ctx, Side::Right);
    auto cfR = chart_at(*ctx.F, Side::Right, r.location, ctx.p);
    auto cgR = chart_at(*ctx.G, Side::Right, yr, ctx.p);
    auto cfL = chart_at(*ctx.F, Side::Left, l.location, ctx.p);
    auto cgL = chart_at(*ctx.G, Side::Left, yl, ctx.p);
    OrbitMode fwd{Move::Forward, 1, Side::Auto};
    std::string tag = "two_fixed_points_" + shape_suffix(ctx.d);
    std::vector<ConjugacyMap> out;
    if (ctx.d.a_R > 0.0) {
        out.emplace_back(std::vector<Interval>{{l.location, ctx.p}}, anchored(ctx, fwd, cfR, cgR),
                         tag);
        out.emplace_back(std::vector<Interval>{{-ctx.p, r.location}},
                         anchored(ctx, {Move::Inverse, 1, Side::Auto}, cfL, cgL), tag);
    } else {
        double top = ctx.p, pre;
        if (ctx.F->try_inverse(Side::Right, l.location, pre) && pre > 0.0) top = std::min(top, pre);
        out.emplace_back(std::vector<Interval>{{l.location, top}}, anchored(ctx, fwd, cfR, cgR), tag);
        out.emplace_back(std::vector<Interval>{{-ctx.p, 0.0}},
                         anchored(ctx, {Move::Inverse, 1, Side::Left}, cfL, cgL), tag);
    }
    out[0].fixed_pairs = {{r.location, yr}};
    out[1].fixed_pairs = {{l.location, yl}};
    return out;
}

std::vector<ConjugacyMap> saddle_node_no_fixed(const Ctx& ctx) {
    const PwPoly& F = *ctx.F;
    double nu = ctx.gp.nu;
    if (!(nu < 0.0)) fail(ErrorKind::PreconditionViolation, "expected f(0) < 0");
    double z = -ctx.p;
    for (int n = 0; z <= nu; ++n) {
        if (n >= orbit_max_steps || !F.try_inverse(Side::Left, z, z))
            fail(ErrorKind::InverseUnbracketed, "backward orbit of -p failed");
    }
    if (ctx.d.a_R > 0.0) {
        double w = ctx.p;
        for (int n = 0; w > 0.0 && n < orbit_max_steps; ++n) w = F(w);
        if (w <= 0.0) z = std::min(z, w);
    }
    if (!(z > nu && z < 0.0) || z - nu < 1e-3 * -nu || -z < 1e-3 * -nu) z = 0.5 * nu;

    double slope_nu = ctx.gp.s_L / F.left.derivative(0.0);
    auto jump = std::make_shared<JumpFunction>(build_jump_function({nu, nu, slope_nu}, {z, z, 1.0}));
    auto base = [jump, z](double x) { return x > z ? x : (*jump)(x); };
    auto left = extend_outward(base, {{nu, 0.0}}, ctx.F, ctx.G, {Move::Inverse, 1, Side::Left});
    auto all = extend_outward(left, {{-INFINITY, 0.0}}, ctx.F, ctx.G, {Move::Forward, 1, Side::Auto});
    return {ConjugacyMap({{-ctx.p, ctx.p}}, all, "no_fixed_points_" + shape_suffix(ctx.d))};
}

std::vector<ConjugacyMap> period_doubling_before(const Ctx& ctx) {
    FixedPointRecord l = find_fixed_point(ctx.map, ctx.mu, Side::Left);
    if (!l.admissible) fail(ErrorKind::PreconditionViolation, "left fixed point is virtual");
    double yl = g_fixed_point(ctx, Side::Left);
    auto cf = chart_at(*ctx.F, Side::Left, l.location, ctx.p);
    auto cg = chart_at(*ctx.G, Side::Left, yl, ctx.p);
    ConjugacyMap h({{-ctx.p, ctx.p}}, anchored(ctx, mode_for(*cf, 1, Side::Auto), cf, cg),
                   "one_fixed_point_decreasing");
    h.fixed_pairs = {{l.location, yl}};
    return {h};
}

std::vector<ConjugacyMap> period_doubling_after(const Ctx& ctx) {
    FixedPointRecord r = find_fixed_point(ctx.map, ctx.mu, Side::Right);
    PeriodTwoRecord fc = find_period_two(ctx.map, ctx.mu);
    const NormalFormParams& q = ctx.gp;
    double den = 1.0 - q.s_L * q.s_R;
    PeriodTwoRecord gc = polish_period_two(ctx.G->left, ctx.G->right, q.nu * (1.0 + q.s_R) / den,
                                           q.nu * (1.0 + q.s_L) / den);
    if (!(gc.u_L < 0.0 && gc.u_R > 0.0))
        fail(ErrorKind::WrongSides, "normal-form 2-cycle does not straddle the border");
    double yr = g_fixed_point(ctx, Side::Right);

    auto cfR = chart_at(*ctx.F, Side::Right, r.location, ctx.p);
    auto cgR = chart_at(*ctx.G, Side::Right, yr, ctx.p);
    ConjugacyMap inner({{fc.u_L, fc.u_R}}, anchored(ctx, mode_for(*cfR, 1, Side::Auto), cfR, cgR),
                       "fixed_point_and_period_two_repelling");
    inner.fixed_pairs = {{r.location, yr}};

    auto cf2 = chart_cycle(*ctx.F, fc.u_L, fc.u_R);
    auto cg2 = chart_cycle(*ctx.G, gc.u_L, gc.u_R);
    auto left = anchored(ctx, mode_for(*cf2, 2, Side::Auto), cf2, cg2);
    auto all = extend_outward(left, {{-INFINITY, r.location}}, ctx.F, ctx.G,
                              {Move::Forward, 1, Side::Auto});
    ConjugacyMap outer({{-ctx.p, r.location}, {r.location, ctx.p}}, all,
                       "fixed_point_and_period_two_attracting");
    outer.fixed_pairs = {{fc.u_L, gc.u_L}, {fc.u_R, gc.u_R}};
    return {inner, outer};
}

// Restricts every domain to (-p, p); empty pieces are dropped.
std::vector<ConjugacyMap> clip_to_neighborhood(const std::vector<ConjugacyMap>& hs, double p) {
    std::vector<ConjugacyMap> out;
    for (const auto& h : hs) {
        std::vector<Interval> dom;
        for (const auto& I : h.domain()) {
            Interval J{std::max(I.lo, -p), std::min(I.hi, p)};
            if (J.lo < J.hi) dom.push_back(J);
        }
        if (dom.empty()) continue;
        ConjugacyMap c(dom, [h](double x) { return h.eval_unchecked(x); }, h.case_tag());
        c.fixed_pairs = h.fixed_pairs;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<ConjugacyMap> build_conjugacy(const PiecewiseMap& f, const NormalFormMap& g, double mu,
                                          const RegionClass& region) {
    if (region.kind == RegionKind::OutOfScope)
        fail(ErrorKind::RegionUnsupported, "slopes are outside the covered regions");
    if (region.reduction == Reduction::InverseMap || region.reduction == Reduction::FlipXAndInverse)
        fail(ErrorKind::RegionUnsupported,
             "this region reduces to the covered one through the inverse map; build the conjugacy "
             "for the numerically inverted map instead");
    if (region.reduction != Reduction::Identity)
        fail(ErrorKind::RegionUnsupported, "reflect the map (x -> -x, mu -> -mu) first");

    Ctx ctx;
    ctx.map = f;
    ctx.mu = mu;
    ctx.p = f.p;
    ctx.d = extract_bifurcation_data(f);
    ctx.gp = g.params();
    double bound = 2.0 * f.p * std::max({1.0, std::fabs(ctx.d.a_L), std::fabs(ctx.d.a_R)});
    ctx.F = std::make_shared<PwPoly>(f.left.at(mu), f.right.at(mu), bound);
    ctx.G = std::make_shared<PwPoly>(g.left(), g.right(), bound);

    std::vector<ConjugacyMap> hs;
    if (mu == 0.0) {
        hs = border_case(ctx);
    } else if (region.kind == RegionKind::Trivial) {
        hs = trivial_case(ctx);
    } else if (region.kind == RegionKind::SaddleNodeLike) {
        hs = mu > 0.0 ? saddle_node_two_fixed(ctx) : saddle_node_no_fixed(ctx);
    } else {
        hs = mu > 0.0 ? period_doubling_after(ctx) : period_doubling_before(ctx);
    }
    return clip_to_neighborhood(hs, f.p);
}

}  // namespace bcnf
