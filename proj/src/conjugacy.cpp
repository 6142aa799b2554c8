#include "bcnf/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bcnf/error.hpp"
#include "bcnf/invariant_sets.hpp"

namespace bcnf {

namespace {
constexpr double side_tol = 1e-12;

bool on_side(Side s, double x) { return s == Side::Left ? x <= side_tol : x >= -side_tol; }
}  // namespace

PwPoly::PwPoly(Poly1 l, Poly1 r, double b) : left(std::move(l)), right(std::move(r)), bound(b) {
    auto bl = monotone_interval(left, 2.0 * bound);
    auto br = monotone_interval(right, 2.0 * bound);
    bracket_L = {bl.first, bl.second};
    bracket_R = {br.first, br.second};
}

bool PwPoly::try_inverse(Side s, double y, double& x) const {
    const Poly1& p = piece(s);
    const auto& br = s == Side::Left ? bracket_L : bracket_R;
    double plo = p(br[0]) - y, phi = p(br[1]) - y;
    if (plo * phi > 0.0) return false;
    try {
        x = invert_on(p, y, br[0], br[1], false);
    } catch (const Error&) {
        return false;
    }
    return true;
}

void advance(const PwPoly& m, const OrbitMode& mode, double& x, std::vector<Step>* steps) {
    for (int i = 0; i < mode.k; ++i) {
        Side side;
        if (mode.move == Move::Forward) {
            side = mode.piece == Side::Auto ? (x > 0.0 ? Side::Right : Side::Left) : mode.piece;
            x = m.piece(side)(x);
        } else {
            double out = 0.0;
            if (mode.piece != Side::Auto) {
                side = mode.piece;
                if (!m.try_inverse(side, x, out))
                    fail(ErrorKind::InverseUnbracketed, "piece inverse not bracketed");
            } else if (m.try_inverse(Side::Left, x, out) && out <= 0.0) {
                side = Side::Left;
            } else if (m.try_inverse(Side::Right, x, out) && out >= 0.0) {
                side = Side::Right;
            } else {
                fail(ErrorKind::InverseUnbracketed, "no preimage near the border");
            }
            x = out;
        }
        if (steps) steps->push_back({mode.move, side});
        if (!(std::fabs(x) <= m.bound)) fail(ErrorKind::EscapedBounds, "orbit left the working region");
    }
}

double unwind(const PwPoly& g, double y, const std::vector<Step>& steps) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (it->move == Move::Forward) {
            double out;
            if (!g.try_inverse(it->side, y, out))
                fail(ErrorKind::InverseUnbracketed, "normal-form piece inverse not bracketed");
            if (!on_side(it->side, out))
                fail(ErrorKind::ItineraryMismatch, "normal-form preimage on the wrong side");
            y = out;
        } else {
            if (!on_side(it->side, y))
                fail(ErrorKind::ItineraryMismatch, "normal-form point on the wrong side");
            y = g.piece(it->side)(y);
        }
        if (!(std::fabs(y) <= g.bound)) fail(ErrorKind::EscapedBounds, "normal-form orbit escaped");
    }
    return y;
}

ConjugacyMap::ConjugacyMap(std::vector<Interval> domain, std::function<double(double)> eval,
                           std::string case_tag)
    : domain_(std::move(domain)), eval_(std::move(eval)), case_tag_(std::move(case_tag)) {}

bool ConjugacyMap::contains(double x) const { return interval_of(x) >= 0; }

int ConjugacyMap::interval_of(double x) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (domain_[i].contains(x)) return static_cast<int>(i);
    return -1;
}

double ConjugacyMap::operator()(double x) const {
    if (!contains(x)) fail(ErrorKind::InvalidArgument, "point outside the conjugacy domain");
    return eval_(x);
}

double ConjugacyMap::derivative(double x, double step) const {
    int id = interval_of(x);
    if (id < 0) fail(ErrorKind::InvalidArgument, "point outside the conjugacy domain");
    const Interval& I = domain_[id];
    if (I.contains(x - step) && I.contains(x + step))
        return (eval_(x + step) - eval_(x - step)) / (2.0 * step);
    if (I.contains(x + 2.0 * step))
        return (-3.0 * eval_(x) + 4.0 * eval_(x + step) - eval_(x + 2.0 * step)) / (2.0 * step);
    return (3.0 * eval_(x) - 4.0 * eval_(x - step) + eval_(x - 2.0 * step)) / (2.0 * step);
}

std::vector<Interval> ConjugacyMap::range() const {
    std::vector<Interval> out;
    for (const auto& I : domain_) {
        double eps = 1e-9 * (I.hi - I.lo);
        auto safe = [&](double x) {
            try {
                return eval_(x);
            } catch (const Error&) {
                return std::nan("");
            }
        };
        out.push_back({safe(I.lo + eps), safe(I.hi - eps)});
    }
    return out;
}

double BasinConjugacy::operator()(double x) const {
    std::vector<Step> steps;
    double z = x, y = 0.0;
    const double cx = chart_f->center();
    for (int n = 0;; ++n) {
        double u = z - cx;
        if (u == 0.0) {
            y = chart_g->center();
            break;
        }
        if (std::fabs(u) <= seed_radius &&
            chart_g->try_phi_inverse(scale * chart_f->phi_local(u), y))
            break;
        if (n >= orbit_max_steps) fail(ErrorKind::NoConvergence, "orbit never reached the seed");
        advance(*f, mode, z, &steps);
    }
    return unwind(*g, y, steps);
}

BasinConjugacy match_endpoints(std::shared_ptr<const PwPoly> f, std::shared_ptr<const PwPoly> g,
                               OrbitMode mode, std::shared_ptr<const SeedChart> chart_f,
                               std::shared_ptr<const SeedChart> chart_g, double anchor_x,
                               double anchor_y) {
    double z = anchor_x, w = anchor_y;
    std::vector<Step> sf, sg;
    try {
        for (int n = 0;; ++n) {
            bool in_f = std::fabs(z - chart_f->center()) <= 0.5 * chart_f->radius();
            bool in_g = std::fabs(w - chart_g->center()) <= 0.5 * chart_g->radius();
            if (in_f && in_g) break;
            if (n >= orbit_max_steps) fail(ErrorKind::NoConvergence, "anchor orbit too slow");
            advance(*f, mode, z, &sf);
            advance(*g, mode, w, &sg);
            for (std::size_t i = sf.size() - mode.k; i < sf.size(); ++i)
                if (sf[i].side != sg[i].side)
                    fail(ErrorKind::ItineraryMismatch, "anchor orbits visit different sides");
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ItineraryMismatch) throw;
        fail(ErrorKind::AnchorOutsideDomain, std::string("anchor orbit failed: ") + e.what());
    }
    double pf = chart_f->phi(z), pg = chart_g->phi(w);
    if (pf == 0.0 || !(pg / pf > 0.0))
        fail(ErrorKind::AnchorOutsideDomain, "anchor sits on the fixed point or reverses orientation");
    BasinConjugacy h;
    h.f = std::move(f);
    h.g = std::move(g);
    h.mode = mode;
    h.scale = pg / pf;
    h.seed_radius = std::min(chart_f->radius(), 0.5 * chart_g->radius() / h.scale);
    h.chart_f = std::move(chart_f);
    h.chart_g = std::move(chart_g);
    return h;
}

std::function<double(double)> extend_outward(std::function<double(double)> base,
                                             std::vector<Interval> base_domain,
                                             std::shared_ptr<const PwPoly> f,
                                             std::shared_ptr<const PwPoly> g, OrbitMode mode) {
    return [base = std::move(base), dom = std::move(base_domain), f, g, mode](double x) {
        auto inside = [&](double z) {
            for (const auto& I : dom)
                if (z >= I.lo && z <= I.hi) return true;
            return false;
        };
        std::vector<Step> steps;
        double z = x;
        for (int n = 0; !inside(z); ++n) {
            if (n >= orbit_max_steps) fail(ErrorKind::NoConvergence, "extension orbit never landed");
            advance(*f, mode, z, &steps);
        }
        return unwind(*g, base(z), steps);
    };
}

JumpFunction::JumpFunction(Knot left, Knot right) : a_(left), b_(right) {
    if (!(a_.x < b_.x)) fail(ErrorKind::InvalidArgument, "jump knots out of order");
    if (!(b_.value > a_.value) || !(a_.slope > 0.0) || !(b_.slope > 0.0))
        fail(ErrorKind::NonMonotoneData, "jump data is not increasing");
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        double x = a_.x + (b_.x - a_.x) * i / n;
        if (derivative(x) < 0.0) {
            double delta = (b_.value - a_.value) / (b_.x - a_.x);
            r_ = 1.0 + (a_.slope + b_.slope) / delta;
            break;
        }
    }
}

double JumpFunction::operator()(double x) const {
    double h = b_.x - a_.x, th = (x - a_.x) / h, om = 1.0 - th;
    double A = r_ * b_.value - h * b_.slope, B = r_ * a_.value + h * a_.slope;
    double P = b_.value * th * th * th + A * th * th * om + B * th * om * om + a_.value * om * om * om;
    double Q = 1.0 + (r_ - 3.0) * th * om;
    return P / Q;
}

double JumpFunction::derivative(double x) const {
    double h = b_.x - a_.x, th = (x - a_.x) / h, om = 1.0 - th;
    double A = r_ * b_.value - h * b_.slope, B = r_ * a_.value + h * a_.slope;
    double P = b_.value * th * th * th + A * th * th * om + B * th * om * om + a_.value * om * om * om;
    double dP = 3.0 * b_.value * th * th + A * (2.0 * th - 3.0 * th * th) +
                B * (1.0 - 4.0 * th + 3.0 * th * th) - 3.0 * a_.value * om * om;
    double Q = 1.0 + (r_ - 3.0) * th * om;
    double dQ = (r_ - 3.0) * (1.0 - 2.0 * th);
    return (dP * Q - P * dQ) / (Q * Q * h);
}

JumpFunction build_jump_function(const Knot& left, const Knot& right) { return {left, right}; }

void write_conjugacy_csv(const ConjugacyMap& h, const std::string& path, int samples) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) fail(ErrorKind::IoError, "cannot write " + path);
    std::fprintf(fp, "x,h,h_prime,interval_id\n");
    for (std::size_t k = 0; k < h.domain().size(); ++k) {
        const Interval& I = h.domain()[k];
        for (int i = 0; i < samples; ++i) {
            double x = I.lo + (I.hi - I.lo) * (i + 0.5) / samples;
            double y = NAN, dy = NAN;
            try {
                y = h(x);
                dy = h.derivative(x);
            } catch (const Error&) {
            }
            std::fprintf(fp, "%.17g,%.17g,%.17g,%zu\n", x, y, dy, k);
        }
    }
    std::fclose(fp);
}

}  // namespace bcnf
