#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bcnf/map.hpp"
#include "bcnf/normal_form.hpp"
#include "bcnf/region.hpp"
#include "bcnf/seed_chart.hpp"

namespace bcnf {

inline constexpr double tol_conj = 1e-7;
inline constexpr int orbit_max_steps = 10000;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return x > lo && x < hi; }
};

// Two polynomial pieces with monotone brackets for their inverses.
struct PwPoly {
    Poly1 left, right;
    double bound = 0.0;  // orbits leaving |x| <= bound are rejected
    std::array<double, 2> bracket_L{}, bracket_R{};

    PwPoly() = default;
    PwPoly(Poly1 l, Poly1 r, double bound);
    const Poly1& piece(Side s) const { return s == Side::Left ? left : right; }
    double operator()(double x) const { return x > 0.0 ? right(x) : left(x); }
    bool try_inverse(Side s, double y, double& x) const;
};

enum class Move { Forward, Inverse };

// How the basin is swept toward the seed: k elementary moves per application,
// restricted to one piece or (Side::Auto) using the full map.
struct OrbitMode {
    Move move = Move::Forward;
    int k = 1;
    Side piece = Side::Auto;
};

struct Step {
    Move move;
    Side side;
};

class ConjugacyMap {
public:
    ConjugacyMap() = default;
    ConjugacyMap(std::vector<Interval> domain, std::function<double(double)> eval,
                 std::string case_tag);

    const std::vector<Interval>& domain() const { return domain_; }
    std::vector<Interval> range() const;
    const std::string& case_tag() const { return case_tag_; }
    bool contains(double x) const;
    int interval_of(double x) const;  // -1 when outside

    double operator()(double x) const;
    double eval_unchecked(double x) const { return eval_(x); }
    double derivative(double x, double step = 1e-6) const;

    // Corresponding invariant points (x*, y*) used by the construction.
    std::vector<std::array<double, 2>> fixed_pairs;

private:
    std::vector<Interval> domain_;
    std::function<double(double)> eval_;
    std::string case_tag_;
};

// Koenigs-anchored conjugacy on a basin: iterate x toward the f-chart
// centre, map through psi^{-1}(c phi), unwind with the matching g pieces.
struct BasinConjugacy {
    std::shared_ptr<const PwPoly> f, g;
    OrbitMode mode;
    std::shared_ptr<const SeedChart> chart_f, chart_g;
    double scale = 1.0;        // the linear factor c in psi^{-1}(c phi)
    double seed_radius = 0.0;  // effective radius on the f side

    double operator()(double x) const;
};

// Elementary bookkeeping, exposed for the verifier and tests.
void advance(const PwPoly& m, const OrbitMode& mode, double& x, std::vector<Step>* steps);
double unwind(const PwPoly& g, double y, const std::vector<Step>& steps);

// Scale c so that h(anchor_x) = anchor_y; throws AnchorOutsideDomain.
BasinConjugacy match_endpoints(std::shared_ptr<const PwPoly> f, std::shared_ptr<const PwPoly> g,
                               OrbitMode mode, std::shared_ptr<const SeedChart> chart_f,
                               std::shared_ptr<const SeedChart> chart_g, double anchor_x,
                               double anchor_y);

// h on points outside `base_domain`: apply f (Forward) or the inverse
// (Inverse, restricted to `piece`) until the orbit enters the base domain,
// then undo the moves with the same-side pieces of g.
std::function<double(double)> extend_outward(std::function<double(double)> base,
                                             std::vector<Interval> base_domain,
                                             std::shared_ptr<const PwPoly> f,
                                             std::shared_ptr<const PwPoly> g, OrbitMode mode);

struct Knot {
    double x, value, slope;
};

class JumpFunction {
public:
    JumpFunction(Knot left, Knot right);
    double operator()(double x) const;
    double derivative(double x) const;
    bool rational() const { return r_ != 3.0; }

private:
    Knot a_, b_;
    double r_ = 3.0;  // 3 gives the cubic Hermite interpolant
};

JumpFunction build_jump_function(const Knot& left, const Knot& right);

std::vector<ConjugacyMap> build_conjugacy(const PiecewiseMap& f, const NormalFormMap& g, double mu,
                                          const RegionClass& region);

// Samples per interval: x, h, h', interval_id.
void write_conjugacy_csv(const ConjugacyMap& h, const std::string& path, int samples);

}  // namespace bcnf
