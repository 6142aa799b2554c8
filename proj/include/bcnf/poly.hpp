#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace bcnf {

inline constexpr double tol_root = 1e-12;
inline constexpr int newton_max_iter = 60;

// Univariate polynomial sum c[k] x^k.
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<double> coeffs);

    double operator()(double x) const;
    double derivative(double x, int order = 1) const;
    Poly1 derivative_poly() const;
    // q(u) = p(x0 + u)
    Poly1 shifted(double x0) const;
    Poly1 scaled(double s) const;
    Poly1 plus_constant(double c) const;

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }

private:
    std::vector<double> c_{0.0};
};

struct RootResult {
    double x;
    int iters;
    bool converged;
};

// Newton on [lo, hi] falling back to bisection whenever a step leaves the
// bracket or fails to halve the residual.  g(lo) and g(hi) must differ in sign.
template <class G, class DG>
RootResult safeguarded_newton(G&& g, DG&& dg, double lo, double hi, double x0,
                              int max_iter = newton_max_iter) {
    double glo = g(lo);
    if (glo == 0.0) return {lo, 0, true};
    double ghi = g(hi);
    if (ghi == 0.0) return {hi, 0, true};
    if (glo > 0.0) std::swap(lo, hi);  // g(lo) < 0 < g(hi) from here on
    double x = (x0 > std::min(lo, hi) && x0 < std::max(lo, hi)) ? x0 : 0.5 * (lo + hi);
    double dx_old = std::fabs(hi - lo);
    double dx = dx_old;
    double gx = g(x);
    double dgx = dg(x);
    for (int it = 1; it <= max_iter; ++it) {
        bool newton_out = ((x - hi) * dgx - gx) * ((x - lo) * dgx - gx) > 0.0;
        bool slow = std::fabs(2.0 * gx) > std::fabs(dx_old * dgx);
        dx_old = dx;
        if (newton_out || slow || dgx == 0.0) {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx = gx / dgx;
            x -= dx;
        }
        if (std::fabs(dx) <= 4e-16 * std::max(std::fabs(x), 1e-300)) return {x, it, true};
        gx = g(x);
        dgx = dg(x);
        if (gx == 0.0) return {x, it, true};
        if (gx < 0.0) lo = x; else hi = x;
    }
    return {x, max_iter, false};
}

// Largest interval [lo, hi] containing 0 and inside [-reach, reach] on which p'
// keeps the sign of p'(0).
std::pair<double, double> monotone_interval(const Poly1& p, double reach);

// Solve p(x) = y for x in [lo, hi]; p must be strictly monotone there.
// With check_monotone=false the caller vouches for monotonicity.
double invert_on(const Poly1& p, double y, double lo, double hi, bool check_monotone = true);

}  // namespace bcnf
