#include "bcnf/poly.hpp"

#include <algorithm>
#include <sstream>

#include "bcnf/error.hpp"

namespace bcnf {

Poly1::Poly1(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

double Poly1::operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly1::derivative(double x, int order) const {
    double acc = 0.0;
    const int n = degree();
    for (int k = n; k >= order; --k) {
        double f = 1.0;
        for (int m = 0; m < order; ++m) f *= static_cast<double>(k - m);
        acc = acc * x + f * c_[k];
    }
    return acc;
}

Poly1 Poly1::derivative_poly() const {
    if (degree() == 0) return Poly1({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly1(std::move(d));
}

Poly1 Poly1::shifted(double x0) const {
    // repeated synthetic division gives the Taylor coefficients at x0
    std::vector<double> a = c_;
    const int n = degree();
    for (int k = 0; k <= n; ++k)
        for (int j = n - 1; j >= k; --j) a[j] += x0 * a[j + 1];
    return Poly1(std::move(a));
}

Poly1 Poly1::scaled(double s) const {
    std::vector<double> a = c_;
    for (double& v : a) v *= s;
    return Poly1(std::move(a));
}

Poly1 Poly1::plus_constant(double c) const {
    std::vector<double> a = c_;
    a[0] += c;
    return Poly1(std::move(a));
}

std::pair<double, double> monotone_interval(const Poly1& p, double reach) {
    const double d0 = p.derivative(0.0);
    if (d0 == 0.0) fail(ErrorKind::NotMonotoneOnBracket, "derivative vanishes at the switch");
    const int n = 512;
    auto edge = [&](double dir) {
        double prev = 0.0;
        for (int k = 1; k <= n; ++k) {
            double x = dir * reach * k / n;
            if (p.derivative(x) * d0 <= 0.0) {
                double a = prev, b = x;
                for (int it = 0; it < 80; ++it) {
                    double m = 0.5 * (a + b);
                    if (p.derivative(m) * d0 > 0.0) a = m; else b = m;
                }
                return a;
            }
            prev = x;
        }
        return dir * reach;
    };
    return {edge(-1.0), edge(1.0)};
}

double invert_on(const Poly1& p, double y, double lo, double hi, bool check_monotone) {
    if (!(lo < hi)) fail(ErrorKind::InvalidArgument, "empty bracket");
    const double plo = p(lo) - y, phi = p(hi) - y;
    if (plo * phi > 0.0) {
        std::ostringstream os;
        os << "value " << y << " not bracketed by [" << p(lo) << ", " << p(hi) << "]";
        fail(ErrorKind::NotBracketed, os.str());
    }
    if (check_monotone) {
        const double s = p.derivative(0.5 * (lo + hi));
        const int samples = 64;
        for (int k = 0; k <= samples; ++k) {
            double x = lo + (hi - lo) * k / samples;
            if (p.derivative(x) * s <= 0.0)
                fail(ErrorKind::NotMonotoneOnBracket, "derivative changes sign on bracket");
        }
    }
    // affine start keeps Newton inside the bracket for near-linear pieces
    double x0 = lo + (hi - lo) * (plo / (plo - phi));
    RootResult r = safeguarded_newton([&](double x) { return p(x) - y; },
                                      [&](double x) { return p.derivative(x); }, lo, hi, x0);
    if (!r.converged && std::fabs(p(r.x) - y) > tol_root)
        fail(ErrorKind::NoConvergence, "piece inversion did not converge");
    return r.x;
}

}  // namespace bcnf
