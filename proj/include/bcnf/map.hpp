#pragma once

#include <array>
#include <string>
#include <vector>

#include "bcnf/poly.hpp"

namespace bcnf {

enum class Side { Left, Right, Auto };

const char* to_string(Side s);

// Bivariate polynomial sum c[i][j] x^i mu^j with i + j <= D.
class SmoothPiece {
public:
    explicit SmoothPiece(int max_degree = 3);

    // (x-power, mu-power, value) triples; D grows to fit the largest i + j.
    static SmoothPiece from_triples(const std::vector<std::array<double, 3>>& triples,
                                    int max_degree = 3);

    void set(int i, int j, double value);
    double coeff(int i, int j) const;
    int max_degree() const { return degree_; }

    double eval(double x, double mu) const;
    double dx(double x, double mu, int order) const;
    Poly1 at(double mu) const;  // polynomial in x at fixed mu

private:
    int degree_;
    std::vector<double> c_;  // (D+1) x (D+1), row i = power of x
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * (degree_ + 1) + j; }
};

struct PiecewiseMap {
    SmoothPiece left;
    SmoothPiece right;
    double p = 0.1;  // N = (-p, p)
    double mu_lo = -0.1;
    double mu_hi = 0.1;
};

struct BifurcationData {
    double a_L = 0.0, a_R = 0.0;
    double beta = 0.0;
    double c_L = 0.0, c_R = 0.0;
    double d_L = 0.0, d_R = 0.0;
    double e = 0.0;
};

// Throws ContinuityViolation / BorderCollisionViolation / InvalidArgument.
void validate(const PiecewiseMap& map);

double evaluate(const PiecewiseMap& map, double x, double mu);
double derivative(const PiecewiseMap& map, double x, double mu, int order, Side side);
BifurcationData extract_bifurcation_data(const PiecewiseMap& map);
double invert_piece(const SmoothPiece& piece, double y, double mu, double lo, double hi);

struct Orbit {
    std::vector<double> points;  // x0, f(x0), ... while inside (-p, p)
    bool escaped = false;
    double escape_value = 0.0;   // first iterate outside (-p, p)
};
Orbit iterate(const PiecewiseMap& map, double x0, double mu, int n);

// Mirror image x -> -x, mu -> -mu; keeps beta and swaps the pieces.
PiecewiseMap reflect(const PiecewiseMap& map);

PiecewiseMap map_from_json(const std::string& text);
PiecewiseMap load_map(const std::string& path);
std::string map_to_json(const PiecewiseMap& map);

}  // namespace bcnf
