#include "bcnf/map.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bcnf/error.hpp"

namespace bcnf {

const char* to_string(Side s) {
    switch (s) {
        case Side::Left: return "L";
        case Side::Right: return "R";
        case Side::Auto: return "auto";
    }
    return "?";
}

SmoothPiece::SmoothPiece(int max_degree) : degree_(max_degree) {
    if (max_degree < 1) fail(ErrorKind::InvalidArgument, "piece degree must be at least 1");
    c_.assign(static_cast<std::size_t>(degree_ + 1) * (degree_ + 1), 0.0);
}

SmoothPiece SmoothPiece::from_triples(const std::vector<std::array<double, 3>>& triples,
                                      int max_degree) {
    int d = max_degree;
    for (const auto& t : triples) {
        if (t[0] < 0 || t[1] < 0 || t[0] != std::floor(t[0]) || t[1] != std::floor(t[1]))
            fail(ErrorKind::InvalidArgument, "coefficient powers must be non-negative integers");
        d = std::max(d, static_cast<int>(t[0] + t[1]));
    }
    SmoothPiece piece(d);
    for (const auto& t : triples)
        piece.set(static_cast<int>(t[0]), static_cast<int>(t[1]),
                  piece.coeff(static_cast<int>(t[0]), static_cast<int>(t[1])) + t[2]);
    return piece;
}

void SmoothPiece::set(int i, int j, double value) {
    if (i < 0 || j < 0 || i + j > degree_)
        fail(ErrorKind::InvalidArgument, "coefficient index outside total degree");
    c_[idx(i, j)] = value;
}

double SmoothPiece::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > degree_) return 0.0;
    return c_[idx(i, j)];
}

Poly1 SmoothPiece::at(double mu) const {
    std::vector<double> a(static_cast<std::size_t>(degree_ + 1), 0.0);
    for (int i = 0; i <= degree_; ++i) {
        double s = 0.0;
        for (int j = degree_ - i; j >= 0; --j) s = s * mu + c_[idx(i, j)];
        a[i] = s;
    }
    return Poly1(std::move(a));
}

double SmoothPiece::eval(double x, double mu) const { return at(mu)(x); }

double SmoothPiece::dx(double x, double mu, int order) const { return at(mu).derivative(x, order); }

void validate(const PiecewiseMap& map) {
    if (!(map.p > 0.0)) fail(ErrorKind::InvalidArgument, "p must be positive");
    if (!(map.mu_lo <= 0.0 && map.mu_hi >= 0.0))
        fail(ErrorKind::InvalidArgument, "mu range must contain 0");
    int d = std::max(map.left.max_degree(), map.right.max_degree());
    for (int j = 0; j <= d; ++j)
        if (map.left.coeff(0, j) != map.right.coeff(0, j))
            fail(ErrorKind::ContinuityViolation,
                 "pieces disagree at x = 0 in the mu^" + std::to_string(j) + " coefficient");
    if (map.left.coeff(0, 0) != 0.0)
        fail(ErrorKind::BorderCollisionViolation, "f(0; 0) must vanish");
}

double evaluate(const PiecewiseMap& map, double x, double mu) {
    return x > 0.0 ? map.right.eval(x, mu) : map.left.eval(x, mu);
}

double derivative(const PiecewiseMap& map, double x, double mu, int order, Side side) {
    if (order < 1 || order > 3) fail(ErrorKind::InvalidArgument, "derivative order must be 1, 2 or 3");
    if (side == Side::Auto) {
        if (x == 0.0) fail(ErrorKind::AmbiguousSide, "derivative at the switching manifold needs a side");
        side = x < 0.0 ? Side::Left : Side::Right;
    }
    return (side == Side::Left ? map.left : map.right).dx(x, mu, order);
}

BifurcationData extract_bifurcation_data(const PiecewiseMap& map) {
    if (map.left.coeff(0, 1) != map.right.coeff(0, 1))
        fail(ErrorKind::BetaMismatch, "pieces have different mu coefficients at x = 0");
    validate(map);
    BifurcationData d;
    d.beta = map.left.coeff(0, 1);
    if (!(d.beta > 0.0)) fail(ErrorKind::BetaNotPositive, "beta must be positive");
    d.a_L = map.left.coeff(1, 0);
    d.a_R = map.right.coeff(1, 0);
    d.c_L = map.left.coeff(2, 0);
    d.c_R = map.right.coeff(2, 0);
    d.d_L = map.left.coeff(1, 1);
    d.d_R = map.right.coeff(1, 1);
    d.e = map.left.coeff(0, 2);
    return d;
}

double invert_piece(const SmoothPiece& piece, double y, double mu, double lo, double hi) {
    return invert_on(piece.at(mu), y, lo, hi);
}

Orbit iterate(const PiecewiseMap& map, double x0, double mu, int n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "orbit length must be non-negative");
    Orbit o;
    Poly1 fl = map.left.at(mu), fr = map.right.at(mu);
    double x = x0;
    for (int k = 0; k <= n; ++k) {
        if (!(std::fabs(x) < map.p)) {
            o.escaped = true;
            o.escape_value = x;
            break;
        }
        o.points.push_back(x);
        if (k < n) x = x > 0.0 ? fr(x) : fl(x);
    }
    return o;
}

PiecewiseMap reflect(const PiecewiseMap& map) {
    // f~(x; m) = -f(-x; -m): c~[i][j] = -c[i][j] (-1)^(i+j), sides swapped.
    auto flip = [](const SmoothPiece& src) {
        SmoothPiece out(src.max_degree());
        for (int i = 0; i <= src.max_degree(); ++i)
            for (int j = 0; i + j <= src.max_degree(); ++j)
                out.set(i, j, ((i + j) % 2 == 0 ? -1.0 : 1.0) * src.coeff(i, j));
        return out;
    };
    PiecewiseMap r;
    r.left = flip(map.right);
    r.right = flip(map.left);
    r.p = map.p;
    r.mu_lo = -map.mu_hi;
    r.mu_hi = -map.mu_lo;
    return r;
}

namespace {

SmoothPiece piece_from_json(const nlohmann::json& j, int degree) {
    std::vector<std::array<double, 3>> triples;
    if (!j.is_array()) fail(ErrorKind::ConfigError, "piece must be an array of [i, j, c] triples");
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3)
            fail(ErrorKind::ConfigError, "piece entries must be [i, j, c] triples");
        triples.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
    }
    return SmoothPiece::from_triples(triples, degree);
}

nlohmann::json piece_to_json(const SmoothPiece& s) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i <= s.max_degree(); ++i)
        for (int j = 0; i + j <= s.max_degree(); ++j)
            if (s.coeff(i, j) != 0.0) out.push_back({i, j, s.coeff(i, j)});
    return out;
}

}  // namespace

PiecewiseMap map_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("map JSON: ") + e.what());
    }
    PiecewiseMap m;
    try {
        int degree = j.value("degree", 3);
        m.left = piece_from_json(j.at("left"), degree);
        m.right = piece_from_json(j.at("right"), degree);
        m.p = j.value("p", 0.1);
        if (j.contains("mu_range")) {
            m.mu_lo = j["mu_range"].at(0).get<double>();
            m.mu_hi = j["mu_range"].at(1).get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigError, std::string("map JSON: ") + e.what());
    }
    validate(m);
    return m;
}

PiecewiseMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return map_from_json(ss.str());
}

std::string map_to_json(const PiecewiseMap& map) {
    nlohmann::ordered_json j;
    j["left"] = piece_to_json(map.left);
    j["right"] = piece_to_json(map.right);
    j["p"] = map.p;
    j["mu_range"] = {map.mu_lo, map.mu_hi};
    return j.dump();
}

}  // namespace bcnf
