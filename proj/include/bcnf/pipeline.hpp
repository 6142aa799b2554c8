#pragma once

#include <functional>
#include <vector>

#include "bcnf/conjugacy.hpp"
#include "bcnf/map.hpp"
#include "bcnf/normal_form.hpp"
#include "bcnf/region.hpp"

namespace bcnf {

// A map at one parameter value, brought into the frame where the covered
// theorems apply (x -> -x, mu -> -mu for mirrored regions).
struct Analysis {
    PiecewiseMap map;
    double mu = 0.0;
    BifurcationData data;
    RegionClass region;

    bool reflected = false;
    PiecewiseMap frame_map;
    double frame_mu = 0.0;
    BifurcationData frame_data;
    RegionClass frame_region;
    NormalFormMap g;  // in the reduced frame

    std::vector<ConjugacyMap> h;  // original coordinates, filled by build_conjugacies
};

// Classifies and matches the normal form; throws RegionUnsupported when the
// region or its reduction is not covered.
Analysis analyze(const PiecewiseMap& map, double mu);
void build_conjugacies(Analysis& a);

// f and g in original coordinates.
double f_original(const Analysis& a, double x);
double g_original(const Analysis& a, double y);

}  // namespace bcnf
