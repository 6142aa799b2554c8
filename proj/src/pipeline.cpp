#include "bcnf/pipeline.hpp"

#include <algorithm>

#include "bcnf/error.hpp"

namespace bcnf {

Analysis analyze(const PiecewiseMap& map, double mu) {
    Analysis a;
    a.map = map;
    a.mu = mu;
    a.data = extract_bifurcation_data(map);
    a.region = classify(a.data.a_L, a.data.a_R);
    if (a.region.kind == RegionKind::OutOfScope)
        fail(ErrorKind::RegionUnsupported, "slopes are outside the covered regions");
    if (a.region.reduction == Reduction::InverseMap ||
        a.region.reduction == Reduction::FlipXAndInverse)
        fail(ErrorKind::RegionUnsupported,
             "this region reduces to the covered one through the inverse map; apply the toolkit "
             "to the numerically inverted map");
    a.reflected = a.region.reduction == Reduction::FlipX;
    a.frame_map = a.reflected ? reflect(map) : map;
    a.frame_mu = a.reflected ? -mu : mu;
    a.frame_data = extract_bifurcation_data(a.frame_map);
    a.frame_region = classify(a.frame_data.a_L, a.frame_data.a_R);
    a.g = build_normal_form(a.frame_data, a.frame_map, a.frame_mu, a.frame_region);
    return a;
}

void build_conjugacies(Analysis& a) {
    auto hs = build_conjugacy(a.frame_map, a.g, a.frame_mu, a.frame_region);
    if (!a.reflected) {
        a.h = std::move(hs);
        return;
    }
    a.h.clear();
    for (const auto& ht : hs) {
        std::vector<Interval> dom;
        for (auto it = ht.domain().rbegin(); it != ht.domain().rend(); ++it)
            dom.push_back({-it->hi, -it->lo});
        ConjugacyMap h(dom, [ht](double x) { return -ht.eval_unchecked(-x); }, ht.case_tag());
        for (const auto& fp : ht.fixed_pairs) h.fixed_pairs.push_back({-fp[0], -fp[1]});
        a.h.push_back(std::move(h));
    }
}

double f_original(const Analysis& a, double x) { return evaluate(a.map, x, a.mu); }

double g_original(const Analysis& a, double y) { return a.reflected ? -a.g(-y) : a.g(y); }

}  // namespace bcnf
