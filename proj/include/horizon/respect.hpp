#pragma once

#include "horizon/gallery.hpp"
#include "horizon/limits.hpp"
#include "horizon/metrics.hpp"

namespace horizon {

struct RespectReport {
    size_t handles = 0;
    double max_endpoint_err = 0;     // |endpoint(sbar(p)) - p| over targets
    bool roundtrip_ok = true;        // sbar(endpoint(A)) realizes A
    size_t families = 0;
    size_t verdict_matches = 0;      // d1-convergence == endpoint convergence
};

// Th.-Respect style check for the strip compactification: the endpoint map
// and sbar invert each other, and handle d1-convergence tracks Euclidean
// endpoint convergence.
inline RespectReport respect_check(const Window& w, const CFC& cfc,
                                   const std::vector<IPHandle>& handles,
                                   const std::vector<SetFamily>& families,
                                   const std::vector<std::function<Pt(int)>>& endpoints,
                                   int horizon, double tol) {
    RespectReport rep;
    const Space& sp = w.space;
    MetricCloud cloud = cloud_from_window(w);

    for (const IPHandle& h : handles) {
        ++rep.handles;
        Pt e = endpoint_map(cfc, sp, h, 256, 1e-7);
        IPHandle back = strip_sbar(e);
        IdxSet orig = realize(w, h);
        IdxSet again = realize(w, back);
        if (!equal_margin(w, orig, again)) rep.roundtrip_ok = false;
        // sbar of an interior image point returns the PIP of its preimage
        if (h.is_pip()) {
            Pt p = h.vertex();
            rep.max_endpoint_err = std::max(rep.max_endpoint_err, euclid(e, p, 2));
        }
    }

    for (size_t fi = 0; fi < families.size(); ++fi) {
        ++rep.families;
        // endpoint convergence: Cauchy tail of the Euclidean endpoints
        Pt last = endpoints[fi](horizon);
        double furthest = 0;
        for (int n = horizon / 2; n <= horizon; ++n)
            furthest = std::max(furthest, euclid(endpoints[fi](n), last, 2));
        bool endpoint_conv = furthest <= 4.0 * w.h;

        IdxSet tail_set = realize_at(w, families[fi], horizon);
        bool d1_conv = true;
        for (int n = horizon / 2; n <= horizon; ++n) {
            IdxSet an = realize_at(w, families[fi], n);
            if (an.none() || tail_set.none() || d1(cloud, an, tail_set) > std::max(tol, 2 * w.h))
                d1_conv = false;
        }
        if (d1_conv == endpoint_conv) ++rep.verdict_matches;
    }
    return rep;
}

}  // namespace horizon
