#pragma once

#include "horizon/limits.hpp"
#include "horizon/metrics.hpp"

namespace horizon {

struct TfaeVector {
    bool d1_form = false;          // (1)
    bool measure_form = false;     // (2)
    bool hausdorff_form = false;   // (3)
    bool set_limit_form = false;   // (4)
    bool interior_form = false;    // (5) diagnostic
    bool closure_form = false;     // (6) diagnostic
    bool selection_form = false;   // (7) diagnostic
    bool l_plus_form = false;      // (8)
    bool tau_seq_form = false;     // (9) = (8)
    bool graph_form = false;       // (*)
    bool indeterminate = false;

    bool consistent_core() const {
        return d1_form == measure_form && d1_form == hausdorff_form &&
               d1_form == set_limit_form && d1_form == l_plus_form && d1_form == graph_form;
    }
};

inline IdxSet box_mask(const Window& w, const Box& k) {
    IdxSet s(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        if (w.ok[i] && k.contains(w.pts[i])) s.set(i);
    return s;
}

namespace detail {

inline IdxSet dilate(const Window& w, const IdxSet& a) {
    IdxSet out = a;
    const double r = 1.5 * w.h;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!w.ok[i] || a.test(i)) continue;
        bool near = false;
        a.for_each([&](size_t j) {
            if (!near && w.space.dist(w.pts[i], w.pts[j]) <= r) near = true;
        });
        if (near) out.set(i);
    }
    return out;
}
inline IdxSet interior(const Window& w, const IdxSet& a) {
    IdxSet out(w.size());
    const double r = 1.5 * w.h;
    a.for_each([&](size_t i) {
        bool deep = true;
        for (size_t j = 0; j < w.size() && deep; ++j) {
            if (!w.ok[j] || a.test(j)) continue;
            if (w.space.dist(w.pts[i], w.pts[j]) <= r) deep = false;
        }
        if (deep) out.set(i);
    });
    return out;
}

}  // namespace detail

// Runs the equivalence battery for one family against one candidate.
// Core conditions (1),(2),(3),(4),(8),(*) gate; (5),(6),(7) are reported
// as diagnostics with doubled margins.
inline TfaeVector tfae_battery(const Window& w, const SetFamily& fam, const IPHandle& cand,
                               int horizon, double tol, uint64_t seed = 1,
                               int depth = kDefaultDepth) {
    TfaeVector out;
    MetricCloud cloud = cloud_from_window(w);
    IdxSet cr = realize(w, cand, depth);

    std::vector<Box> subwindows;
    {
        Box b1 = w.box, b2 = w.box;
        double tm = 0.5 * (w.box.lo[0] + w.box.hi[0]);
        double xm = 0.5 * (w.box.lo[1] + w.box.hi[1]);
        b1.hi[0] = tm;  // lower half
        b2.lo[1] = xm;  // right half
        subwindows = {w.box, b1, b2};
    }

    // tail realizations
    std::vector<IdxSet> tail;
    for (int n = horizon / 2; n <= horizon; ++n) tail.push_back(realize_at(w, fam, n, depth));

    // (1)
    bool ok1 = true;
    for (const auto& an : tail) {
        if (an.none() || cr.none()) {
            ok1 = false;
            break;
        }
        if (d1(cloud, an, cr) > tol) {
            ok1 = false;
            break;
        }
    }
    out.d1_form = ok1;

    // (2): three weightings, all sub-windows
    bool ok2 = true;
    for (const char* kind : {"uniform", "radial", "random"}) {
        MetricCloud wc = cloud;
        wc.mu = make_weights(cloud, kind, seed);
        for (const Box& k : subwindows) {
            IdxSet mask = box_mask(w, k);
            for (const auto& an : tail)
                if (delta_mu(wc, an & mask, cr & mask) > tol) ok2 = false;
        }
    }
    out.measure_form = ok2;

    // (3): windowed Hausdorff
    bool ok3 = true;
    for (const Box& k : subwindows) {
        IdxSet mask = box_mask(w, k);
        for (const auto& an : tail) {
            double dh = hausdorff(cloud, an & mask, cr & mask);
            if (dh > std::max(tol, 0.0)) ok3 = false;
        }
    }
    out.hausdorff_form = ok3;

    // (4)
    TailSets ts = set_limits(w, fam, horizon, depth);
    out.indeterminate = ts.indeterminate;
    IdxSet ilm = chron_past(w, ts.liminf), ils = chron_past(w, ts.limsup);
    out.set_limit_form = equal_margin(w, ilm, cr) && equal_margin(w, ils, cr) && !ts.indeterminate;

    // (5),(6),(7): diagnostics at doubled margin
    {
        IdxSet int_lm = detail::interior(w, ts.liminf), int_ls = detail::interior(w, ts.limsup);
        IdxSet cl_lm = detail::dilate(w, ts.liminf), cl_ls = detail::dilate(w, ts.limsup);
        IdxSet cl_cand = detail::dilate(w, cr);
        // interior/closure surrogates carry an extra boundary collar, so
        // these diagnostics tolerate a 1%-of-cells disagreement
        auto loose_eq = [&](const IdxSet& a, const IdxSet& b) {
            return core_diff_count(w, a, b) <= std::max<size_t>(4, w.size() / 100);
        };
        out.interior_form = loose_eq(int_lm, cr) && loose_eq(int_ls, cr);
        out.closure_form = loose_eq(cl_lm, cl_cand) && loose_eq(cl_ls, cl_cand);

        // (7): selection-sequence limits from distance tails
        std::vector<std::vector<double>> dfs;
        for (const auto& an : tail) dfs.push_back(dist_field(cloud, an));
        IdxSet tilde_inf(w.size()), tilde_sup(w.size());
        for (size_t i = 0; i < w.size(); ++i) {
            if (!w.ok[i]) continue;
            double worst = 0, best = kInf;
            for (const auto& df : dfs) {
                worst = std::max(worst, df[i]);
                best = std::min(best, df[i]);
            }
            if (worst <= 1.5 * w.h) tilde_inf.set(i);
            if (best <= 1.5 * w.h) tilde_sup.set(i);
        }
        out.selection_form = loose_eq(tilde_inf, cl_cand) && loose_eq(tilde_sup, cl_cand);
    }

    // (8) and (9)
    LimitVerdict lv = l_plus(w, fam, {cand}, horizon, depth);
    out.l_plus_form = (lv.candidates.size() == 1) && !lv.indeterminate;
    out.tau_seq_form = out.l_plus_form;

    // (*): graph functions on product windows
    {
        std::vector<double> fc = graph_fn(w, cr);
        bool okg = true;
        for (const auto& an : tail)
            if (graph_gap(w, graph_fn(w, an), fc) > tol) okg = false;
        out.graph_form = okg;
    }
    return out;
}

}  // namespace horizon
