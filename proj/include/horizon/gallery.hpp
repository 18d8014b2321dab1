#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "horizon/gridgraph.hpp"
#include "horizon/ip.hpp"
#include "horizon/space.hpp"

namespace horizon {

// ---------------------------------------------------------------------------
// Flat 1+1 helpers

inline bool mink_chron(const Pt& p, const Pt& q) {
    return q.t() - p.t() > std::abs(q.x() - p.x());
}
inline bool mink_causal(const Pt& p, const Pt& q) {
    if (p == q) return true;
    return q.t() - p.t() >= std::abs(q.x() - p.x());
}

inline double circ_dist(double a, double b, double circumference) {
    double d = std::fmod(std::abs(a - b), circumference);
    return std::min(d, circumference - d);
}

// Unwrapped-grapefruit conformal profile: 2 on the band, 1 outside, a
// clamped cubic in between, symmetric.
inline double grapefruit_profile(double y) {
    double a = std::abs(y);
    if (a <= 1.0) return 2.0;
    if (a >= 2.0) return 1.0;
    double u = 2.0 - a;  // in (0,1)
    double s = u * u * (3.0 - 2.0 * u);
    return 1.0 + s;
}

// Shared slice geometry for the ultrastatic grapefruit: geodesic distances
// on (R^2, f(y) g_0) via a weighted grid, cached per source node.
struct SliceMetric {
    GridGraph grid;
    mutable std::map<size_t, std::shared_ptr<const std::vector<double>>> cache;
    mutable std::mutex mu;

    const std::vector<double>& field(size_t src) const {
        {
            std::lock_guard<std::mutex> lk(mu);
            auto it = cache.find(src);
            if (it != cache.end()) return *it->second;
        }
        auto f = std::make_shared<const std::vector<double>>(grid.distance_field(src));
        std::lock_guard<std::mutex> lk(mu);
        auto [it, inserted] = cache.emplace(src, f);
        return *it->second;
    }
    double d(double x1, double y1, double x2, double y2) const {
        size_t s = grid.nearest(x1, y1), t = grid.nearest(x2, y2);
        return field(s)[t];
    }
};

inline std::shared_ptr<SliceMetric> make_grapefruit_slice(double x0, double x1, double y0,
                                                          double y1, double h) {
    auto sm = std::make_shared<SliceMetric>();
    sm->grid.x0 = x0;
    sm->grid.y0 = y0;
    sm->grid.h = h;
    sm->grid.nx = size_t(std::lround((x1 - x0) / h)) + 1;
    sm->grid.ny = size_t(std::lround((y1 - y0) / h)) + 1;
    sm->grid.conformal = [](double, double y) { return grapefruit_profile(y); };
    return sm;
}

// ---------------------------------------------------------------------------
// make_space

inline Space make_space(const std::string& name, double h) {
    Space sp;
    sp.name = name;
    sp.dim = 2;
    sp.dist = [](const Pt& a, const Pt& b) { return euclid(a, b, 2); };
    sp.admissible = [](const Pt&) { return true; };

    if (name == "strip") {
        sp.chron = mink_chron;
        sp.causal = mink_causal;
        sp.causal_pushup = true;
        sp.admissible = [](const Pt& p) {
            return p.t() > 0 && p.t() < 1 && p.x() > 0 && p.x() < 1;
        };
        sp.default_box = Box::make2(0, 1, 0, 1);
        return sp;
    }
    if (name == "minkowski2") {
        sp.chron = mink_chron;
        sp.causal = mink_causal;
        sp.causal_pushup = true;
        sp.default_box = Box::make2(-2, 2, -2, 2);
        return sp;
    }
    if (name == "punctured") {
        // R^{1,1} minus the origin: chronology is unobstructed (timelike
        // curves dodge a point), the causal relation loses exactly the
        // null pairs whose unique null segment passes through 0.
        sp.admissible = [](const Pt& p) { return !(p.t() == 0.0 && p.x() == 0.0); };
        sp.chron = mink_chron;
        sp.causal_pushup = true;
        sp.causal = [](const Pt& p, const Pt& q) {
            if (p == q) return true;
            double dt = q.t() - p.t(), dx = q.x() - p.x();
            if (dt < std::abs(dx)) return false;
            if (dt > std::abs(dx) + 1e-12) return true;
            // null: blocked iff the segment crosses the origin strictly inside
            double cross = p.t() * q.x() - p.x() * q.t();
            bool through_origin = std::abs(cross) < 1e-9 && p.t() < 0.0 && q.t() > 0.0;
            return !through_origin;
        };
        sp.default_box = Box::make2(-2, 2, -2, 2);
        return sp;
    }
    if (name == "slit") {
        // R^{1,1} minus the spacelike ray {x0 = 0, x1 > 0}; the origin stays.
        // Curves from below must cross the t=0 line at x <= 0.
        sp.admissible = [](const Pt& p) { return !(p.t() == 0.0 && p.x() > 0.0); };
        sp.chron = [](const Pt& p, const Pt& q) {
            if (!(p.t() < q.t())) return false;
            if (p.t() < 0.0 && q.t() > 0.0) {
                double lo = std::max(p.x() + p.t(), q.x() - q.t());
                double hi = std::min(p.x() - p.t(), q.x() + q.t());
                return lo < hi && lo < 0.0;
            }
            return mink_chron(p, q);
        };
        sp.causal = [](const Pt& p, const Pt& q) {
            if (p == q) return true;
            if (!(p.t() <= q.t())) return false;
            if (p.t() < 0.0 && q.t() > 0.0) {
                double lo = std::max(p.x() + p.t(), q.x() - q.t());
                double hi = std::min(p.x() - p.t(), q.x() + q.t());
                return lo <= hi && lo <= 0.0;
            }
            return mink_causal(p, q);
        };
        sp.default_box = Box::make2(-4, 4, -4, 4);
        return sp;
    }
    if (name == "cylinder") {
        const double C = 2.0 * M_PI;
        sp.periodic_x = true;
        sp.causal_pushup = true;
        sp.circumference = C;
        sp.chron = [C](const Pt& p, const Pt& q) {
            return circ_dist(p.x(), q.x(), C) < q.t() - p.t();
        };
        sp.causal = [C](const Pt& p, const Pt& q) {
            if (p == q) return true;
            return circ_dist(p.x(), q.x(), C) <= q.t() - p.t();
        };
        sp.dist = [C](const Pt& a, const Pt& b) {
            double dth = circ_dist(a.x(), b.x(), C);
            return std::hypot(a.t() - b.t(), dth);
        };
        sp.default_box = Box::make2(-4.5, 1.5, 0, C);
        return sp;
    }
    if (name == "grapefruit") {
        auto sm = make_grapefruit_slice(-10, 10, -5, 5, std::max(h, 1.0 / 32.0));
        sp.dim = 3;
        sp.causal_pushup = true;
        sp.chron = [sm](const Pt& p, const Pt& q) {
            if (!(p.t() < q.t())) return false;
            return sm->d(p.x(), p.y(), q.x(), q.y()) < q.t() - p.t();
        };
        sp.causal = [sm](const Pt& p, const Pt& q) {
            if (p == q) return true;
            if (!(p.t() <= q.t())) return false;
            return sm->d(p.x(), p.y(), q.x(), q.y()) <= q.t() - p.t();
        };
        sp.dist = [sm](const Pt& a, const Pt& b) {
            return std::hypot(a.t() - b.t(), sm->d(a.x(), a.y(), b.x(), b.y()));
        };
        sp.default_box = Box::make3(-8, 0, -4, 4, -3, 3);
        return sp;
    }
    throw DomainError("make_space: unknown space '" + name + "'");
}

inline std::vector<std::string> gallery_names() {
    return {"strip", "minkowski2", "punctured", "slit", "cylinder", "grapefruit"};
}

// ---------------------------------------------------------------------------
// Discrete reachability cross-validator for the analytic chronologies.
// Timelike grid paths step one slice at a time with |dx| <= pitch while
// dodging inadmissible cells; verdicts are compared only on margin-robust
// pairs (analytic answer stable under +-2h shifts of the target).

struct ChronValidation {
    int checked = 0;
    int skipped = 0;
    int disagreements = 0;
};

inline ChronValidation cross_validate_chron(const Space& sp, const Box& box, double h,
                                            int n_pairs, uint64_t seed) {
    Window w = make_window(sp, box, h);
    Rng rng(seed);
    ChronValidation out;
    const size_t nt = w.n[0], nx = w.n[1];

    auto reach = [&](size_t ip, size_t iq) {
        size_t pt_i = ip / nx, px_i = ip % nx;
        size_t qt_i = iq / nx, qx_i = iq % nx;
        if (qt_i <= pt_i) return false;
        std::vector<char> cur(nx, 0), nxt(nx, 0);
        cur[px_i] = 1;
        for (size_t k = pt_i; k < qt_i; ++k) {
            std::fill(nxt.begin(), nxt.end(), 0);
            for (size_t x = 0; x < nx; ++x) {
                if (!cur[x]) continue;
                for (int d = -1; d <= 1; ++d) {
                    long v = long(x) + d;
                    if (sp.periodic_x)
                        v = (v + long(nx)) % long(nx);
                    else if (v < 0 || v >= long(nx))
                        continue;
                    size_t cell = (k + 1) * nx + size_t(v);
                    if (w.ok[cell]) nxt[size_t(v)] = 1;
                }
            }
            cur.swap(nxt);
        }
        return cur[qx_i] != 0;
    };

    std::vector<size_t> okcells;
    for (size_t i = 0; i < w.size(); ++i)
        if (w.ok[i]) okcells.push_back(i);

    for (int trial = 0; trial < n_pairs; ++trial) {
        size_t a = okcells[size_t(rng.uniform_int(0, int(okcells.size()) - 1))];
        size_t b = okcells[size_t(rng.uniform_int(0, int(okcells.size()) - 1))];
        Pt p = w.pts[a], q = w.pts[b];
        Pt q_early = q, q_late = q;
        q_early[0] -= 2 * h;
        q_late[0] += 2 * h;
        bool robust_true = sp.admissible(q_early) && sp.chron(p, q_early);
        bool robust_false = !sp.chron(p, q_late);
        if (robust_true == robust_false) {  // both false => marginal pair
            ++out.skipped;
            continue;
        }
        ++out.checked;
        bool dp = reach(a, b);
        if (dp != robust_true) ++out.disagreements;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Strip conformal future compactification: inclusion (0,1)^2 -> R^{1,1}.

inline CFC strip_cfc() {
    CFC c;
    c.ambient = make_space("minkowski2", 0.25);
    c.embed = [](const Pt& p) { return p; };
    c.invert = [](const Pt& p) { return p; };
    c.in_image = [](const Pt& p) {
        return p.t() > 0 && p.t() < 1 && p.x() > 0 && p.x() < 1;
    };
    return c;
}

// s-bar: p in cl(E(M)) with nonempty strip past |-> the IP E^{-1}(I_N^-(p)).
inline IPHandle strip_sbar(const Pt& p) {
    IPHandle h;
    h.gen = p;  // keep the target point as pseudo-generator
    h.analytic = [p](const Pt& x) {
        return mink_chron(x, p) && x.t() > 0 && x.t() < 1 && x.x() > 0 && x.x() < 1;
    };
    h.label = "sbar(" + std::to_string(p.t()) + "," + std::to_string(p.x()) + ")";
    return h;
}

// Chain marching toward an ambient target point, strictly timelike.
// The 2^{-3n/4} rate keeps consecutive links representable at depth 64.
inline IPHandle chain_toward(const Pt& target, const Pt& start, std::string label = "") {
    Pt s = start, tgt = target;
    return IPHandle::tip(
        [s, tgt](int n) {
            double lam = 1.0 - std::pow(2.0, -0.75 * double(n));
            Pt p;
            p[0] = s.t() + (tgt.t() - s.t()) * lam;
            p[1] = s.x() + (tgt.x() - s.x()) * lam;
            p[2] = s.y() + (tgt.y() - s.y()) * lam;
            return p;
        },
        ChainCert::Chronological, std::move(label));
}

// Candidate-IP enumerators used by the limit operators: PIPs on a coarse
// vertex grid plus boundary TIP charts per space.
inline std::vector<IPHandle> gallery_enumerator(const Space& sp, const Box& box, double vpitch) {
    std::vector<IPHandle> out;
    if (sp.name == "strip") {
        for (double t = vpitch; t < 1.0 - 1e-9; t += vpitch)
            for (double x = vpitch; x < 1.0 - 1e-9; x += vpitch)
                out.push_back(IPHandle::pip(Pt(t, x)));
        for (double x = vpitch; x < 1.0 - 1e-9; x += vpitch) {
            Pt tgt(1.0, x);
            IPHandle h = chain_toward(tgt, Pt(0.5 * tgt.x(), tgt.x()), "tip@x=" + std::to_string(x));
            h.analytic = [tgt](const Pt& p) {
                return p.t() + std::abs(p.x() - tgt.x()) < 1.0 && p.t() > 0 && p.x() > 0 &&
                       p.x() < 1;
            };
            out.push_back(h);
        }
        return out;
    }
    if (sp.name == "cylinder") {
        const double C = sp.circumference;
        for (double t = box.lo[0] + vpitch; t < box.hi[0] - 1e-9; t += vpitch)
            for (double th = 0; th < C - 1e-9; th += vpitch)
                out.push_back(IPHandle::pip(Pt(t, th)));
        IPHandle all = IPHandle::tip([](int n) { return Pt(double(n), 0.0); },
                                     ChainCert::Chronological, "tip@everything");
        all.analytic = [](const Pt&) { return true; };
        out.push_back(all);
        return out;
    }
    for (double t = box.lo[0] + vpitch; t < box.hi[0] - 1e-9; t += vpitch)
        for (double x = box.lo[1] + vpitch; x < box.hi[1] - 1e-9; x += vpitch) {
            Pt p(t, x);
            if (!sp.admissible || sp.admissible(p)) out.push_back(IPHandle::pip(p));
        }
    return out;
}

}  // namespace horizon
