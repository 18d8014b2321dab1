#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "horizon/core.hpp"

namespace horizon {

// A chronological structure given intensionally: chronology predicate,
// compatible metric, admissible region and (optionally) a curve-level
// causal predicate. Everything is immutable after construction.
struct Space {
    std::string name;
    int dim = 2;
    std::function<bool(const Pt&, const Pt&)> chron;
    std::function<bool(const Pt&, const Pt&)> causal;  // may be empty
    std::function<double(const Pt&, const Pt&)> dist;
    std::function<bool(const Pt&)> admissible;
    Box default_box;
    bool periodic_x = false;   // coordinate 1 lives on a circle
    double circumference = 0;  // when periodic_x
    // curve-level causal relation satisfies push-up (x <= y << z => x << z);
    // false where removed sets create causal shortcuts (slit)
    bool causal_pushup = false;

    bool has_causal() const { return bool(causal); }
    bool ccausal(const Pt& a, const Pt& b) const {
        if (causal) return causal(a, b);
        return (a == b) || chron(a, b);
    }
};

// Finite evaluation arena: a pitch-h grid over a box, restricted to the
// admissible region. Never the carrier of the theory, only where set
// comparisons happen.
struct Window {
    Space space;
    Box box;
    double h = 0;
    size_t n[3] = {1, 1, 1};
    double pitch[3] = {0, 0, 0};
    std::vector<Pt> pts;
    std::vector<char> ok;    // admissible cell
    std::vector<char> core;  // ok and >= 2h away from the box faces

    size_t size() const { return pts.size(); }
    size_t index(size_t it, size_t ix, size_t iy = 0) const {
        return (it * n[1] + ix) * n[2] + iy;
    }
    const Pt& operator[](size_t i) const { return pts[i]; }

    IdxSet all_core() const {
        IdxSet s(size());
        for (size_t i = 0; i < size(); ++i)
            if (core[i]) s.set(i);
        return s;
    }
    IdxSet all_ok() const {
        IdxSet s(size());
        for (size_t i = 0; i < size(); ++i)
            if (ok[i]) s.set(i);
        return s;
    }

    // nearest admissible grid point
    std::optional<size_t> nearest(const Pt& p) const {
        double best = kInf;
        std::optional<size_t> arg;
        for (size_t i = 0; i < size(); ++i) {
            if (!ok[i]) continue;
            double d = space.dist(p, pts[i]);
            if (d < best) {
                best = d;
                arg = i;
            }
        }
        return arg;
    }
};

inline Window make_window(const Space& sp, const Box& box, double h) {
    Window w;
    w.space = sp;
    w.box = box;
    w.h = h;
    for (int a = 0; a < 3; ++a) {
        w.n[a] = 1;
        w.pitch[a] = 0;
    }
    for (int a = 0; a < sp.dim; ++a) {
        if (a == 1 && sp.periodic_x) {
            size_t cnt = std::max<size_t>(3, size_t(std::lround(sp.circumference / h)));
            w.n[1] = cnt;
            w.pitch[1] = sp.circumference / double(cnt);
        } else {
            double len = box.hi[size_t(a)] - box.lo[size_t(a)];
            size_t cnt = size_t(std::floor(len / h + 1e-9)) + 1;
            w.n[size_t(a)] = cnt;
            w.pitch[size_t(a)] = h;
        }
    }
    w.pts.resize(w.n[0] * w.n[1] * w.n[2]);
    w.ok.resize(w.pts.size());
    w.core.resize(w.pts.size());
    for (size_t it = 0; it < w.n[0]; ++it)
        for (size_t ix = 0; ix < w.n[1]; ++ix)
            for (size_t iy = 0; iy < w.n[2]; ++iy) {
                size_t id = w.index(it, ix, iy);
                Pt p;
                p[0] = box.lo[0] + double(it) * w.pitch[0];
                if (sp.dim > 1) {
                    p[1] = (sp.periodic_x ? double(ix) * w.pitch[1]
                                          : box.lo[1] + double(ix) * w.pitch[1]);
                }
                if (sp.dim > 2) p[2] = box.lo[2] + double(iy) * w.pitch[2];
                w.pts[id] = p;
                bool adm = sp.admissible ? sp.admissible(p) : true;
                w.ok[id] = adm ? 1 : 0;
                bool deep = true;
                // periodic coordinate has no edge
                double m = kInf;
                m = std::min(m, p[0] - box.lo[0]);
                m = std::min(m, box.hi[0] - p[0]);
                if (sp.dim > 1 && !sp.periodic_x) {
                    m = std::min(m, p[1] - box.lo[1]);
                    m = std::min(m, box.hi[1] - p[1]);
                }
                if (sp.dim > 2) {
                    m = std::min(m, p[2] - box.lo[2]);
                    m = std::min(m, box.hi[2] - p[2]);
                }
                deep = (m >= 2 * h - 1e-12);
                w.core[id] = (adm && deep) ? 1 : 0;
            }
    // core also stays 2h away from removed sets inside the box
    for (size_t it = 0; it < w.n[0]; ++it)
        for (size_t ix = 0; ix < w.n[1]; ++ix)
            for (size_t iy = 0; iy < w.n[2]; ++iy) {
                size_t id = w.index(it, ix, iy);
                if (!w.core[id]) continue;
                bool clear = true;
                for (long dt = -2; dt <= 2 && clear; ++dt)
                    for (long dx = -2; dx <= 2 && clear; ++dx)
                        for (long dy = -2; dy <= 2 && clear; ++dy) {
                            long jt = long(it) + dt, jy = long(iy) + dy;
                            long jx = long(ix) + dx;
                            if (sp.periodic_x) jx = (jx + long(w.n[1])) % long(w.n[1]);
                            if (jt < 0 || jx < 0 || jy < 0 || jt >= long(w.n[0]) ||
                                jx >= long(w.n[1]) || jy >= long(w.n[2]))
                                continue;
                            size_t jd = w.index(size_t(jt), size_t(jx), size_t(jy));
                            if (!w.ok[jd] &&
                                w.space.dist(w.pts[id], w.pts[jd]) < 2 * h * 0.9999)
                                clear = false;
                        }
                if (!clear) w.core[id] = 0;
            }
    return w;
}

inline IdxSet realize_pred(const Window& w, const std::function<bool(const Pt&)>& member) {
    IdxSet s(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        if (w.ok[i] && member(w.pts[i])) s.set(i);
    return s;
}

// Window-set equality/containment after restriction to core cells.
inline bool core_subset(const Window& w, const IdxSet& a, const IdxSet& b) {
    for (size_t i = 0; i < w.size(); ++i)
        if (w.core[i] && a.test(i) && !b.test(i)) return false;
    return true;
}
inline bool core_equal(const Window& w, const IdxSet& a, const IdxSet& b) {
    return core_subset(w, a, b) && core_subset(w, b, a);
}
inline size_t core_diff_count(const Window& w, const IdxSet& a, const IdxSet& b) {
    size_t c = 0;
    for (size_t i = 0; i < w.size(); ++i)
        if (w.core[i] && a.test(i) != b.test(i)) ++c;
    return c;
}

}  // namespace horizon
