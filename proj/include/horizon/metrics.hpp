#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "horizon/edt.hpp"
#include "horizon/gridgraph.hpp"
#include "horizon/space.hpp"

namespace horizon {

// Finite point cloud with a compatible metric, the arena for all set
// comparisons. Clouds built from 2D windows keep the grid layout so
// distance fields go through the exact Euclidean transform.
struct MetricCloud {
    std::vector<Pt> pts;
    std::function<double(const Pt&, const Pt&)> dist;
    size_t base = 0;             // x0
    std::vector<double> mu;      // optional strictly positive weights
    bool grid2d = false;
    size_t nt = 0, nx = 0;
    double ht = 1.0, hx = 1.0;
    bool wrap_x = false;

    size_t size() const { return pts.size(); }
};

inline MetricCloud cloud_from_window(const Window& w, std::optional<Pt> base_pt = {}) {
    MetricCloud c;
    c.pts = w.pts;
    c.dist = w.space.dist;
    c.grid2d = (w.space.dim == 2);
    c.nt = w.n[0];
    c.nx = w.n[1];
    c.ht = w.pitch[0];
    c.hx = w.pitch[1];
    c.wrap_x = w.space.periodic_x;
    c.base = 0;
    if (base_pt) {
        double best = kInf;
        for (size_t i = 0; i < c.pts.size(); ++i) {
            double d = c.dist(*base_pt, c.pts[i]);
            if (d < best) {
                best = d;
                c.base = i;
            }
        }
    } else {
        // central point
        Pt mid;
        for (int a = 0; a < 3; ++a) mid[a] = 0.5 * (w.box.lo[size_t(a)] + w.box.hi[size_t(a)]);
        double best = kInf;
        for (size_t i = 0; i < c.pts.size(); ++i) {
            double d = euclid(mid, c.pts[i], w.space.dim);
            if (d < best) {
                best = d;
                c.base = i;
            }
        }
    }
    return c;
}

// d0(x, A) for every cloud point; exact EDT on plain 2D grids, brute force
// otherwise. Empty A gives +inf everywhere.
inline std::vector<double> dist_field(const MetricCloud& c, const IdxSet& a) {
    const size_t n = c.size();
    std::vector<double> out(n, kInf);
    if (a.none()) return out;
    if (c.grid2d && !c.wrap_x) {
        std::vector<char> in(n, 0);
        a.for_each([&](size_t i) { in[i] = 1; });
        return edt_grid(in, c.nt, c.nx, c.ht, c.hx);
    }
    if (c.grid2d && c.wrap_x) {
        // tile three copies along the periodic coordinate
        std::vector<char> in(c.nt * c.nx * 3, 0);
        a.for_each([&](size_t i) {
            size_t it = i / c.nx, ix = i % c.nx;
            for (int k = 0; k < 3; ++k) in[it * (3 * c.nx) + size_t(k) * c.nx + ix] = 1;
        });
        std::vector<double> g = edt_grid(in, c.nt, 3 * c.nx, c.ht, c.hx);
        for (size_t it = 0; it < c.nt; ++it)
            for (size_t ix = 0; ix < c.nx; ++ix)
                out[it * c.nx + ix] = g[it * (3 * c.nx) + c.nx + ix];
        return out;
    }
    std::vector<size_t> mem = a.indices();
    for (size_t i = 0; i < n; ++i) {
        double best = kInf;
        for (size_t j : mem) best = std::min(best, c.dist(c.pts[i], c.pts[j]));
        out[i] = best;
    }
    return out;
}

// Two-sided Hausdorff distance; a generalized metric with
// d_H(empty, nonempty) = inf.
inline double hausdorff(const MetricCloud& c, const IdxSet& a, const IdxSet& b) {
    bool ae = a.none(), be = b.none();
    if (ae && be) return 0.0;
    if (ae != be) return kInf;
    std::vector<double> da = dist_field(c, a), db = dist_field(c, b);
    double m = 0;
    a.for_each([&](size_t i) { m = std::max(m, db[i]); });
    b.for_each([&](size_t i) { m = std::max(m, da[i]); });
    return m;
}

// Busemann's exponentially damped sup metric on nonempty closed subsets.
inline double d1(const MetricCloud& c, const IdxSet& a, const IdxSet& b) {
    if (a.none() || b.none()) throw DomainError("d1: defined on nonempty closed sets");
    std::vector<double> da = dist_field(c, a), db = dist_field(c, b);
    const Pt& x0 = c.pts[c.base];
    double m = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        double v = std::abs(da[i] - db[i]) * std::exp(-c.dist(x0, c.pts[i]));
        m = std::max(m, v);
    }
    return m;
}

inline double delta_mu(const MetricCloud& c, const IdxSet& a, const IdxSet& b) {
    if (c.mu.empty()) throw DomainError("delta_mu: no weights on cloud");
    double s = 0;
    for (size_t i = 0; i < c.size(); ++i)
        if (a.test(i) != b.test(i)) s += c.mu[i];
    return s;
}

// Weight families standing in for admissible measures: uniform cell
// weights, radially damped, and seeded random, each normalized to 1.
inline std::vector<double> make_weights(const MetricCloud& c, const std::string& kind,
                                        uint64_t seed = 1) {
    std::vector<double> mu(c.size(), 1.0);
    if (kind == "radial") {
        const Pt& x0 = c.pts[c.base];
        for (size_t i = 0; i < c.size(); ++i) mu[i] = std::exp(-c.dist(x0, c.pts[i]));
    } else if (kind == "random") {
        Rng rng(seed);
        for (size_t i = 0; i < c.size(); ++i) mu[i] = rng.uniform(0.5, 1.5);
    } else if (kind != "uniform") {
        throw DomainError("make_weights: unknown kind " + kind);
    }
    double tot = std::accumulate(mu.begin(), mu.end(), 0.0);
    for (double& v : mu) v /= tot;
    return mu;
}

// ---------------------------------------------------------------------------
// inner/outer convergence with finite probe sets

struct IoVerdict {
    bool converges = false;
    bool indeterminate = false;
    std::optional<Pt> witness;      // failing probe
    int witness_index = -1;         // family index where it failed
    std::string failed_side;        // "inner" | "outer"
};

// Probes drawn from a half-pitch grid in the eroded interior (resp.
// exterior) of the candidate; "eventually" means the whole tail
// [horizon/2, horizon].
inline IoVerdict io_converges(const Window& w,
                              const std::function<std::function<bool(const Pt&)>(int)>& family,
                              const std::function<bool(const Pt&)>& candidate, int horizon) {
    IoVerdict v;
    const double step = w.h / 2.0;
    const double margin = 2.0 * w.h;
    std::vector<Pt> inner_probes, outer_probes;
    for (double t = w.box.lo[0]; t <= w.box.hi[0] + 1e-12; t += step)
        for (double x = w.box.lo[1]; x <= w.box.hi[1] + 1e-12; x += step) {
            Pt p(t, x);
            if (w.space.admissible && !w.space.admissible(p)) continue;
            bool ball_in = true, ball_out = true;
            for (int dt = -1; dt <= 1 && (ball_in || ball_out); ++dt)
                for (int dx = -1; dx <= 1; ++dx) {
                    Pt q(t + dt * margin, x + dx * margin);
                    if (w.space.admissible && !w.space.admissible(q)) continue;
                    if (!candidate(q)) ball_in = false;
                    if (candidate(q)) ball_out = false;
                }
            if (ball_in) inner_probes.push_back(p);
            if (ball_out) outer_probes.push_back(p);
        }
    if (inner_probes.empty() && outer_probes.empty()) {
        v.indeterminate = true;
        return v;
    }
    for (int n = horizon / 2; n <= horizon; ++n) {
        auto an = family(n);
        for (const Pt& p : inner_probes)
            if (!an(p)) {
                v.converges = false;
                v.witness = p;
                v.witness_index = n;
                v.failed_side = "inner";
                return v;
            }
        for (const Pt& p : outer_probes)
            if (an(p)) {
                v.converges = false;
                v.witness = p;
                v.witness_index = n;
                v.failed_side = "outer";
                return v;
            }
    }
    v.converges = true;
    return v;
}

// ---------------------------------------------------------------------------
// graph functions for product samplers

// boundary height per spatial column; -inf marks empty columns
inline std::vector<double> graph_fn(const Window& w, const IdxSet& a) {
    std::vector<double> f(w.n[1], -kInf);
    for (size_t it = 0; it < w.n[0]; ++it)
        for (size_t ix = 0; ix < w.n[1]; ++ix) {
            size_t id = w.index(it, ix);
            if (a.test(id)) f[ix] = std::max(f[ix], w.pts[id].t());
        }
    return f;
}

// max pointwise gap on interior columns, +inf when definedness differs
inline double graph_gap(const Window& w, const std::vector<double>& f,
                        const std::vector<double>& g) {
    double m = 0;
    for (size_t ix = 2; ix + 2 < w.n[1]; ++ix) {
        bool fd = f[ix] > -kInf, gd = g[ix] > -kInf;
        if (fd != gd) return kInf;
        if (fd) m = std::max(m, std::abs(f[ix] - g[ix]));
    }
    return m;
}

inline bool graph_lipschitz(const Window& w, const std::vector<double>& f, double slope) {
    for (size_t ix = 2; ix + 2 < w.n[1]; ++ix) {
        if (f[ix] <= -kInf || f[ix + 1] <= -kInf) continue;
        if (std::abs(f[ix + 1] - f[ix]) > slope * w.pitch[1] + 1e-9) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Busemann functions via corridor Dijkstra

struct BusemannResult {
    std::vector<double> b;    // value per query point at the largest t
    bool stabilized = false;
    bool divergent = false;
    double last_step = kInf;  // sup |b_T - b_{T/2}|
};

// b_c(q) = lim (t - d(c(t), q)) on a conformally flat plane; distances by
// 8-neighbour Dijkstra on a corridor grid covering queries and ray points.
inline BusemannResult busemann_field(const std::function<double(double, double)>& conformal,
                                     double h, const std::function<Pt(double)>& ray,
                                     const std::vector<Pt>& queries,
                                     const std::vector<double>& t_schedule, double pad = 2.0,
                                     double stab_tol = 0.25) {
    BusemannResult res;
    std::vector<std::vector<double>> vals;
    for (double t : t_schedule) {
        Pt ct = ray(t);
        double xlo = ct.x(), xhi = ct.x(), ylo = ct.y(), yhi = ct.y();
        for (const Pt& q : queries) {
            xlo = std::min(xlo, q.x());
            xhi = std::max(xhi, q.x());
            ylo = std::min(ylo, q.y());
            yhi = std::max(yhi, q.y());
        }
        GridGraph g;
        g.x0 = xlo - pad;
        g.y0 = ylo - pad;
        g.h = h;
        g.nx = size_t(std::ceil((xhi - xlo + 2 * pad) / h)) + 1;
        g.ny = size_t(std::ceil((yhi - ylo + 2 * pad) / h)) + 1;
        g.conformal = conformal;
        std::vector<double> d = g.distance_field(g.nearest(ct.x(), ct.y()));
        std::vector<double> b(queries.size());
        for (size_t i = 0; i < queries.size(); ++i)
            b[i] = t - d[g.nearest(queries[i].x(), queries[i].y())];
        vals.push_back(std::move(b));
    }
    res.b = vals.back();
    if (vals.size() >= 2) {
        const auto& prev = vals[vals.size() - 2];
        double step = 0;
        for (size_t i = 0; i < res.b.size(); ++i) step = std::max(step, std::abs(res.b[i] - prev[i]));
        res.last_step = step;
        res.stabilized = step <= stab_tol;
        // a curve slower than unit speed drags b upward linearly in t
        double dt = t_schedule.back() - t_schedule[t_schedule.size() - 2];
        double min_gain = kInf;
        for (size_t i = 0; i < res.b.size(); ++i) min_gain = std::min(min_gain, res.b[i] - prev[i]);
        res.divergent = min_gain > 0.2 * dt;
    }
    return res;
}

// Deterministic enumeration of rational points in the open unit ball:
// reduced triples (a, b, q) ordered by q then a then b. Index is 1-based.
inline Pt rational_ball_point(int n) {
    int count = 0;
    for (int q = 1;; ++q) {
        for (int a = -q + 1; a <= q - 1; ++a) {
            for (int b = -q + 1; b <= q - 1; ++b) {
                if (a * a + b * b >= q * q) continue;
                if (std::gcd(std::gcd(std::abs(a), std::abs(b)), q) != 1) continue;
                if (++count == n) return Pt(double(a) / q, double(b) / q);
            }
        }
        if (q > 4 * n + 4) throw DomainError("rational_ball_point: enumeration ran away");
    }
}

}  // namespace horizon
