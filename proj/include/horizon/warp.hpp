#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "horizon/expr.hpp"
#include "horizon/gridgraph.hpp"
#include "horizon/ip.hpp"
#include "horizon/space.hpp"

namespace horizon {

// Multiply warped chronological space over (a,b) with factor spaces given
// as finite metric graphs and warping functions of t.
struct WarpFactor {
    std::string name;
    MetricGraph graph;
    Expr f;  // in variables t and b

    double eval_f(double t, double b) const {
        return f.eval({{"t", t}, {"b", b}});
    }
};

struct WarpSpec {
    double a = 0, b = 1;
    double dt = 1.0 / 32.0;
    std::vector<WarpFactor> factors;  // at most 2

    void validate() const {
        if (!(a < b) || !std::isfinite(b)) throw DomainError("warp: need a < b with b finite");
        if (dt <= 0) throw DomainError("warp: dt must be positive");
        if (factors.size() > 2) throw DomainError("warp: at most two factors supported");
        for (const auto& fac : factors)
            for (double t = a + dt; t < b - 1e-12; t += dt)
                if (!(fac.eval_f(t, b) > 0))
                    throw DomainError("warp: factor " + fac.name + " not positive at t=" +
                                      std::to_string(t));
    }
};

struct StarIntegral {
    double value = 0;
    bool finite = true;
};

// condition (*): int_c^b f^{-1/2}; dyadic refinement toward b with
// geometric-decay detection of the increments
inline StarIntegral star_integral(const WarpSpec& spec, size_t factor, double c) {
    const auto& fac = spec.factors[factor];
    auto integrand = [&](double t) { return 1.0 / std::sqrt(fac.eval_f(t, spec.b)); };
    auto simpson = [&](double lo, double hi) {
        int steps = 64;
        double s = 0, step = (hi - lo) / steps;
        for (int i = 0; i < steps; ++i) {
            double x0 = lo + i * step, x1 = x0 + step, xm = 0.5 * (x0 + x1);
            s += (step / 6.0) * (integrand(x0) + 4 * integrand(xm) + integrand(x1));
        }
        return s;
    };
    StarIntegral out;
    double len = spec.b - c;
    double cut_prev = spec.b - len * 0.5;
    out.value = simpson(c, cut_prev);
    double prev_inc = kInf;
    for (int k = 2; k <= 40; ++k) {
        double cut = spec.b - len * std::pow(0.5, k);
        double inc = simpson(cut_prev, cut);
        out.value += inc;
        if (k > 6 && inc > 0.75 * prev_inc) {
            out.finite = false;  // increments not decaying: log-divergent or worse
            out.value = kInf;
            return out;
        }
        prev_inc = std::max(inc, 1e-300);
        cut_prev = cut;
        if (inc < 1e-12) break;
    }
    return out;
}

namespace warp_detail {

struct ReachCache {
    // backward reachability fields keyed by quantized target, bit-packed
    std::map<std::vector<long>, std::shared_ptr<const std::vector<uint64_t>>> bwd;
    std::mutex mu;
};

inline size_t state_count(const WarpSpec& s) {
    size_t v = 1;
    for (const auto& f : s.factors) v *= f.graph.n;
    return v;
}
inline size_t state_of(const WarpSpec& s, const Pt& p) {
    if (s.factors.empty()) return 0;
    size_t i0 = size_t(std::lround(p.x()));
    if (s.factors.size() == 1) return i0;
    return i0 * s.factors[1].graph.n + size_t(std::lround(p.y()));
}
inline long slice_of(const WarpSpec& s, double t) {
    return std::lround((t - s.a) / s.dt);
}

// one backward step: states at slice r that reach `nxt` at slice r+1
inline std::vector<char> step_back(const WarpSpec& s, const std::vector<char>& nxt, double r) {
    const size_t V = state_count(s);
    std::vector<char> cur(V, 0);
    if (s.factors.empty()) {
        cur[0] = nxt[0];
        return cur;
    }
    std::vector<double> fvals;
    for (const auto& fac : s.factors) fvals.push_back(fac.eval_f(r, s.b));
    const size_t n0 = s.factors[0].graph.n;
    const size_t n1 = s.factors.size() > 1 ? s.factors[1].graph.n : 1;
    for (size_t u0 = 0; u0 < n0; ++u0)
        for (size_t u1 = 0; u1 < n1; ++u1) {
            size_t u = u0 * n1 + u1;
            bool ok = false;
            for (size_t v0 = 0; v0 < n0 && !ok; ++v0) {
                double d0 = s.factors[0].graph.dist[u0][v0];
                double b0 = fvals[0] * (d0 / s.dt) * (d0 / s.dt);
                if (b0 >= 1.0) continue;
                for (size_t v1 = 0; v1 < n1 && !ok; ++v1) {
                    size_t v = v0 * n1 + v1;
                    if (!nxt[v]) continue;
                    double budget = b0;
                    if (s.factors.size() > 1) {
                        double d1 = s.factors[1].graph.dist[u1][v1];
                        budget += fvals[1] * (d1 / s.dt) * (d1 / s.dt);
                    }
                    if (budget < 1.0) ok = true;
                }
            }
            cur[u] = ok ? 1 : 0;
        }
    return cur;
}

}  // namespace warp_detail

// Good-path chronology by dynamic programming over time slices: each step
// spends the Lipschitz budget sum_i f_i(r) (d_i/dt)^2 < 1, the discrete
// form of the timelike condition in the warped metric.
inline bool warp_chron(const WarpSpec& spec, const Pt& p, const Pt& q,
                       warp_detail::ReachCache* cache = nullptr) {
    using namespace warp_detail;
    if (!(p.t() < q.t())) return false;
    double steps_f = (q.t() - p.t()) / spec.dt;
    long steps = std::lround(steps_f);
    if (std::abs(steps_f - double(steps)) > 1e-6 || steps < 1)
        throw DomainError("warp_chron: dt does not divide the time separation");

    const size_t V = state_count(spec);
    long qs = slice_of(spec, q.t());
    if (qs <= 0) return false;
    std::vector<long> key = {qs, long(state_of(spec, q))};
    std::shared_ptr<const std::vector<uint64_t>> fields;  // V bits per slice
    if (cache) {
        std::lock_guard<std::mutex> lk(cache->mu);
        auto it = cache->bwd.find(key);
        if (it != cache->bwd.end()) fields = it->second;
    }
    if (!fields) {
        const size_t words = (V + 63) / 64;
        std::vector<uint64_t> all(size_t(qs) * words, 0);
        std::vector<char> nxt(V, 0);
        nxt[state_of(spec, q)] = 1;
        for (long r = qs - 1; r >= 0; --r) {
            double tr = spec.a + double(r) * spec.dt;
            std::vector<char> cur = step_back(spec, nxt, tr);
            for (size_t v = 0; v < V; ++v)
                if (cur[v]) all[size_t(r) * words + (v >> 6)] |= uint64_t(1) << (v & 63);
            nxt.swap(cur);
        }
        auto sp = std::make_shared<const std::vector<uint64_t>>(std::move(all));
        fields = sp;
        if (cache) {
            std::lock_guard<std::mutex> lk(cache->mu);
            cache->bwd.emplace(key, fields);
        }
    }
    long ps = slice_of(spec, p.t());
    const size_t words = (V + 63) / 64;
    if (ps < 0 || size_t(ps) >= size_t(qs)) return false;
    size_t st = state_of(spec, p);
    return ((*fields)[size_t(ps) * words + (st >> 6)] >> (st & 63)) & 1;
}

// Oracle wrapper: points are (t, vertex indices); factor one in c[1],
// factor two in c[2]. The time coordinate lives on the dt-grid.
inline Space warp_space(const WarpSpec& spec_in) {
    WarpSpec spec = spec_in;
    spec.validate();
    auto cache = std::make_shared<warp_detail::ReachCache>();
    Space sp;
    sp.name = "warp";
    sp.dim = spec.factors.size() >= 2 ? 3 : 2;
    sp.causal_pushup = true;
    sp.chron = [spec, cache](const Pt& p, const Pt& q) {
        return warp_chron(spec, p, q, cache.get());
    };
    sp.dist = [spec](const Pt& p, const Pt& q) {
        double d2 = (p.t() - q.t()) * (p.t() - q.t());
        if (!spec.factors.empty()) {
            double d0 = spec.factors[0].graph.dist[size_t(std::lround(p.x()))]
                                                 [size_t(std::lround(q.x()))];
            d2 += d0 * d0;
        }
        if (spec.factors.size() > 1) {
            double d1 = spec.factors[1].graph.dist[size_t(std::lround(p.y()))]
                                                  [size_t(std::lround(q.y()))];
            d2 += d1 * d1;
        }
        return std::sqrt(d2);
    };
    sp.admissible = [spec](const Pt& p) { return p.t() > spec.a && p.t() < spec.b; };
    sp.default_box = Box::make2(spec.a, spec.b, 0, double(warp_detail::state_count(spec) - 1));
    return sp;
}

// Window over the warp oracle: t-slices times factor vertices.
inline Window warp_window(const WarpSpec& spec, const Space& sp, double t0, double t1) {
    Window w;
    w.space = sp;
    w.h = spec.dt;
    w.box = Box::make2(t0, t1, 0, 0);
    long k0 = warp_detail::slice_of(spec, t0), k1 = warp_detail::slice_of(spec, t1);
    size_t nt = size_t(k1 - k0 + 1);
    size_t n0 = spec.factors.empty() ? 1 : spec.factors[0].graph.n;
    size_t n1 = spec.factors.size() > 1 ? spec.factors[1].graph.n : 1;
    w.n[0] = nt;
    w.n[1] = n0;
    w.n[2] = n1;
    w.pitch[0] = spec.dt;
    w.pitch[1] = 1;
    w.pitch[2] = 1;
    w.pts.resize(nt * n0 * n1);
    w.ok.assign(w.pts.size(), 1);
    w.core.assign(w.pts.size(), 0);
    for (size_t it = 0; it < nt; ++it)
        for (size_t i0 = 0; i0 < n0; ++i0)
            for (size_t i1 = 0; i1 < n1; ++i1) {
                size_t id = w.index(it, i0, i1);
                double t = spec.a + double(k0 + long(it)) * spec.dt;
                w.pts[id] = Pt(t, double(i0), double(i1));
                bool adm = t > spec.a && t < spec.b;
                w.ok[id] = adm ? 1 : 0;
                w.core[id] = (adm && it >= 2 && it + 2 < nt) ? 1 : 0;
            }
    return w;
}

struct WarpCompletion {
    std::vector<StarIntegral> integrals;
    std::vector<IPHandle> boundary;       // one TIP per sampled vertex tuple
    std::vector<size_t> chart_state;      // its K-projection limit
    size_t chart_pairs_checked = 0;
    size_t chart_mismatches = 0;
};

// Boundary chart of the future completion: chains with t -> b classified
// by their K-projection, verified against the chart chronology on (a,b].
inline WarpCompletion warp_completion(const WarpSpec& spec_in, size_t max_vertices = 10,
                                      int depth = 48) {
    WarpSpec spec = spec_in;
    spec.validate();
    WarpCompletion out;
    for (size_t i = 0; i < spec.factors.size(); ++i) {
        StarIntegral si = star_integral(spec, i, 0.5 * (spec.a + spec.b));
        out.integrals.push_back(si);
        if (!si.finite)
            throw DomainError("warp_completion: condition (*) diverges for factor " +
                              spec.factors[i].name);
    }
    Space sp = warp_space(spec);
    Window w = warp_window(spec, sp, spec.a + spec.dt, spec.b - spec.dt);

    const size_t V = warp_detail::state_count(spec);
    std::vector<size_t> verts;
    for (size_t v = 0; v < V; v += std::max<size_t>(1, V / max_vertices)) verts.push_back(v);

    long top_slice = warp_detail::slice_of(spec, spec.b) - 1;
    int depth_eff = int(std::min<long>(depth, top_slice - 3));
    if (depth_eff < 4) throw DomainError("warp_completion: interval too short for chain depth");
    for (size_t v : verts) {
        size_t n1 = spec.factors.size() > 1 ? spec.factors[1].graph.n : 1;
        double x0 = double(v / n1), x1 = double(v % n1);
        long base = top_slice - depth_eff - 1;
        auto chain = [spec, x0, x1, base](int n) {
            double t = spec.a + double(base + n) * spec.dt;
            return Pt(t, x0, x1);
        };
        IPHandle h = IPHandle::tip(chain, ChainCert::Chronological, "tip@" + std::to_string(v));
        out.boundary.push_back(h);
        out.chart_state.push_back(v);
    }

    // chart chronology on (a,b]: the same budget DP, final slice included
    auto chart_chron = [&](double t, size_t sv, double s, size_t tv) {
        Pt p(t, double(sv / (spec.factors.size() > 1 ? spec.factors[1].graph.n : 1)),
             double(sv % (spec.factors.size() > 1 ? spec.factors[1].graph.n : 1)));
        Pt q(s, double(tv / (spec.factors.size() > 1 ? spec.factors[1].graph.n : 1)),
             double(tv % (spec.factors.size() > 1 ? spec.factors[1].graph.n : 1)));
        return warp_chron(spec, p, q);
    };

    // family: boundary TIPs plus interior PIPs on a vertex subsample
    std::vector<IPHandle> fam = out.boundary;
    std::vector<std::pair<double, size_t>> chart_pts;  // (t, state) per handle
    for (size_t k = 0; k < out.boundary.size(); ++k) chart_pts.push_back({spec.b, out.chart_state[k]});
    double tmid = spec.a + 0.5 * (spec.b - spec.a);
    tmid = spec.a + double(warp_detail::slice_of(spec, tmid)) * spec.dt;
    for (size_t v : verts) {
        size_t n1 = spec.factors.size() > 1 ? spec.factors[1].graph.n : 1;
        fam.push_back(IPHandle::pip(Pt(tmid, double(v / n1), double(v % n1)),
                                    "pip@" + std::to_string(v)));
        chart_pts.push_back({tmid, v});
    }
    IPFamilyWindow family = make_family(w, fam, depth_eff);
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = 0; j < fam.size(); ++j) {
            if (i == j) continue;
            bool computed = family.bs.at(i, j);
            bool chart = chart_pts[i].first < chart_pts[j].first &&
                         chart_chron(chart_pts[i].first, chart_pts[i].second,
                                     chart_pts[j].first, chart_pts[j].second);
            ++out.chart_pairs_checked;
            if (computed != chart) ++out.chart_mismatches;
        }
    return out;
}

}  // namespace horizon
