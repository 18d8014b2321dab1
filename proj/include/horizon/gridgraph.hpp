#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "horizon/core.hpp"

namespace horizon {

// Planar grid discretization of the length space g = f(p) (dx^2 + dy^2).
// Geodesic distance fields solve the eikonal equation |grad u| = sqrt(f)
// by first-order fast marching; unlike lattice shortest paths this has no
// angular bias, only O(h log) error from the source singularity, which the
// exact local seeding below suppresses.
struct GridGraph {
    double x0 = 0, y0 = 0, h = 1;
    size_t nx = 0, ny = 0;
    std::function<double(double, double)> conformal;  // f > 0

    size_t idx(size_t i, size_t j) const { return j * nx + i; }
    double px(size_t i) const { return x0 + double(i) * h; }
    double py(size_t j) const { return y0 + double(j) * h; }
    size_t size() const { return nx * ny; }

    size_t nearest(double x, double y) const {
        long i = std::lround((x - x0) / h), j = std::lround((y - y0) / h);
        i = std::max(0l, std::min(long(nx) - 1, i));
        j = std::max(0l, std::min(long(ny) - 1, j));
        return idx(size_t(i), size_t(j));
    }

    // single-source geodesic distance field (fast marching)
    std::vector<double> distance_field(size_t src) const {
        std::vector<double> u(size(), kInf);
        std::vector<char> known(size(), 0);
        using QI = std::pair<double, size_t>;
        std::priority_queue<QI, std::vector<QI>, std::greater<QI>> q;

        size_t si = src % nx, sj = src / nx;
        double sx = px(si), sy = py(sj);
        double fs = std::sqrt(std::max(1e-12, conformal(sx, sy)));
        // exact local seeding in a small disk, metric frozen at the source
        long r0 = 3;
        for (long dj = -r0; dj <= r0; ++dj)
            for (long di = -r0; di <= r0; ++di) {
                long i = long(si) + di, j = long(sj) + dj;
                if (i < 0 || j < 0 || i >= long(nx) || j >= long(ny)) continue;
                double d = fs * h * std::sqrt(double(di * di + dj * dj));
                size_t id = idx(size_t(i), size_t(j));
                u[id] = d;
                q.push({d, id});
            }

        auto slowness = [&](size_t i, size_t j) {
            return std::sqrt(std::max(1e-12, conformal(px(i), py(j))));
        };
        auto solve = [&](size_t i, size_t j) {
            double a = kInf, b = kInf;
            if (i > 0) a = std::min(a, u[idx(i - 1, j)]);
            if (i + 1 < nx) a = std::min(a, u[idx(i + 1, j)]);
            if (j > 0) b = std::min(b, u[idx(i, j - 1)]);
            if (j + 1 < ny) b = std::min(b, u[idx(i, j + 1)]);
            double sh = slowness(i, j) * h;
            if (a > b) std::swap(a, b);
            if (a == kInf) return kInf;
            if (b == kInf || b - a >= sh) return a + sh;
            double sum = a + b, diff = a - b;
            return 0.5 * (sum + std::sqrt(2.0 * sh * sh - diff * diff));
        };

        while (!q.empty()) {
            auto [d, id] = q.top();
            q.pop();
            if (known[id] || d > u[id]) continue;
            known[id] = 1;
            size_t i = id % nx, j = id / nx;
            const long di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                long vi = long(i) + di[k], vj = long(j) + dj[k];
                if (vi < 0 || vj < 0 || vi >= long(nx) || vj >= long(ny)) continue;
                size_t v = idx(size_t(vi), size_t(vj));
                if (known[v]) continue;
                double nu = solve(size_t(vi), size_t(vj));
                if (nu < u[v]) {
                    u[v] = nu;
                    q.push({nu, v});
                }
            }
        }
        return u;
    }
};

// Finite metric graph (warp factor spaces): explicit vertices + weighted
// edges, all-pairs distances by repeated Dijkstra.
struct MetricGraph {
    size_t n = 0;
    std::vector<std::vector<std::pair<size_t, double>>> adj;
    std::vector<std::vector<double>> dist;  // filled by finalize()

    static MetricGraph cycle(size_t n, double edge_len) {
        MetricGraph g;
        g.n = n;
        g.adj.resize(n);
        for (size_t i = 0; i < n; ++i) {
            size_t j = (i + 1) % n;
            g.adj[i].push_back({j, edge_len});
            g.adj[j].push_back({i, edge_len});
        }
        g.finalize();
        return g;
    }
    static MetricGraph segment(size_t n, double edge_len) {
        MetricGraph g;
        g.n = n;
        g.adj.resize(n);
        for (size_t i = 0; i + 1 < n; ++i) {
            g.adj[i].push_back({i + 1, edge_len});
            g.adj[i + 1].push_back({i, edge_len});
        }
        g.finalize();
        return g;
    }
    static MetricGraph point() { return segment(1, 1.0); }

    void finalize() {
        dist.assign(n, {});
        for (size_t s = 0; s < n; ++s) {
            std::vector<double> d(n, kInf);
            using QI = std::pair<double, size_t>;
            std::priority_queue<QI, std::vector<QI>, std::greater<QI>> q;
            d[s] = 0;
            q.push({0.0, s});
            while (!q.empty()) {
                auto [du, u] = q.top();
                q.pop();
                if (du > d[u]) continue;
                for (auto [v, w] : adj[u])
                    if (du + w < d[v]) {
                        d[v] = du + w;
                        q.push({d[v], v});
                    }
            }
            dist[s] = std::move(d);
        }
    }
};

}  // namespace horizon
