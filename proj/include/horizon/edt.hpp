#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "horizon/core.hpp"

namespace horizon {

// Exact 1D squared-distance transform (lower envelope of parabolas).
inline void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
    const size_t n = f.size();
    d.assign(n, 0.0);
    std::vector<int> v(n, 0);
    std::vector<double> z(n + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (size_t q = 1; q < n; ++q) {
        double s;
        for (;;) {
            double fq = f[q] + double(q) * double(q);
            double fv = f[size_t(v[size_t(k)])] + double(v[size_t(k)]) * double(v[size_t(k)]);
            s = (fq - fv) / (2.0 * double(q) - 2.0 * double(v[size_t(k)]));
            if (s <= z[size_t(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[size_t(k)] = int(q);
        z[size_t(k)] = s;
        z[size_t(k) + 1] = kInf;
    }
    k = 0;
    for (size_t q = 0; q < n; ++q) {
        while (z[size_t(k) + 1] < double(q)) ++k;
        double dq = double(q) - double(v[size_t(k)]);
        d[q] = dq * dq + f[size_t(v[size_t(k)])];
    }
}

// Exact Euclidean distance field to the true-cells of a nt x nx grid with
// per-axis pitches. Returns one distance per cell; +inf when the set is empty.
inline std::vector<double> edt_grid(const std::vector<char>& in, size_t nt, size_t nx, double ht,
                                    double hx) {
    const double big = 1e20;
    std::vector<double> g(nt * nx);
    for (size_t i = 0; i < nt * nx; ++i) g[i] = in[i] ? 0.0 : big;

    // columns: squared distance in units of ht^2
    std::vector<double> col(nt), out(nt);
    for (size_t j = 0; j < nx; ++j) {
        for (size_t i = 0; i < nt; ++i) col[i] = g[i * nx + j];
        edt_1d(col, out);
        for (size_t i = 0; i < nt; ++i) g[i * nx + j] = out[i] * ht * ht;
    }
    // rows: envelope of g + (hx dx)^2, normalized into index units
    std::vector<double> row(nx), outr(nx);
    for (size_t i = 0; i < nt; ++i) {
        for (size_t j = 0; j < nx; ++j) row[j] = g[i * nx + j] / (hx * hx);
        edt_1d(row, outr);
        for (size_t j = 0; j < nx; ++j) g[i * nx + j] = outr[j] * hx * hx;
    }
    for (auto& v : g) v = (v >= big * ht * ht * 0.5) ? kInf : std::sqrt(v);
    return g;
}

inline std::vector<double> edt_grid(const std::vector<char>& in, size_t nt, size_t nx, double h) {
    return edt_grid(in, nt, nx, h, h);
}

}  // namespace horizon
