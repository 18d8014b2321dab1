#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace horizon {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Point in up to 3 coordinates; coordinate 0 plays the time role for
// spacetime oracles. Unused coordinates stay zero.
struct Pt {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Pt() = default;
    Pt(double t, double x) : c{t, x, 0.0} {}
    Pt(double t, double x, double y) : c{t, x, y} {}

    double t() const { return c[0]; }
    double x() const { return c[1]; }
    double y() const { return c[2]; }
    double& operator[](int i) { return c[size_t(i)]; }
    double operator[](int i) const { return c[size_t(i)]; }

    bool operator==(const Pt& o) const { return c == o.c; }
};

inline double euclid(const Pt& a, const Pt& b, int dim) {
    double s = 0;
    for (int i = 0; i < dim; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

struct Box {
    std::array<double, 3> lo{0, 0, 0};
    std::array<double, 3> hi{0, 0, 0};
    int dim = 2;

    static Box make2(double t0, double t1, double x0, double x1) {
        Box b;
        b.dim = 2;
        b.lo = {t0, x0, 0};
        b.hi = {t1, x1, 0};
        return b;
    }
    static Box make3(double t0, double t1, double x0, double x1, double y0, double y1) {
        Box b;
        b.dim = 3;
        b.lo = {t0, x0, y0};
        b.hi = {t1, x1, y1};
        return b;
    }
    bool contains(const Pt& p) const {
        for (int i = 0; i < dim; ++i)
            if (p[i] < lo[size_t(i)] || p[i] > hi[size_t(i)]) return false;
        return true;
    }
    // distance of p to the box faces, min over coordinates
    double edge_margin(const Pt& p) const {
        double m = kInf;
        for (int i = 0; i < dim; ++i) {
            m = std::min(m, p[i] - lo[size_t(i)]);
            m = std::min(m, hi[size_t(i)] - p[i]);
        }
        return m;
    }
};

// Dense index set over a window, word-packed.
class IdxSet {
  public:
    IdxSet() = default;
    explicit IdxSet(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    void set(size_t i) { w_[i >> 6] |= (uint64_t(1) << (i & 63)); }
    void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    size_t count() const {
        size_t c = 0;
        for (uint64_t v : w_) c += size_t(__builtin_popcountll(v));
        return c;
    }
    bool any() const {
        for (uint64_t v : w_)
            if (v) return true;
        return false;
    }
    bool none() const { return !any(); }

    IdxSet& operator&=(const IdxSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    IdxSet& operator|=(const IdxSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    IdxSet& operator-=(const IdxSet& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    friend IdxSet operator&(IdxSet a, const IdxSet& b) { return a &= b; }
    friend IdxSet operator|(IdxSet a, const IdxSet& b) { return a |= b; }
    friend IdxSet operator-(IdxSet a, const IdxSet& b) { return a -= b; }

    bool operator==(const IdxSet& o) const { return n_ == o.n_ && w_ == o.w_; }

    // a \subseteq b
    bool subset_of(const IdxSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const IdxSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    std::vector<size_t> indices() const {
        std::vector<size_t> out;
        out.reserve(count());
        for (size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }
    template <class F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t v = w_[wi];
            while (v) {
                unsigned b = unsigned(__builtin_ctzll(v));
                f(wi * 64 + b);
                v &= v - 1;
            }
        }
    }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// Dense boolean relation on n points, one IdxSet row per source.
class RelMatrix {
  public:
    RelMatrix() = default;
    explicit RelMatrix(size_t n) : n_(n), rows_(n, IdxSet(n)) {}
    size_t size() const { return n_; }
    IdxSet& row(size_t i) { return rows_[i]; }
    const IdxSet& row(size_t i) const { return rows_[i]; }
    bool at(size_t i, size_t j) const { return rows_[i].test(j); }
    void set(size_t i, size_t j) { rows_[i].set(j); }

  private:
    size_t n_ = 0;
    std::vector<IdxSet> rows_;
};

// Chunked parallel map; assembly is by index so results are deterministic
// for any worker count.
template <class F>
inline void parallel_for(size_t n, int workers, F&& body) {
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    size_t chunk = (n + size_t(workers) - 1) / size_t(workers);
    std::vector<std::future<void>> fs;
    for (int w = 0; w < workers; ++w) {
        size_t b = size_t(w) * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        fs.push_back(std::async(std::launch::async, [&body, b, e] {
            for (size_t i = b; i < e; ++i) body(i);
        }));
    }
    for (auto& f : fs) f.get();
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    double uniform(double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(eng);
    }
    int uniform_int(int a, int b) {
        std::uniform_int_distribution<int> d(a, b);
        return d(eng);
    }
};

inline bool approx_eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace horizon
