#pragma once

#include <string>
#include <vector>

#include "horizon/ip.hpp"
#include "horizon/relation.hpp"

namespace horizon {

// Explicit reflexive partial order.
struct FinitePoset {
    std::vector<std::string> labels;
    RelMatrix leq;

    size_t size() const { return leq.size(); }
    bool le(size_t i, size_t j) const { return leq.at(i, j); }
    bool lt(size_t i, size_t j) const { return i != j && leq.at(i, j); }

    void validate() const {
        const size_t n = size();
        for (size_t i = 0; i < n; ++i)
            if (!leq.at(i, i)) throw DomainError("poset: not reflexive at " + label(i));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (i != j && leq.at(i, j) && leq.at(j, i))
                    throw DomainError("poset: antisymmetry fails at " + label(i) + "," + label(j));
                if (leq.at(i, j) && !leq.row(j).subset_of(leq.row(i)))
                    throw DomainError("poset: transitivity fails below " + label(i));
            }
    }
    std::string label(size_t i) const {
        return i < labels.size() ? labels[i] : std::to_string(i);
    }

    static FinitePoset total_order(size_t n) {
        FinitePoset p;
        p.leq = RelMatrix(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) p.leq.set(i, j);
        return p;
    }
    static FinitePoset antichain(size_t n) {
        FinitePoset p;
        p.leq = RelMatrix(n);
        for (size_t i = 0; i < n; ++i) p.leq.set(i, i);
        return p;
    }
    // product of two chains (grid order)
    static FinitePoset grid_product(size_t rows, size_t cols) {
        FinitePoset p;
        p.leq = RelMatrix(rows * cols);
        for (size_t a = 0; a < rows * cols; ++a)
            for (size_t b = 0; b < rows * cols; ++b)
                if (a / cols <= b / cols && a % cols <= b % cols) p.leq.set(a, b);
        return p;
    }
    // closed-cone causal order on an nt x nx grid (unit pitch)
    static FinitePoset mink_grid(size_t nt, size_t nx) {
        FinitePoset p;
        p.leq = RelMatrix(nt * nx);
        for (size_t a = 0; a < nt * nx; ++a)
            for (size_t b = 0; b < nt * nx; ++b) {
                long dt = long(b / nx) - long(a / nx);
                long dx = std::labs(long(b % nx) - long(a % nx));
                if (dt >= 0 && dx <= dt) p.leq.set(a, b);
            }
        return p;
    }
};

// x beta y : x <= y and some intermediate interval [u,v] is not a chain.
inline RelMatrix derive_beta(const FinitePoset& p) {
    const size_t n = p.size();
    RelMatrix beta(n);
    // incomparable pairs first; total orders exit immediately
    std::vector<std::pair<size_t, size_t>> incomp;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!p.le(i, j) && !p.le(j, i)) incomp.push_back({i, j});
    if (incomp.empty()) return beta;
    // bad(u,v): the interval [u,v] contains an incomparable pair
    RelMatrix bad(n);
    for (auto& [w1, w2] : incomp)
        for (size_t u = 0; u < n; ++u) {
            if (!p.le(u, w1) || !p.le(u, w2)) continue;
            for (size_t v = 0; v < n; ++v)
                if (p.le(w1, v) && p.le(w2, v)) bad.set(u, v);
        }
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y) {
            if (!p.le(x, y) || x == y) continue;
            bool found = false;
            for (size_t u = 0; u < n && !found; ++u) {
                if (!(p.lt(x, u))) continue;
                for (size_t v = 0; v < n && !found; ++v)
                    if (p.lt(u, v) && p.lt(v, y) && bad.at(u, v)) found = true;
            }
            if (found) beta.set(x, y);
        }
    return beta;
}

// p gamma q, read with both quantifier domains required nonempty (vacuous
// quantifiers would relate maximal points to everything). On any finite
// poset a cover a of p has an empty strict interval (p,a), so gamma is
// empty; the evaluation stays literal regardless.
inline RelMatrix derive_gamma(const FinitePoset& p) {
    const size_t n = p.size();
    RelMatrix gamma(n);
    for (size_t x = 0; x < n; ++x) {
        std::vector<size_t> up;
        for (size_t a = 0; a < n; ++a)
            if (p.lt(x, a)) up.push_back(a);
        if (up.empty()) continue;
        for (size_t y = 0; y < n; ++y) {
            std::vector<size_t> dn;
            for (size_t c = 0; c < n; ++c)
                if (p.lt(c, y)) dn.push_back(c);
            if (dn.empty()) continue;
            bool ok = true;
            for (size_t a : up) {
                bool has = false;
                for (size_t b = 0; b < n && !has; ++b)
                    if (p.lt(x, b) && p.lt(b, a) && p.le(b, y)) has = true;
                if (!has) {
                    ok = false;
                    break;
                }
            }
            for (size_t c : dn) {
                if (!ok) break;
                bool has = false;
                for (size_t d = 0; d < n && !has; ++d)
                    if (p.lt(c, d) && p.lt(d, y) && p.le(x, d)) has = true;
                if (!has) ok = false;
            }
            if (ok) gamma.set(x, y);
        }
    }
    return gamma;
}

struct ChronAxioms {
    bool irreflexive = true;
    bool transitive = true;
    bool connex = true;
    bool separable = true;
    bool is_chron_set() const { return irreflexive && transitive && connex && separable; }
};

inline ChronAxioms check_chron_axioms(const RelMatrix& rel) {
    ChronAxioms out;
    const size_t n = rel.size();
    for (size_t i = 0; i < n; ++i)
        if (rel.at(i, i)) out.irreflexive = false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (rel.at(i, j) && !rel.row(j).subset_of(rel.row(i))) out.transitive = false;
    for (size_t i = 0; i < n; ++i) {
        bool related = rel.row(i).any();
        for (size_t j = 0; j < n && !related; ++j) related = rel.at(j, i);
        if (!related) out.connex = false;
    }
    for (size_t i = 0; i < n; ++i)
        rel.row(i).for_each([&](size_t j) {
            bool mid = false;
            rel.row(i).for_each([&](size_t s) {
                if (!mid && rel.at(s, j)) mid = true;
            });
            if (!mid) out.separable = false;
        });
    return out;
}

inline ChronAxioms is_causal_set(const FinitePoset& p) {
    return check_chron_axioms(derive_gamma(p));
}

// alpha(rel) for a strict relation on an explicit finite carrier
inline RelMatrix alpha_of(const RelMatrix& rel) {
    const size_t n = rel.size();
    RelMatrix past(n), alpha(n);
    for (size_t i = 0; i < n; ++i)
        rel.row(i).for_each([&](size_t j) { past.row(j).set(i); });
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            if (rel.row(y).subset_of(rel.row(x)) && past.row(x).subset_of(past.row(y)))
                alpha.set(x, y);
    return alpha;
}

enum class RoundtripVerdict { Equal, ProperSubsetOfLeq, ProperSupersetOfLeq, Incomparable };

struct RoundtripReport {
    RoundtripVerdict verdict;
    size_t missing = 0;  // leq pairs absent from alpha(gamma)
    size_t extra = 0;    // alpha(gamma) pairs absent from leq
    std::vector<WitnessPair> witnesses;
};

inline RoundtripReport alpha_gamma_roundtrip(const FinitePoset& p) {
    RelMatrix ag = alpha_of(derive_gamma(p));
    RoundtripReport rep{RoundtripVerdict::Equal, 0, 0, {}};
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            bool a = ag.at(i, j), l = p.le(i, j);
            if (a == l) continue;
            if (l)
                ++rep.missing;
            else
                ++rep.extra;
            if (rep.witnesses.size() < 8) rep.witnesses.push_back({i, j});
        }
    if (rep.missing == 0 && rep.extra == 0)
        rep.verdict = RoundtripVerdict::Equal;
    else if (rep.missing == 0)
        rep.verdict = RoundtripVerdict::ProperSupersetOfLeq;
    else if (rep.extra == 0)
        rep.verdict = RoundtripVerdict::ProperSubsetOfLeq;
    else
        rep.verdict = RoundtripVerdict::Incomparable;
    return rep;
}

// Up-directed down-closed subsets (the order-ideal reading of IPs) against
// principal ideals; on finite posets every such set has a maximum.
struct IdealReport {
    size_t ideals = 0;
    size_t principal = 0;
    bool coincide = false;
};

inline IdealReport ideal_report(const FinitePoset& p) {
    const size_t n = p.size();
    if (n > 20) throw DomainError("ideal_report: poset too large for enumeration");
    IdealReport out;
    out.principal = n;
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        bool down = true, directed = true;
        for (size_t i = 0; i < n && down; ++i) {
            if (!((mask >> i) & 1)) continue;
            for (size_t j = 0; j < n; ++j)
                if (p.le(j, i) && !((mask >> j) & 1)) {
                    down = false;
                    break;
                }
        }
        if (!down) continue;
        for (size_t i = 0; i < n && directed; ++i) {
            if (!((mask >> i) & 1)) continue;
            for (size_t j = i + 1; j < n && directed; ++j) {
                if (!((mask >> j) & 1)) continue;
                bool ub = false;
                for (size_t k = 0; k < n && !ub; ++k)
                    if (((mask >> k) & 1) && p.le(i, k) && p.le(j, k)) ub = true;
                if (!ub) directed = false;
            }
        }
        if (directed) ++out.ideals;
    }
    out.coincide = (out.ideals == out.principal);
    return out;
}

// ---------------------------------------------------------------------------
// Achronality of the future boundary over a sampled window

struct AchronalityReport {
    bool no_causal_witness = true;  // no i(z) with handle subseteq i(z)
    bool no_chron_witness = true;   // no <<_BS witness into i(X)
    std::string witness;
};

inline AchronalityReport achronality_check(const Window& w, const IPHandle& boundary_handle,
                                           int depth = kDefaultDepth) {
    AchronalityReport rep;
    IdxSet a = realize(w, boundary_handle, depth);
    // handle subseteq I^-(z) at cell level iff z dominates every realized
    // member; erosion is deliberately not applied here, an eroded boundary
    // TIP would fit under near-apex PIPs
    IdxSet jf = joint_future(w, a);
    jf.for_each([&](size_t z) {
        if (rep.no_causal_witness && w.core[z]) {
            rep.no_causal_witness = false;
            rep.witness = "subset witness at index " + std::to_string(z);
        }
    });
    // handle <<_BS i(z) iff some joint-future point has a nonempty window future
    jf.for_each([&](size_t u) {
        if (!rep.no_chron_witness) return;
        for (size_t z = 0; z < w.size(); ++z)
            if (w.ok[z] && w.space.chron(w.pts[u], w.pts[z])) {
                rep.no_chron_witness = false;
                rep.witness = "bs witness at index " + std::to_string(z);
                return;
            }
    });
    return rep;
}

}  // namespace horizon
