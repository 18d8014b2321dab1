#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horizon/edt.hpp"
#include "horizon/relation.hpp"
#include "horizon/space.hpp"

namespace horizon {

enum class ChainCert { Chronological, Causal };

struct ChainGen {
    std::function<Pt(int)> at;
    ChainCert cert = ChainCert::Chronological;
};

// An indecomposable past set given by its generator: a point (PIP) or a
// chain (TIP). Membership is evaluated through the generator, or through
// an analytic formula when the gallery provides one.
struct IPHandle {
    std::variant<Pt, ChainGen> gen;
    std::function<bool(const Pt&)> analytic;  // optional membership formula
    std::string label;

    bool is_pip() const { return std::holds_alternative<Pt>(gen); }
    const Pt& vertex() const { return std::get<Pt>(gen); }
    const ChainGen& chain() const { return std::get<ChainGen>(gen); }

    static IPHandle pip(const Pt& p, std::string label = "") {
        IPHandle h;
        h.gen = p;
        h.label = std::move(label);
        return h;
    }
    static IPHandle tip(std::function<Pt(int)> c, ChainCert cert = ChainCert::Chronological,
                        std::string label = "") {
        IPHandle h;
        h.gen = ChainGen{std::move(c), cert};
        h.label = std::move(label);
        return h;
    }
};

inline constexpr int kDefaultDepth = 64;

// member(x, N): x << p for a PIP, exists n <= N with x << c(n) for a TIP.
// Monotone nondecreasing in N.
inline bool ip_member(const Space& sp, const IPHandle& a, const Pt& x, int depth) {
    if (a.analytic) return a.analytic(x);
    if (a.is_pip()) return sp.chron(x, a.vertex());
    const auto& ch = a.chain();
    for (int n = depth; n >= 1; --n)  // later links dominate
        if (sp.chron(x, ch.at(n))) return true;
    return false;
}

inline void check_chain_cert(const Space& sp, const IPHandle& a, int depth) {
    if (a.is_pip()) return;
    const auto& ch = a.chain();
    for (int n = 1; n < depth; ++n) {
        Pt u = ch.at(n), v = ch.at(n + 1);
        bool ok = (ch.cert == ChainCert::Chronological)
                      ? sp.chron(u, v)
                      : (sp.ccausal(u, v) && !(u == v));
        if (!ok)
            throw ConsistencyError("chain certificate violated at link " + std::to_string(n) +
                                   (a.label.empty() ? "" : " of " + a.label));
    }
}

inline IdxSet realize(const Window& w, const IPHandle& a, int depth = kDefaultDepth) {
    if (depth < 1) throw DomainError("realize: depth must be >= 1");
    if (!a.analytic) check_chain_cert(w.space, a, depth);
    IdxSet s(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        if (w.ok[i] && ip_member(w.space, a, w.pts[i], depth)) s.set(i);
    return s;
}

// ---------------------------------------------------------------------------
// Indecomposability

struct IndecompResult {
    bool indecomposable = true;
    bool brute_ran = false;
    std::optional<WitnessPair> synoptic_witness;  // pair with empty joint future in A
    std::optional<std::pair<IdxSet, IdxSet>> decomposition;
};

namespace detail {

// maximal elements of A in the window chronology
inline std::vector<size_t> maximal_elements(const Window& w, const IdxSet& a) {
    std::vector<size_t> idx = a.indices();
    std::vector<size_t> out;
    for (size_t p : idx) {
        bool maximal = true;
        for (size_t q : idx)
            if (q != p && w.space.chron(w.pts[p], w.pts[q])) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(p);
    }
    return out;
}

inline IdxSet down_closure(const Window& w, const IdxSet& a, const std::vector<size_t>& tops) {
    IdxSet out(w.size());
    for (size_t t : tops) out.set(t);
    a.for_each([&](size_t p) {
        for (size_t t : tops)
            if (w.space.chron(w.pts[p], w.pts[t])) {
                out.set(p);
                break;
            }
    });
    return out;
}

}  // namespace detail

// Core subset of A: members away from the window faces and at least
// radius_mult*h from any admissible non-member (the spec's erosion margin).
inline IdxSet eroded_set(const Window& w, const IdxSet& a, double radius_mult = 2.0) {
    IdxSet out(w.size());
    const double r = radius_mult * w.h * 1.0001;
    if (w.space.dim == 2 && !w.space.periodic_x) {
        std::vector<char> comp(w.size(), 0);
        for (size_t i = 0; i < w.size(); ++i) comp[i] = (w.ok[i] && !a.test(i)) ? 1 : 0;
        auto d = edt_grid(comp, w.n[0], w.n[1], w.pitch[0], w.pitch[1]);
        a.for_each([&](size_t i) {
            if (w.core[i] && d[i] > r) out.set(i);
        });
        return out;
    }
    if (w.space.dim == 2 && w.space.periodic_x) {
        const size_t nt = w.n[0], nx = w.n[1];
        std::vector<char> comp(nt * nx * 3, 0);
        for (size_t it = 0; it < nt; ++it)
            for (size_t ix = 0; ix < nx; ++ix) {
                size_t i = it * nx + ix;
                if (w.ok[i] && !a.test(i))
                    for (int k = 0; k < 3; ++k) comp[it * 3 * nx + size_t(k) * nx + ix] = 1;
            }
        auto d = edt_grid(comp, nt, 3 * nx, w.pitch[0], w.pitch[1]);
        a.for_each([&](size_t i) {
            size_t it = i / nx, ix = i % nx;
            if (w.core[i] && d[it * 3 * nx + nx + ix] > r) out.set(i);
        });
        return out;
    }
    a.for_each([&](size_t i) {
        if (!w.core[i]) return;
        for (size_t j = 0; j < w.size(); ++j) {
            if (a.test(j) || !w.ok[j]) continue;
            if (w.space.dist(w.pts[i], w.pts[j]) <= r) return;
        }
        out.set(i);
    });
    return out;
}

// Set comparison up to the erosion margin: the only computable surrogate
// for literal inclusion between realized sets.
inline bool subset_margin(const Window& w, const IdxSet& a, const IdxSet& b,
                          double radius_mult = 2.0) {
    IdxSet ea = eroded_set(w, a, radius_mult);
    return ea.subset_of(b);
}
inline bool equal_margin(const Window& w, const IdxSet& a, const IdxSet& b,
                         double radius_mult = 2.0) {
    return subset_margin(w, a, b, radius_mult) && subset_margin(w, b, a, radius_mult);
}
// strictly larger beyond the margin band
inline bool strict_super_margin(const Window& w, const IdxSet& small, const IdxSet& big,
                                double radius_mult = 2.0) {
    if (!subset_margin(w, small, big, radius_mult)) return false;
    IdxSet eb = eroded_set(w, big, radius_mult);
    return !(eb - small).none() && !subset_margin(w, big, small, radius_mult);
}

// Synoptic scan plus (small sets) a brute-force decomposition search over
// bipartitions of the maximal elements. Verdicts must agree.
inline IndecompResult is_indecomposable(const Window& w, const IdxSet& a,
                                        size_t brute_limit = 20) {
    IndecompResult res;
    IdxSet core = eroded_set(w, a);
    std::vector<size_t> probes = core.indices();

    bool synoptic = true;
    std::optional<WitnessPair> wit;
    // future rows restricted to A
    for (size_t ii = 0; ii < probes.size() && synoptic; ++ii) {
        for (size_t jj = ii; jj < probes.size(); ++jj) {
            size_t p = probes[ii], q = probes[jj];
            bool met = false;
            a.for_each([&](size_t z) {
                if (!met && w.space.chron(w.pts[p], w.pts[z]) &&
                    w.space.chron(w.pts[q], w.pts[z]))
                    met = true;
            });
            if (!met) {
                synoptic = false;
                wit = WitnessPair{p, q};
                break;
            }
        }
    }
    res.indecomposable = synoptic;
    res.synoptic_witness = wit;

    std::vector<size_t> tops = detail::maximal_elements(w, a);
    if (tops.size() <= brute_limit && tops.size() >= 1 && !probes.empty()) {
        res.brute_ran = true;
        bool decomposable = false;
        const size_t m = tops.size();
        for (uint64_t mask = 1; mask + 1 < (uint64_t(1) << m) && !decomposable; ++mask) {
            std::vector<size_t> t1, t2;
            for (size_t k = 0; k < m; ++k)
                ((mask >> k) & 1 ? t1 : t2).push_back(tops[k]);
            IdxSet b = detail::down_closure(w, a, t1);
            IdxSet c = detail::down_closure(w, a, t2);
            bool b_proper = false, c_proper = false;
            core.for_each([&](size_t i) {
                if (!b.test(i)) b_proper = true;
                if (!c.test(i)) c_proper = true;
            });
            if (b_proper && c_proper) {
                decomposable = true;
                res.decomposition = {b, c};
            }
        }
        if (decomposable == synoptic)
            throw ConsistencyError("is_indecomposable: synoptic and decomposition tests disagree");
    }
    return res;
}

inline IdxSet past_of_chain(const Window& w, const std::vector<size_t>& chain) {
    IdxSet gen(w.size());
    for (size_t i : chain) gen.set(i);
    return chron_past(w, gen);
}

// Inductive synoptic chain construction. The returned chain lies in A and
// its window past reproduces A up to the erosion margin.
inline std::vector<size_t> chain_for_ip(const Window& w, const IdxSet& a,
                                         double radius_mult = 2.0) {
    if (a.none()) throw DomainError("chain_for_ip: empty set");
    IdxSet core = eroded_set(w, a, radius_mult);
    if (core.none()) core = a;  // tiny sets erode away entirely
    // targets: eroded members maximal within the eroded set
    IdxSet targets_mask = core;
    std::vector<size_t> targets = detail::maximal_elements(w, targets_mask);

    std::vector<size_t> chain;
    std::vector<size_t> members = a.indices();
    std::sort(members.begin(), members.end(),
              [&](size_t u, size_t v) { return w.pts[u].t() < w.pts[v].t(); });
    // top targets first: the chain should climb the spine toward the apex,
    // not crawl the null edges where grid futures thin out
    std::sort(targets.begin(), targets.end(),
              [&](size_t u, size_t v) { return w.pts[u].t() > w.pts[v].t(); });
    // start below as many targets as possible
    size_t q = core.indices().front();
    {
        size_t best = 0;
        core.for_each([&](size_t c) {
            size_t dom = 0;
            for (size_t t : targets)
                if (w.space.chron(w.pts[c], w.pts[t])) ++dom;
            if (dom > best) {
                best = dom;
                q = c;
            }
        });
    }
    chain.push_back(q);
    size_t skipped_example = 0;
    bool any_skipped = false;
    for (size_t tgt : targets) {
        if (tgt == q || w.space.chron(w.pts[tgt], w.pts[q])) continue;  // dominated
        if (w.space.chron(w.pts[q], w.pts[tgt])) {  // tgt itself extends the chain
            chain.push_back(tgt);
            q = tgt;
            continue;
        }
        // earliest member strictly above both tgt and the chain head;
        // eroded members are preferred, edge-hugging cells have no usable
        // grid future inside A and would wedge the chain
        std::optional<size_t> next;
        for (int pass = 0; pass < 2 && !next; ++pass) {
            for (size_t z : members) {
                if (pass == 0 && !core.test(z)) continue;
                if (z != tgt && w.space.chron(w.pts[tgt], w.pts[z]) &&
                    w.space.chron(w.pts[q], w.pts[z])) {
                    next = z;
                    break;
                }
            }
        }
        if (!next) {
            // grid slivers can starve single pairs; coverage is re-checked below
            any_skipped = true;
            skipped_example = tgt;
            continue;
        }
        chain.push_back(*next);
        q = *next;
    }
    // every eroded member must lie under the chain, up to the 2h band
    IdxSet covered = past_of_chain(w, chain);
    for (size_t i : chain) covered.set(i);
    IdxSet missing(w.size());
    core.for_each([&](size_t i) {
        if (covered.test(i)) return;
        for (size_t j = 0; j < w.size(); ++j)
            if (covered.test(j) &&
                w.space.dist(w.pts[i], w.pts[j]) <= radius_mult * w.h * 1.0001)
                return;
        missing.set(i);
    });
    if (missing.any()) {
        size_t bad = any_skipped && missing.test(skipped_example) ? skipped_example
                                                                  : missing.indices().front();
        throw DomainError(
            "chain_for_ip: synoptic choice failed (set not indecomposable?) at pair (" +
            std::to_string(q) + "," + std::to_string(bad) + ")");
    }
    return chain;
}

// ---------------------------------------------------------------------------
// Budic-Sachs chronology on handles

// A <<_BS B : the joint chronological future of A meets B. Witnesses are
// searched in the window; joint futures are queried pointwise, with the
// causal-cone fast path for generators.
inline bool bs_chron(const Window& w, const IPHandle& a, const IPHandle& b,
                     int depth = kDefaultDepth, const IdxSet* b_real = nullptr,
                     const IdxSet* a_real = nullptr) {
    IdxSet bset = b_real ? *b_real : realize(w, b, depth);
    const Space& sp = w.space;

    if (sp.causal_pushup && sp.has_causal()) {
        if (a.is_pip()) {
            // I^{+cap}(I^-(p)) is the causal cone J^+(p) when push-up holds
            bool hit = false;
            bset.for_each([&](size_t z) {
                if (!hit && sp.causal(a.vertex(), w.pts[z])) hit = true;
            });
            return hit;
        }
        if (!a.analytic) {
            // chain generator: witness must sit causally above every link
            const auto& ch = a.chain();
            bool hit = false;
            bset.for_each([&](size_t z) {
                if (hit) return;
                bool all = true;
                for (int n = depth; n >= 1 && all; --n)
                    if (!sp.causal(ch.at(n), w.pts[z])) all = false;
                if (all) hit = true;
            });
            return hit;
        }
    }

    IdxSet aset = a_real ? *a_real : realize(w, a, depth);
    std::vector<size_t> amem = aset.indices();
    std::sort(amem.begin(), amem.end(),
              [&](size_t u, size_t v) { return w.pts[u].t() > w.pts[v].t(); });
    bool hit = false;
    bset.for_each([&](size_t z) {
        if (hit) return;
        for (size_t ai : amem)
            if (!sp.chron(w.pts[ai], w.pts[z])) return;
        hit = true;
    });
    return hit;
}

// Joint chronological future of a realized set, window-evaluated.
inline IdxSet joint_future(const Window& w, const IdxSet& a) {
    IdxSet out(w.size());
    std::vector<size_t> amem = a.indices();
    std::sort(amem.begin(), amem.end(),
              [&](size_t u, size_t v) { return w.pts[u].t() > w.pts[v].t(); });
    for (size_t z = 0; z < w.size(); ++z) {
        if (!w.ok[z]) continue;
        bool all = true;
        for (size_t ai : amem)
            if (!w.space.chron(w.pts[ai], w.pts[z])) {
                all = false;
                break;
            }
        if (all) out.set(z);
    }
    return out;
}

struct IPFamilyWindow {
    std::vector<IPHandle> handles;
    std::vector<IdxSet> realized;
    RelMatrix bs;      // <<_BS verdicts
    RelMatrix subset;  // window-subset (core cells)
    Window window;     // copy of the evaluation arena
};

inline IPFamilyWindow make_family(const Window& w, std::vector<IPHandle> handles,
                                  int depth = kDefaultDepth) {
    IPFamilyWindow fam;
    fam.window = w;
    fam.handles = std::move(handles);
    const size_t m = fam.handles.size();
    fam.realized.reserve(m);
    for (const auto& h : fam.handles) fam.realized.push_back(realize(w, h, depth));
    fam.bs = RelMatrix(m);
    fam.subset = RelMatrix(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (bs_chron(w, fam.handles[i], fam.handles[j], depth, &fam.realized[j],
                         &fam.realized[i]))
                fam.bs.set(i, j);
            if (core_subset(w, fam.realized[i], fam.realized[j])) fam.subset.set(i, j);
        }
    return fam;
}

struct BsIdentityReport {
    bool alpha_equals_subset = true;
    bool past_reflecting = true;
    std::vector<WitnessPair> alpha_mismatches;
    std::vector<WitnessPair> reflection_witnesses;
};

// alpha(<<_BS) == subset from the family's own matrices; past-reflection
// evaluated against the window-embedded PIP probes i(z), which amplify the
// I^{+/-}_BS cones beyond the finite family (bottom handles would otherwise
// have empty pasts and trivialize the hypothesis).
inline BsIdentityReport check_bs_identity(const IPFamilyWindow& fam) {
    if (fam.handles.size() < 1) throw DomainError("check_bs_identity: empty family");
    BsIdentityReport rep;
    const size_t m = fam.handles.size();
    const Window& w = fam.window;
    RelMatrix fut(m), past(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (fam.bs.at(i, j)) {
                fut.row(i).set(j);
                past.row(j).set(i);
            }
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) {
            bool alpha = fut.row(b).subset_of(fut.row(a)) && past.row(a).subset_of(past.row(b));
            if (alpha != fam.subset.at(a, b)) {
                rep.alpha_equals_subset = false;
                if (rep.alpha_mismatches.size() < 8) rep.alpha_mismatches.push_back({a, b});
            }
        }

    // probe cones: below(i) = {z : i(z) <<_BS handle}, above(i) = {z : handle <<_BS i(z)}
    std::vector<IdxSet> below(m), above(m);
    for (size_t i = 0; i < m; ++i) {
        IdxSet bel(w.size());
        std::vector<size_t> amem = fam.realized[i].indices();
        std::sort(amem.begin(), amem.end(),
                  [&](size_t u, size_t v) { return w.pts[u].t() < w.pts[v].t(); });
        for (size_t z = 0; z < w.size(); ++z) {
            if (!w.core[z]) continue;
            for (size_t u : amem) {
                bool hit = w.space.causal_pushup && w.space.has_causal()
                               ? w.space.causal(w.pts[z], w.pts[u])
                               : w.space.chron(w.pts[z], w.pts[u]);
                if (hit) {
                    bel.set(z);
                    break;
                }
            }
        }
        below[i] = bel;
        IdxSet jf = joint_future(w, fam.realized[i]);
        above[i] = chron_future(w, jf);
    }
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) {
            if (below[a].subset_of(below[b]) && !above[b].subset_of(above[a])) {
                rep.past_reflecting = false;
                if (rep.reflection_witnesses.size() < 8) rep.reflection_witnesses.push_back({a, b});
            }
        }
    return rep;
}

inline IPHandle i_embed(const Space& sp, const Pt& p) {
    if (sp.admissible && !sp.admissible(p))
        throw DomainError("i_embed: point outside admissible region");
    return IPHandle::pip(p, "i(" + std::to_string(p.t()) + "," + std::to_string(p.x()) + ")");
}

// Handles with no <<_BS-future inside the family and no window witness:
// A <<_BS i(z) for some z iff the joint future of A meets some I^-(z),
// i.e. some member of the joint future has nonempty window future.
inline std::vector<size_t> future_boundary(const IPFamilyWindow& fam,
                                           int depth = kDefaultDepth) {
    std::vector<size_t> out;
    const size_t m = fam.handles.size();
    const Window& w = fam.window;
    for (size_t i = 0; i < m; ++i) {
        bool has_future = false;
        for (size_t j = 0; j < m && !has_future; ++j)
            if (j != i && fam.bs.at(i, j)) has_future = true;
        if (has_future) continue;
        IdxSet jf = joint_future(w, fam.realized[i]);
        bool wit = false;
        jf.for_each([&](size_t u) {
            if (wit) return;
            for (size_t z = 0; z < w.size(); ++z)
                if (w.ok[z] && w.space.chron(w.pts[u], w.pts[z])) {
                    wit = true;
                    return;
                }
        });
        (void)depth;
        if (!wit) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Endpoint map for a conformal future compactification

struct CFC {
    Space ambient;                 // N
    std::function<Pt(const Pt&)> embed;    // E
    std::function<Pt(const Pt&)> invert;   // E^{-1}, defined on E(M)
    std::function<bool(const Pt&)> in_image;
};

// Limit of E(c(n)) with Cauchy detection. PIPs extend continuously.
inline Pt endpoint_map(const CFC& cfc, const Space& sp, const IPHandle& a, int max_depth = 256,
                       double tol = 1e-6) {
    if (a.is_pip()) return cfc.embed(a.vertex());
    const auto& ch = a.chain();
    Pt prev = cfc.embed(ch.at(1));
    for (int n = 2; n <= max_depth; ++n) {
        Pt cur = cfc.embed(ch.at(n));
        double step = euclid(prev, cur, cfc.ambient.dim);
        if (step < tol) {
            // confirm Cauchy over a doubled lookahead
            Pt far = cfc.embed(ch.at(std::min(max_depth, 2 * n)));
            if (euclid(cur, far, cfc.ambient.dim) < 4 * tol) return far;
        }
        prev = cur;
    }
    throw ConsistencyError("endpoint_map: image sequence not Cauchy at max depth");
}

}  // namespace horizon
