#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horizon/gallery.hpp"
#include "horizon/ip.hpp"
#include "horizon/relation.hpp"

namespace horizon {

// A parametric family n |-> IP handle (or plain window subset). When the
// value range is eventually periodic the tail descriptor makes liminf and
// limsup exact; otherwise they are stabilized over doubling horizons.
struct SetFamily {
    std::function<IPHandle(int)> handle_at;  // preferred
    std::function<std::function<bool(const Pt&)>(int)> subset_at;
    std::optional<int> period;  // values repeat with this period for n >= tail_start
    int tail_start = 1;
    std::string label;

    bool is_handles() const { return bool(handle_at); }

    static SetFamily of_handles(std::function<IPHandle(int)> f, std::string label = "") {
        SetFamily fam;
        fam.handle_at = std::move(f);
        fam.label = std::move(label);
        return fam;
    }
    static SetFamily of_subsets(std::function<std::function<bool(const Pt&)>(int)> f,
                                std::string label = "") {
        SetFamily fam;
        fam.subset_at = std::move(f);
        fam.label = std::move(label);
        return fam;
    }
    SetFamily subsequence(std::function<int(int)> j) const {
        SetFamily out = *this;
        if (handle_at) {
            auto h = handle_at;
            out.handle_at = [h, j](int n) { return h(j(n)); };
        }
        if (subset_at) {
            auto s = subset_at;
            out.subset_at = [s, j](int n) { return s(j(n)); };
        }
        // periodicity does not survive an arbitrary index map
        out.period.reset();
        out.label += "-sub";
        return out;
    }
};

inline IdxSet realize_at(const Window& w, const SetFamily& fam, int n,
                         int depth = kDefaultDepth) {
    if (fam.handle_at) return realize(w, fam.handle_at(n), depth);
    auto pred = fam.subset_at(n);
    return realize_pred(w, pred);
}

struct TailSets {
    IdxSet liminf;
    IdxSet limsup;
    bool exact = false;          // via tail descriptor
    bool indeterminate = false;  // horizon doubling did not stabilize
};

// Set-theoretic liminf / limsup over the window.
inline TailSets set_limits(const Window& w, const SetFamily& fam, int horizon,
                           int depth = kDefaultDepth) {
    if (horizon < 2) throw DomainError("set_limits: horizon must be >= 2");
    TailSets out;
    if (fam.period) {
        int p = *fam.period;
        IdxSet inf_s(w.size()), sup_s(w.size());
        bool first = true;
        for (int k = 0; k < p; ++k) {
            IdxSet r = realize_at(w, fam, fam.tail_start + k, depth);
            if (first) {
                inf_s = r;
                sup_s = r;
                first = false;
            } else {
                inf_s &= r;
                sup_s |= r;
            }
        }
        out.liminf = inf_s;
        out.limsup = sup_s;
        out.exact = true;
        return out;
    }
    auto tail = [&](int lo, int hi) {
        IdxSet inf_s(w.size()), sup_s(w.size());
        bool first = true;
        for (int n = lo; n <= hi; ++n) {
            IdxSet r = realize_at(w, fam, n, depth);
            if (first) {
                inf_s = r;
                sup_s = r;
                first = false;
            } else {
                inf_s &= r;
                sup_s |= r;
            }
        }
        return std::make_pair(inf_s, sup_s);
    };
    auto [i1, s1] = tail(horizon / 2, horizon);
    auto [i2, s2] = tail(horizon / 4 < 2 ? 2 : horizon / 4, horizon / 2);
    out.liminf = i1;
    out.limsup = s1;
    out.indeterminate = !(core_equal(w, i1, i2) && core_equal(w, s1, s2));
    return out;
}

inline IdxSet set_liminf(const Window& w, const SetFamily& fam, int horizon,
                         int depth = kDefaultDepth) {
    return set_limits(w, fam, horizon, depth).liminf;
}
inline IdxSet set_limsup(const Window& w, const SetFamily& fam, int horizon,
                         int depth = kDefaultDepth) {
    return set_limits(w, fam, horizon, depth).limsup;
}

// ---------------------------------------------------------------------------
// liminf^- / limsup^- inside a realized family order (J^{-cap} via the
// family's subset matrix, which is alpha(<<_BS) by Eq. (1))

struct FamilyTailSets {
    std::vector<size_t> liminf_minus;  // handle indices
    std::vector<size_t> limsup_minus;
    bool exact = false;
    bool indeterminate = false;
};

// seq maps n to an index into fam.handles
inline FamilyTailSets family_limits_minus(const IPFamilyWindow& fam,
                                          const std::function<size_t(int)>& seq,
                                          std::optional<int> period, int horizon) {
    FamilyTailSets out;
    const size_t m = fam.handles.size();
    auto joint_past = [&](const std::vector<size_t>& values) {
        std::vector<char> in(m, 1);
        for (size_t c = 0; c < m; ++c)
            for (size_t v : values)
                if (!fam.subset.at(c, v)) {
                    in[c] = 0;
                    break;
                }
        return in;
    };
    if (period) {
        std::vector<size_t> reps;
        for (int k = 0; k < *period; ++k) reps.push_back(seq(1 + k));
        auto inf_in = joint_past(reps);
        for (size_t c = 0; c < m; ++c)
            if (inf_in[c]) out.liminf_minus.push_back(c);
        // limsup over subsequences: a tail of any subsequence ranges over a
        // nonempty subset of the periodic values; singletons dominate
        std::vector<char> sup_in(m, 0);
        for (size_t v : reps) {
            auto ji = joint_past({v});
            for (size_t c = 0; c < m; ++c) sup_in[c] |= ji[c];
        }
        for (size_t c = 0; c < m; ++c)
            if (sup_in[c]) out.limsup_minus.push_back(c);
        out.exact = true;
        return out;
    }
    auto tail_values = [&](int lo, int hi) {
        std::vector<size_t> v;
        for (int n = lo; n <= hi; ++n) v.push_back(seq(n));
        return v;
    };
    auto inf1 = joint_past(tail_values(horizon / 2, horizon));
    auto inf2 = joint_past(tail_values(std::max(2, horizon / 4), horizon / 2));
    for (size_t c = 0; c < m; ++c)
        if (inf1[c]) out.liminf_minus.push_back(c);
    out.limsup_minus = out.liminf_minus;  // without a descriptor, tail-stable families only
    out.indeterminate = (inf1 != inf2);
    return out;
}

// ---------------------------------------------------------------------------
// L_+ : primary route via set-theoretic limits followed by I^-, optional
// cross-check in the family order. Both must agree when the family window
// is supplied.

struct LimitVerdict {
    std::vector<size_t> candidates;  // indices into the candidate list
    bool indeterminate = false;
    IdxSet i_liminf, i_limsup;
};

inline LimitVerdict l_plus(const Window& w, const SetFamily& fam,
                           const std::vector<IPHandle>& candidates, int horizon,
                           int depth = kDefaultDepth,
                           const IPFamilyWindow* cross_fam = nullptr,
                           const std::function<size_t(int)>* cross_seq = nullptr,
                           size_t cross_cand_base = 0) {
    TailSets ts = set_limits(w, fam, horizon, depth);
    LimitVerdict v;
    v.indeterminate = ts.indeterminate;
    v.i_liminf = chron_past(w, ts.liminf);
    v.i_limsup = chron_past(w, ts.limsup);
    for (size_t ci = 0; ci < candidates.size(); ++ci) {
        IdxSet r = realize(w, candidates[ci], depth);
        if (equal_margin(w, v.i_liminf, r) && equal_margin(w, v.i_limsup, r))
            v.candidates.push_back(ci);
    }
    if (cross_fam && cross_seq) {
        // J^{pm cap} route: I^-_BS of liminf^- must match I^-_BS of the winner
        FamilyTailSets ft = family_limits_minus(*cross_fam, *cross_seq, fam.period, horizon);
        const size_t m = cross_fam->handles.size();
        auto bs_past_of = [&](const std::vector<size_t>& set) {
            std::vector<char> r(m, 0);
            for (size_t c = 0; c < m; ++c)
                for (size_t u : set)
                    if (cross_fam->bs.at(c, u)) {
                        r[c] = 1;
                        break;
                    }
            return r;
        };
        auto lm = bs_past_of(ft.liminf_minus);
        auto ls = bs_past_of(ft.limsup_minus);
        std::vector<size_t> jwinners;
        for (size_t ci = 0; ci < candidates.size(); ++ci) {
            auto rv = bs_past_of({cross_cand_base + ci});
            if (lm == rv && ls == rv) jwinners.push_back(ci);
        }
        if (!ft.indeterminate && jwinners != v.candidates)
            throw ConsistencyError("l_plus: set-theoretic and family-order routes disagree");
    }
    return v;
}

// ---------------------------------------------------------------------------
// L_- : candidates inside liminf, maximal among the enumerated IPs in limsup

inline std::vector<size_t> l_minus(const Window& w, const SetFamily& fam,
                                   const std::vector<IPHandle>& enumerated, int horizon,
                                   int depth = kDefaultDepth) {
    TailSets ts = set_limits(w, fam, horizon, depth);
    std::vector<IdxSet> rs;
    rs.reserve(enumerated.size());
    for (const auto& h : enumerated) rs.push_back(realize(w, h, depth));
    std::vector<size_t> inside;
    for (size_t i = 0; i < enumerated.size(); ++i)
        if (rs[i].any() && subset_margin(w, rs[i], ts.liminf) &&
            subset_margin(w, rs[i], ts.limsup))
            inside.push_back(i);
    std::vector<size_t> out;
    for (size_t i : inside) {
        bool maximal = true;
        for (size_t j : inside) {
            if (i == j) continue;
            if (strict_super_margin(w, rs[i], rs[j])) {
                maximal = false;
                break;
            }
        }
        if (maximal) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frechet-Urysohn closure axioms on a corpus of families

struct FrechetReport {
    bool constant_axiom = true;
    bool subsequence_axiom = true;
    bool nonlimit_axiom = true;
};

struct FrechetCase {
    SetFamily family;
    std::vector<IPHandle> candidates;
    std::optional<size_t> expected;  // candidate index, or none
};

inline FrechetReport tau_plus_frechet_axioms(const Window& w, const std::vector<FrechetCase>& corpus,
                                             int horizon, int depth = kDefaultDepth) {
    FrechetReport rep;
    for (const auto& c : corpus) {
        LimitVerdict v = l_plus(w, c.family, c.candidates, horizon, depth);
        bool conv = c.expected.has_value();
        // axiom 1: constant families converge to their value (constant
        // families are periodic with period 1)
        if (c.family.period && *c.family.period == 1) {
            if (!(v.candidates.size() == 1 && conv && v.candidates[0] == *c.expected))
                rep.constant_axiom = false;
        }
        if (conv) {
            // axiom 2: subsequences keep the limit
            SetFamily even = c.family.subsequence([](int n) { return 2 * n; });
            even.period = c.family.period;  // even reindexing keeps periodic ranges periodic
            LimitVerdict ve = l_plus(w, even, c.candidates, horizon, depth);
            if (!(ve.candidates == v.candidates)) rep.subsequence_axiom = false;
        } else {
            // axiom 3: some subsequence avoids every non-limit uniformly;
            // for periodic families a constant-value subsequence works
            if (c.family.period && *c.family.period >= 2) {
                SetFamily cons = c.family.subsequence([p = *c.family.period](int n) { return 1 + p * n; });
                cons.period = 1;
                LimitVerdict vc = l_plus(w, cons, c.candidates, horizon, depth);
                // every sub-subsequence of a constant family has the same
                // verdict; the original family must not share it
                if (!v.candidates.empty() && vc.candidates == v.candidates)
                    rep.nonlimit_axiom = false;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// First-order failure probe on the analytic slit oracle.

struct FirstOrderReport {
    bool x_converges = false;           // L_+(x) = {x_inf}
    bool y_converge = false;            // L_+(y^j) = {x(j)} for all sampled j
    bool probe_in_liminf_x = false;     // probe in I^-(liminf^- x)
    bool probe_outside_diagonals = false;
    int diagonals_checked = 0;
};

// x(n) = (1+1/n)(1,1), y^j(k) = (1+1/j, 1+1/j+1/k), probe in the lower
// half-plane. The x and y hypotheses run through the set-theoretic route;
// the demonstration uses the order-theoretic liminf (joint causal pasts).
inline FirstOrderReport first_order_probe(const Window& w, int j_max, int idx_bound,
                                          const Pt& probe = Pt(-3, -1), int horizon = 128) {
    const Space& sp = w.space;
    FirstOrderReport rep;

    auto xn = [](int n) { return Pt(1.0 + 1.0 / n, 1.0 + 1.0 / n); };
    auto ynk = [](int j, int k) { return Pt(1.0 + 1.0 / j, 1.0 + 1.0 / j + 1.0 / k); };

    SetFamily fx = SetFamily::of_handles([xn](int n) { return IPHandle::pip(xn(n)); }, "x");
    LimitVerdict vx = l_plus(w, fx, {IPHandle::pip(Pt(1, 1))}, horizon);
    rep.x_converges = (vx.candidates.size() == 1) && !vx.indeterminate;

    rep.y_converge = true;
    for (int j = 1; j <= j_max; ++j) {
        SetFamily fy =
            SetFamily::of_handles([ynk, j](int k) { return IPHandle::pip(ynk(j, k)); }, "y");
        LimitVerdict vy = l_plus(w, fy, {IPHandle::pip(xn(j))}, horizon);
        if (vy.candidates.size() != 1 || vy.indeterminate) rep.y_converge = false;
    }

    // order-theoretic liminf of x: joint causal past of the tail; the tail
    // intersection is monotone, so the window evaluation is exact
    IdxSet lim_x(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        if (!w.ok[i]) continue;
        bool in_all = true;
        for (int m = 1; m <= horizon && in_all; ++m)
            if (!sp.ccausal(w.pts[i], xn(m))) in_all = false;
        if (in_all) lim_x.set(i);
    }
    bool probe_in = false;
    lim_x.for_each([&](size_t q) {
        if (!probe_in && sp.chron(probe, w.pts[q])) probe_in = true;
    });
    rep.probe_in_liminf_x = probe_in;

    // every diagonal with indices below the bound has its limsup^- inside
    // the union of the single-point causal pasts J^-(y^n(k)); the probe must
    // not chronologically precede any of them
    bool excluded = true;
    for (int n = 1; n <= idx_bound && excluded; ++n)
        for (int k = 1; k <= idx_bound && excluded; ++k) {
            ++rep.diagonals_checked;
            for (size_t i = 0; i < w.size() && excluded; ++i) {
                if (!w.ok[i]) continue;
                if (sp.ccausal(w.pts[i], ynk(n, k)) && sp.chron(probe, w.pts[i]))
                    excluded = false;
            }
        }
    rep.probe_outside_diagonals = excluded;
    return rep;
}

}  // namespace horizon
