// causal-horizon: batch driver for future completions of sampled
// chronological structures. Subcommands build gallery spaces, run boundary
// and convergence batteries, ladder audits and poset derivations, and emit
// JSON/CSV artifacts.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "horizon/io.hpp"
#include "horizon/ladder.hpp"
#include "horizon/limits.hpp"
#include "horizon/metrics.hpp"
#include "horizon/poset.hpp"
#include "horizon/respect.hpp"
#include "horizon/tfae.hpp"
#include "horizon/warp.hpp"

using namespace horizon;
namespace fs = std::filesystem;

namespace {

struct Config {
    std::string space = "strip";
    std::string input;
    std::string spec_path;
    std::string family_path;
    double h = 1.0 / 32.0;
    std::vector<double> window;  // t0 t1 x0 x1
    double tol = 1e-3;
    int depth = 64;
    int horizon = 128;
    uint64_t seed = 20260810;
    std::string out = ".";
    int workers = 1;
};

Box window_box(const Config& cfg, const Space& sp) {
    if (cfg.window.size() == 4)
        return Box::make2(cfg.window[0], cfg.window[1], cfg.window[2], cfg.window[3]);
    return sp.default_box;
}

fs::path out_dir(const Config& cfg) {
    const char* env = std::getenv("CAUSAL_HORIZON_OUT");
    fs::path p = env && *env ? fs::path(env) : fs::path(cfg.out);
    fs::create_directories(p);
    return p;
}

void emit(const fs::path& dir, const std::string& name, const std::string& text) {
    write_text((dir / name).string(), text);
    std::cout << "wrote " << (dir / name).string() << "\n";
}

// reference handle families used by the ip subcommand and the demos
std::vector<IPHandle> strip_family() {
    std::vector<IPHandle> fam;
    for (int k = 1; k <= 7; ++k) {
        fam.push_back(IPHandle::pip(Pt(k / 8.0, 0.25), "L" + std::to_string(k)));
        fam.push_back(IPHandle::pip(Pt(k / 8.0, 0.75), "R" + std::to_string(k)));
    }
    for (double xT : {0.25, 0.75}) {
        IPHandle t = chain_toward(Pt(1.0, xT), Pt(0.25, xT), "T@" + std::to_string(xT));
        t.analytic = [xT](const Pt& p) {
            return p.t() + std::abs(p.x() - xT) < 1.0 && p.t() > 0 && p.x() > 0 && p.x() < 1;
        };
        fam.push_back(t);
    }
    return fam;
}

std::vector<IPHandle> cylinder_family() {
    std::vector<IPHandle> fam;
    for (double t : {-4.0, -3.6, -3.2, -2.9}) fam.push_back(IPHandle::pip(Pt(t, 0.0)));
    for (double t : {0.5, 0.75, 1.0}) fam.push_back(IPHandle::pip(Pt(t, M_PI)));
    IPHandle all = IPHandle::tip([](int n) { return Pt(double(n), 0.0); },
                                 ChainCert::Chronological, "everything");
    all.analytic = [](const Pt&) { return true; };
    fam.push_back(all);
    return fam;
}

SetFamily family_from_json(const json& doc) {
    std::string kind = doc.value("kind", "pip");
    std::vector<Expr> coords;
    for (const auto& c : doc.at("vertex")) coords.push_back(Expr::parse(c.get<std::string>()));
    std::optional<int> period;
    if (doc.contains("period")) period = doc["period"].get<int>();
    SetFamily fam = SetFamily::of_handles(
        [coords, kind](int n) {
            Expr::Env env{{"n", double(n)}};
            Pt v;
            for (size_t a = 0; a < coords.size() && a < 3; ++a) v[int(a)] = coords[a].eval(env);
            if (kind == "tip") {
                IPHandle h;
                h.gen = v;
                double xT = v.x(), tT = v.t();
                h.analytic = [xT, tT](const Pt& p) {
                    return p.t() + std::abs(p.x() - xT) < tT;
                };
                return h;
            }
            return IPHandle::pip(v);
        },
        doc.value("label", std::string("family")));
    fam.period = period;
    return fam;
}

int cmd_validate(const Config& cfg) {
    fs::path dir = out_dir(cfg);
    RelationReport rep;
    if (!cfg.input.empty()) {
        auto [sp, labels] = load_chron_json(load_json_file(cfg.input));
        Window w = explicit_window(sp);
        rep = validate_chron(w);
        json j = relation_report_json(rep);
        j["points"] = labels;
        emit(dir, "validate.json", j.dump(2));
    } else {
        Space sp = make_space(cfg.space, cfg.h);
        Window w = make_window(sp, window_box(cfg, sp), cfg.h);
        rep = validate_chron(w);
        emit(dir, "validate.json", relation_report_json(rep).dump(2));
        emit(dir, "window.csv", window_csv(w));
    }
    std::cout << "irreflexive=" << rep.irreflexive << " transitive=" << rep.transitive
              << " connex=" << rep.connex << " separable=" << rep.separable << "\n";
    return rep.all_axioms() ? 0 : 1;
}

int cmd_ladder(const Config& cfg) {
    Space sp = make_space(cfg.space, cfg.h);
    Window w = make_window(sp, window_box(cfg, sp), cfg.h);
    LadderAudit a = audit(w, cfg.seed);
    fs::path dir = out_dir(cfg);
    emit(dir, "ladder.json", audit_json(a).dump(2));
    std::cout << "rung                        verdict\n";
    for (auto& [name, r] : a.rungs) {
        std::cout << "  " << name;
        for (size_t k = name.size(); k < 26; ++k) std::cout << ' ';
        std::cout << (r.value ? "pass" : "FAIL");
        if (!r.witness.empty()) std::cout << "   [" << r.witness << "]";
        std::cout << "\n";
    }
    if (!a.consistency_ok) {
        for (auto& note : a.consistency_notes) std::cout << "consistency: " << note << "\n";
        return 1;
    }
    return 0;
}

int cmd_ip(const Config& cfg) {
    Space sp = make_space(cfg.space, cfg.h);
    Window w = make_window(sp, window_box(cfg, sp), cfg.h);
    std::vector<IPHandle> handles;
    if (cfg.space == "strip")
        handles = strip_family();
    else if (cfg.space == "cylinder")
        handles = cylinder_family();
    else
        handles = gallery_enumerator(sp, w.box, 8 * cfg.h);
    IPFamilyWindow fam = make_family(w, handles, cfg.depth);
    BsIdentityReport rep = check_bs_identity(fam);
    fs::path dir = out_dir(cfg);
    json j = family_json(fam);
    j["alpha_equals_subset"] = rep.alpha_equals_subset;
    j["past_reflecting"] = rep.past_reflecting;
    emit(dir, "family.json", j.dump(2));
    std::cout << "handles=" << fam.handles.size()
              << " alpha==subset: " << (rep.alpha_equals_subset ? "pass" : "FAIL")
              << ", past-reflecting: " << (rep.past_reflecting ? "pass" : "FAIL") << "\n";
    return (rep.alpha_equals_subset && rep.past_reflecting) ? 0 : 1;
}

int cmd_boundary(const Config& cfg) {
    if (cfg.space != "strip") {
        std::cerr << "boundary: only the strip carries the reference compactification\n";
        return 2;
    }
    Space sp = make_space("strip", cfg.h);
    Window w = make_window(sp, sp.default_box, cfg.h);
    CFC cfc = strip_cfc();

    std::ostringstream csv;
    csv << "x_target,endpoint_t,endpoint_x,err\n";
    double max_err = 0;
    std::vector<IPHandle> handles;
    std::vector<SetFamily> fams;
    std::vector<std::function<Pt(int)>> eps;
    for (int k = 1; k <= 5; ++k) {
        double xT = k / 6.0;
        IPHandle t = chain_toward(Pt(1.0, xT), Pt(0.3, xT), "T@" + std::to_string(xT));
        t.analytic = [xT](const Pt& p) {
            return p.t() + std::abs(p.x() - xT) < 1.0 && p.x() > 0 && p.x() < 1 && p.t() > 0;
        };
        handles.push_back(t);
        Pt e = endpoint_map(cfc, sp, t);
        double err = euclid(e, Pt(1.0, xT), 2);
        max_err = std::max(max_err, err);
        csv << xT << "," << e.t() << "," << e.x() << "," << err << "\n";
    }
    for (int k = 1; k <= 7; ++k) handles.push_back(IPHandle::pip(Pt(k / 8.0, 0.5)));
    // five convergence families, mixed verdicts
    for (int f = 0; f < 5; ++f) {
        bool alternating = (f == 4);
        double xT = 0.3 + 0.1 * f;
        SetFamily fam = SetFamily::of_handles(
            [xT, alternating](int n) {
                double x = alternating ? (n % 2 ? 0.3 : 0.7) : xT + 0.2 / double(n + 1);
                IPHandle h;
                h.gen = Pt(1.0, x);
                h.analytic = [x](const Pt& p) { return p.t() + std::abs(p.x() - x) < 1.0; };
                return h;
            },
            "bfam");
        if (alternating) fam.period = 2;
        fams.push_back(fam);
        eps.push_back([xT, alternating](int n) {
            double x = alternating ? (n % 2 ? 0.3 : 0.7) : xT + 0.2 / double(n + 1);
            return Pt(1.0, x);
        });
    }
    RespectReport rep = respect_check(w, cfc, handles, fams, eps, cfg.horizon, cfg.tol);
    fs::path dir = out_dir(cfg);
    emit(dir, "boundary_chart.csv", csv.str());
    std::cout << "endpoint max err=" << max_err << " (2h=" << 2 * cfg.h << ")"
              << " roundtrip=" << (rep.roundtrip_ok ? "pass" : "FAIL")
              << " verdict-matches=" << rep.verdict_matches << "/" << rep.families << "\n";
    return (rep.roundtrip_ok && max_err <= 2 * cfg.h && rep.verdict_matches == rep.families) ? 0
                                                                                             : 1;
}

int cmd_converge(const Config& cfg) {
    Space sp = make_space(cfg.space, cfg.h);
    Window w = make_window(sp, window_box(cfg, sp), cfg.h);
    json doc = load_json_file(cfg.family_path);
    SetFamily fam = family_from_json(doc);
    IPHandle cand = fam.handle_at(1 << 16);
    if (doc.contains("candidate")) {
        json cd = doc;
        cd["vertex"] = doc["candidate"];
        cd.erase("period");
        cand = family_from_json(cd).handle_at(1);
    }
    MetricCloud cloud = cloud_from_window(w);
    MetricCloud wc = cloud;
    wc.mu = make_weights(cloud, "uniform");
    IdxSet cr = realize(w, cand, cfg.depth);
    std::ostringstream csv;
    csv << "n,d1,delta_mu,dh_window,graph_gap\n";
    for (int n = 1; n <= cfg.horizon; n *= 2) {
        IdxSet an = realize_at(w, fam, n, cfg.depth);
        double dh = hausdorff(cloud, an, cr);
        double gap = graph_gap(w, graph_fn(w, an), graph_fn(w, cr));
        csv << n << "," << (an.none() || cr.none() ? kInf : d1(cloud, an, cr)) << ","
            << delta_mu(wc, an, cr) << "," << dh << "," << gap << "\n";
    }
    LimitVerdict v = l_plus(w, fam, {cand}, cfg.horizon, cfg.depth);
    fs::path dir = out_dir(cfg);
    emit(dir, "converge_trace.csv", csv.str());
    std::cout << "L+ -> " << (v.candidates.empty() ? "no limit" : "candidate")
              << (v.indeterminate ? " (indeterminate)" : "") << "\n";
    return v.candidates.size() == 1 ? 0 : 1;
}

int cmd_tfae(const Config& cfg) {
    if (cfg.space != "strip") {
        std::cerr << "tfae: the builtin corpus lives on the strip\n";
        return 2;
    }
    Space sp = make_space(cfg.space, cfg.h);
    Window w = make_window(sp, window_box(cfg, sp), cfg.h);
    const double cx = 0.5 + 1.0 / 256.0, ct = 0.75 + 1.0 / 128.0;
    struct Case {
        std::string name;
        SetFamily fam;
        IPHandle cand;
    };
    std::vector<Case> cases;
    SetFamily conv = SetFamily::of_handles(
        [cx, ct](int n) { return IPHandle::pip(Pt(ct, cx + 0.25 / double(n * n))); }, "conv");
    cases.push_back({"shrinking", conv, IPHandle::pip(Pt(ct, cx))});
    SetFamily alt = SetFamily::of_handles(
        [ct](int n) { return IPHandle::pip(Pt(ct, n % 2 ? 0.75 : 0.25)); }, "alt");
    alt.period = 2;
    cases.push_back({"alternating", alt, IPHandle::pip(Pt(ct, 0.25))});
    SetFamily cons =
        SetFamily::of_handles([ct, cx](int) { return IPHandle::pip(Pt(ct, cx)); }, "const");
    cons.period = 1;
    cases.push_back({"constant", cons, IPHandle::pip(Pt(ct, cx))});

    std::ostringstream csv;
    csv << "family,d1,measure,hausdorff,set_limits,interior,closure,selection,lplus,tau_seq,graph,"
           "consistent\n";
    bool all_consistent = true;
    for (auto& c : cases) {
        TfaeVector v = tfae_battery(w, c.fam, c.cand, cfg.horizon, cfg.tol, cfg.seed, cfg.depth);
        csv << c.name << "," << v.d1_form << "," << v.measure_form << "," << v.hausdorff_form
            << "," << v.set_limit_form << "," << v.interior_form << "," << v.closure_form << ","
            << v.selection_form << "," << v.l_plus_form << "," << v.tau_seq_form << ","
            << v.graph_form << "," << v.consistent_core() << "\n";
        all_consistent = all_consistent && v.consistent_core();
    }
    fs::path dir = out_dir(cfg);
    emit(dir, "tfae.csv", csv.str());
    return all_consistent ? 0 : 1;
}

int cmd_warp(const Config& cfg) {
    WarpSpec spec = load_warp_json(load_json_file(cfg.spec_path));
    try {
        WarpCompletion comp = warp_completion(spec, 10, cfg.depth);
        std::ostringstream csv;
        csv << "handle,chart_state,star_integrals\n";
        for (size_t i = 0; i < comp.boundary.size(); ++i) {
            csv << comp.boundary[i].label << "," << comp.chart_state[i] << ",";
            for (size_t k = 0; k < comp.integrals.size(); ++k)
                csv << (k ? ";" : "") << comp.integrals[k].value;
            csv << "\n";
        }
        fs::path dir = out_dir(cfg);
        emit(dir, "warp_chart.csv", csv.str());
        std::cout << "chart pairs=" << comp.chart_pairs_checked
                  << " mismatches=" << comp.chart_mismatches << "\n";
        return comp.chart_mismatches == 0 ? 0 : 1;
    } catch (const DomainError& e) {
        std::cout << "refused: " << e.what() << "\n";
        return 1;
    }
}

int cmd_poset(const Config& cfg) {
    FinitePoset p = load_poset_json(load_json_file(cfg.input));
    RelMatrix beta = derive_beta(p), gamma = derive_gamma(p);
    ChronAxioms ax = check_chron_axioms(gamma);
    RoundtripReport rt = alpha_gamma_roundtrip(p);
    fs::path dir = out_dir(cfg);
    emit(dir, "beta.json", poset_to_json(p, beta, "beta").dump(2));
    emit(dir, "gamma.json", poset_to_json(p, gamma, "gamma").dump(2));
    std::cout << "gamma axioms: irreflexive=" << ax.irreflexive << " transitive=" << ax.transitive
              << " connex=" << ax.connex << " separable=" << ax.separable << "\n";
    std::cout << "alpha(gamma) vs leq: missing=" << rt.missing << " extra=" << rt.extra << "\n";
    if (p.size() <= 16) {
        IdealReport ir = ideal_report(p);
        std::cout << "up-directed down-sets=" << ir.ideals << " principal=" << ir.principal
                  << (ir.coincide ? " (coincide)" : "") << "\n";
    }
    return 0;
}

int cmd_demo(const Config& cfg, const std::string& name) {
    fs::path dir = out_dir(cfg);
    if (name == "io-counterexample") {
        Space sp = make_space("minkowski2", cfg.h);
        Window w = make_window(sp, Box::make2(-1.5, 1.5, -1.5, 1.5), 1.0 / 32.0);
        MetricCloud c = cloud_from_window(w);
        auto ball = std::function<bool(const Pt&)>(
            [](const Pt& p) { return p.t() * p.t() + p.x() * p.x() < 1.0; });
        auto fam = [](int n) {
            Pt xn = rational_ball_point(n);
            return std::function<bool(const Pt&)>([xn, n](const Pt& p) {
                double r2 = p.t() * p.t() + p.x() * p.x();
                double dx = p.t() - xn.t(), dy = p.x() - xn.x();
                return r2 < 1.0 && (dx * dx + dy * dy >= 1.0 / double(n) / double(n));
            });
        };
        std::ostringstream csv;
        csv << "n,dh_window\n";
        IdxSet cl = realize_pred(w, ball);
        for (int n = 4; n <= 64; n *= 2)
            csv << n << "," << hausdorff(c, realize_pred(w, fam(n)), cl) << "\n";
        IoVerdict v = io_converges(w, fam, ball, 64);
        emit(dir, "io_counterexample.csv", csv.str());
        std::cout << "windowed Hausdorff converges; io fails on the " << v.failed_side
                  << " side at n=" << v.witness_index << "\n";
        return v.converges ? 1 : 0;
    }
    if (name == "first-order") {
        Space sp = make_space("slit", cfg.h);
        Window w = make_window(sp, Box::make2(-4, 4, -4, 4), 1.0 / 8.0);
        FirstOrderReport rep = first_order_probe(w, 8, 16);
        std::cout << "L+(x)={x_inf}: " << rep.x_converges << "\nL+(y^j)={x(j)}: " << rep.y_converge
                  << "\nprobe in I^-(liminf x): " << rep.probe_in_liminf_x
                  << "\nprobe outside all diagonals: " << rep.probe_outside_diagonals << "\n";
        return (rep.x_converges && rep.y_converge && rep.probe_in_liminf_x &&
                rep.probe_outside_diagonals)
                   ? 0
                   : 1;
    }
    if (name == "cylinder-nonconvergence") {
        Space sp = make_space("cylinder", cfg.h);
        Window w = make_window(sp, Box::make2(-4.25, 0.25, 0, 2 * M_PI), 1.0 / 16.0);
        SetFamily fam = SetFamily::of_handles(
            [](int n) { return IPHandle::pip(Pt(0.0, n % 2 ? 2 * M_PI - 1.0 : 1.0)); }, "alt");
        fam.period = 2;
        std::vector<IPHandle> cands = {IPHandle::pip(Pt(0, 1.0)),
                                       IPHandle::pip(Pt(0, 2 * M_PI - 1.0)),
                                       IPHandle::pip(Pt(-1.0, 0.0)),
                                       IPHandle::pip(Pt(1.0 - M_PI, M_PI))};
        LimitVerdict v = l_plus(w, fam, cands, 64);
        TailSets ts = set_limits(w, fam, 64);
        auto dec = is_indecomposable(w, chron_past(w, ts.liminf));
        std::cout << "L+ candidates: " << v.candidates.size()
                  << "; liminf decomposable: " << (!dec.indecomposable) << "\n";
        return (v.candidates.empty() && !dec.indecomposable) ? 0 : 1;
    }
    if (name == "punctured-gap") {
        Space sp = make_space("punctured", cfg.h);
        Window w = make_window(sp, Box::make2(-2, 2, -2, 2), 1.0 / 64.0);
        Pt x(-1, -1), y(1, 1);
        bool causal = sp.causal(x, y);
        bool sub = subset_margin(w, realize(w, i_embed(sp, x)), realize(w, i_embed(sp, y)));
        std::cout << "causal((-1,-1),(1,1)) = " << causal << "; I^-(x) subset I^-(y) = " << sub
                  << "\n";
        return (!causal && sub) ? 0 : 1;
    }
    if (name == "warp-freeze") {
        WarpSpec s;
        s.a = 0;
        s.b = 1;
        s.dt = 1.0 / 32.0;
        s.factors.push_back({"K", MetricGraph::segment(33, 1.0 / 128.0), Expr::parse("(b-t)^-4")});
        StarIntegral si = star_integral(s, 0, 0.5);
        std::cout << "(*) integral = " << si.value << " (finite=" << si.finite << ")\n";
        bool early = warp_chron(s, Pt(4 * s.dt, 16), Pt(12 * s.dt, 12));
        bool late = warp_chron(s, Pt(1.0 - 12 * s.dt, 16), Pt(1.0 - 2 * s.dt, 12));
        std::cout << "early motion: " << early << ", late motion: " << late << "\n";
        return (early && !late) ? 0 : 1;
    }
    if (name == "grapefruit-lminus") {
        // deep PIP sequence along the band: two L- limits, one per side
        Space sp = make_space("grapefruit", 0.25);
        Window w = make_window(sp, Box::make3(-10, -1, -4, 0.5, -2.5, 2.5), 0.5);
        SetFamily fam = SetFamily::of_handles(
            [](int n) {
                double s = std::min(8.0, double(n));
                return IPHandle::pip(Pt(s - 8.0, s, 0.0));
            },
            "deep");
        fam.period = 1;  // saturates on this window
        fam.tail_start = 9;
        std::vector<IPHandle> cands;
        for (double tau : {-0.5, 0.0, 0.5})
            for (double y0 : {2.5, -2.5}) {
                Space smp = sp;
                IPHandle h;
                h.gen = Pt(0, 8.0, y0);
                h.analytic = [smp, y0, tau](const Pt& p) {
                    double b = -smp.dist(Pt(0, 8.0, y0), Pt(0, p.x(), p.y()));
                    return p.t() < tau + b + 8.0 - 8.0;
                };
                h.label = (y0 > 0 ? std::string("up@") : std::string("down@")) + std::to_string(tau);
                cands.push_back(h);
            }
        auto lm = l_minus(w, fam, cands, 32);
        std::cout << "L- candidates: " << lm.size() << ":";
        bool up = false, down = false;
        for (size_t i : lm) {
            std::cout << " " << cands[i].label;
            if (cands[i].label[0] == 'u') up = true;
            if (cands[i].label[0] == 'd') down = true;
        }
        std::cout << "\n";
        return (lm.size() >= 2 && up && down) ? 0 : 1;
    }
    std::cerr << "unknown demo '" << name << "'\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal-horizon: future completions of sampled chronological structures"};
    app.set_help_flag("--help", "print help");  // frees --h for the grid pitch
    app.require_subcommand(0, 1);
    Config cfg;
    bool list = false;
    app.add_flag("--list", list, "list gallery spaces and demos");

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--space", cfg.space, "gallery space name");
        sub->add_option("--h", cfg.h, "grid pitch");
        sub->add_option("--window", cfg.window, "t0 t1 x0 x1")->expected(4);
        sub->add_option("--tol", cfg.tol, "metric tolerance");
        sub->add_option("--depth", cfg.depth, "chain depth");
        sub->add_option("--horizon", cfg.horizon, "family horizon");
        sub->add_option("--seed", cfg.seed, "rng seed");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--workers", cfg.workers, "worker count");
    };

    auto* validate = app.add_subcommand("validate", "axiom scan of a window or explicit relation");
    validate->add_option("--input", cfg.input, "chron relation json");
    add_common(validate);
    auto* ladder = app.add_subcommand("ladder", "causal-ladder audit");
    add_common(ladder);
    auto* ip = app.add_subcommand("ip", "handle family with BS and subset matrices");
    add_common(ip);
    auto* boundary = app.add_subcommand("boundary", "boundary chart and compactification check");
    add_common(boundary);
    auto* converge = app.add_subcommand("converge", "convergence trace of a family spec");
    converge->add_option("--family", cfg.family_path, "family spec json")->required();
    add_common(converge);
    auto* tfae = app.add_subcommand("tfae", "equivalence battery over the builtin corpus");
    add_common(tfae);
    auto* warp = app.add_subcommand("warp", "multiply warped completion");
    warp->add_option("--spec", cfg.spec_path, "warp spec json")->required();
    add_common(warp);
    auto* poset = app.add_subcommand("poset", "derive beta/gamma from a finite order");
    poset->add_option("--input", cfg.input, "poset json")->required();
    add_common(poset);
    auto* demo = app.add_subcommand("demo", "named demonstration");
    std::string demo_name;
    demo->add_option("name", demo_name, "demo name")->required();
    add_common(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list) {
        std::cout << "spaces:";
        for (auto& n : gallery_names()) std::cout << " " << n;
        std::cout << "\ndemos: io-counterexample first-order cylinder-nonconvergence"
                     " punctured-gap warp-freeze grapefruit-lminus\n";
        return 0;
    }

    try {
        if (validate->parsed()) return cmd_validate(cfg);
        if (ladder->parsed()) return cmd_ladder(cfg);
        if (ip->parsed()) return cmd_ip(cfg);
        if (boundary->parsed()) return cmd_boundary(cfg);
        if (converge->parsed()) return cmd_converge(cfg);
        if (tfae->parsed()) return cmd_tfae(cfg);
        if (warp->parsed()) return cmd_warp(cfg);
        if (poset->parsed()) return cmd_poset(cfg);
        if (demo->parsed()) return cmd_demo(cfg, demo_name);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency: " << e.what() << "\n";
        return 1;
    }
    std::cout << app.help();
    return 2;
}
