#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "horizon/ip.hpp"
#include "horizon/ladder.hpp"
#include "horizon/poset.hpp"
#include "horizon/relation.hpp"
#include "horizon/warp.hpp"

namespace horizon {

using nlohmann::json;

// {"points":[id...], "chron":[[i,j],...]} -> explicit finite oracle.
// Point ids become labels; the carrier is indexed.
inline std::pair<Space, std::vector<std::string>> load_chron_json(const json& doc) {
    std::vector<std::string> labels;
    for (const auto& p : doc.at("points")) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    const int n = int(labels.size());
    auto rel = std::make_shared<std::vector<std::pair<int, int>>>();
    for (const auto& pr : doc.at("chron")) {
        int i = pr.at(0).get<int>(), j = pr.at(1).get<int>();
        if (i < 0 || j < 0 || i >= n || j >= n) throw DomainError("chron json: index out of range");
        rel->push_back({i, j});
    }
    Space sp;
    sp.name = "explicit";
    sp.dim = 1;
    sp.chron = [rel](const Pt& a, const Pt& b) {
        int i = int(std::lround(a.t())), j = int(std::lround(b.t()));
        for (auto& [u, v] : *rel)
            if (u == i && v == j) return true;
        return false;
    };
    sp.dist = [](const Pt& a, const Pt& b) { return a.t() == b.t() ? 0.0 : 1.0; };
    sp.admissible = [n](const Pt& p) { return p.t() >= 0 && p.t() <= n - 1; };
    sp.default_box = Box::make2(0, double(n - 1), 0, 0);
    sp.default_box.dim = 1;
    return {sp, labels};
}

inline Window explicit_window(const Space& sp) {
    Box b = sp.default_box;
    b.dim = 1;
    return make_window(sp, b, 1.0);
}

// {"points":[...], "leq":[[i,j],...]}; the diagonal is implied.
inline FinitePoset load_poset_json(const json& doc) {
    FinitePoset p;
    for (const auto& x : doc.at("points"))
        p.labels.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    const size_t n = p.labels.size();
    p.leq = RelMatrix(n);
    for (size_t i = 0; i < n; ++i) p.leq.set(i, i);
    for (const auto& pr : doc.at("leq")) {
        size_t i = pr.at(0).get<size_t>(), j = pr.at(1).get<size_t>();
        if (i >= n || j >= n) throw DomainError("poset json: index out of range");
        p.leq.set(i, j);
    }
    p.validate();
    return p;
}

inline json poset_to_json(const FinitePoset& p, const RelMatrix& rel, const std::string& key) {
    json doc;
    doc["points"] = p.labels.empty() ? json::array() : json(p.labels);
    if (p.labels.empty()) {
        for (size_t i = 0; i < p.size(); ++i) doc["points"].push_back(std::to_string(i));
    }
    json pairs = json::array();
    for (size_t i = 0; i < rel.size(); ++i)
        rel.row(i).for_each([&](size_t j) { pairs.push_back({i, j}); });
    doc[key] = pairs;
    return doc;
}

// {"interval":[a,b], "dt":..., "factors":[{"name":..,"graph":{..},"f":".."}]}
inline WarpSpec load_warp_json(const json& doc) {
    WarpSpec s;
    s.a = doc.at("interval").at(0).get<double>();
    s.b = doc.at("interval").at(1).get<double>();
    s.dt = doc.at("dt").get<double>();
    for (const auto& f : doc.value("factors", json::array())) {
        const auto& g = f.at("graph");
        std::string kind = g.at("kind").get<std::string>();
        size_t n = g.at("n").get<size_t>();
        double edge = g.at("edge_len").get<double>();
        MetricGraph mg;
        if (kind == "cycle")
            mg = MetricGraph::cycle(n, edge);
        else if (kind == "segment")
            mg = MetricGraph::segment(n, edge);
        else
            throw DomainError("warp json: unknown graph kind " + kind);
        s.factors.push_back(
            {f.value("name", std::string("K") + std::to_string(s.factors.size() + 1)), mg,
             Expr::parse(f.at("f").get<std::string>())});
    }
    s.validate();
    return s;
}

inline json relation_report_json(const RelationReport& r) {
    json j;
    j["irreflexive"] = r.irreflexive;
    j["transitive"] = r.transitive;
    j["connex"] = r.connex;
    j["separable"] = r.separable;
    json w;
    w["irreflexive"] = r.irreflexive_witness;
    json tt = json::array();
    for (auto& t : r.transitive_triples) tt.push_back({t.i, t.j, t.k});
    w["transitive"] = tt;
    w["connex"] = r.connex_witness;
    json sw = json::array();
    for (auto& p : r.separable_witness) sw.push_back({p.i, p.j});
    w["separable"] = sw;
    j["witnesses"] = w;
    return j;
}

inline json audit_json(const LadderAudit& a) {
    json j;
    json rungs = json::array();
    for (auto& [name, r] : a.rungs) {
        json e;
        e["rung"] = name;
        e["verdict"] = r.value;
        e["mode"] = r.mode;
        if (!r.witness.empty()) e["witness"] = r.witness;
        if (r.indeterminate) e["indeterminate"] = true;
        rungs.push_back(e);
    }
    j["rungs"] = rungs;
    j["consistency_ok"] = a.consistency_ok;
    j["consistency_notes"] = a.consistency_notes;
    return j;
}

inline json family_json(const IPFamilyWindow& fam) {
    json j;
    json handles = json::array();
    for (size_t i = 0; i < fam.handles.size(); ++i) {
        const IPHandle& h = fam.handles[i];
        json e;
        e["label"] = h.label.empty() ? std::to_string(i) : h.label;
        e["kind"] = h.is_pip() ? "pip" : "tip";
        if (h.is_pip()) e["vertex"] = {h.vertex().t(), h.vertex().x(), h.vertex().y()};
        e["cells"] = fam.realized[i].count();
        handles.push_back(e);
    }
    j["handles"] = handles;
    auto mat = [&](const RelMatrix& m) {
        json rows = json::array();
        for (size_t i = 0; i < m.size(); ++i) {
            std::string row;
            for (size_t k = 0; k < m.size(); ++k) row += m.at(i, k) ? '1' : '0';
            rows.push_back(row);
        }
        return rows;
    };
    j["bs"] = mat(fam.bs);
    j["subset"] = mat(fam.subset);
    j["window"] = {{"h", fam.window.h},
                   {"box",
                    {fam.window.box.lo[0], fam.window.box.hi[0], fam.window.box.lo[1],
                     fam.window.box.hi[1]}},
                   {"cells", fam.window.size()}};
    return j;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

inline std::string window_csv(const Window& w) {
    std::ostringstream os;
    os << "id";
    for (int a = 0; a < w.space.dim; ++a) os << ",c" << a;
    os << "\n";
    for (size_t i = 0; i < w.size(); ++i) {
        if (!w.ok[i]) continue;
        os << i;
        for (int a = 0; a < w.space.dim; ++a) os << "," << w.pts[i][a];
        os << "\n";
    }
    return os.str();
}

inline json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read " + path);
    json doc;
    f >> doc;
    return doc;
}

}  // namespace horizon
