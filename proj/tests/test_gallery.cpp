#include <catch2/catch_amalgamated.hpp>

#include "horizon/gallery.hpp"
#include "horizon/relation.hpp"

using namespace horizon;

TEST_CASE("make_space rejects unknown names") {
    CHECK_THROWS_AS(make_space("klein-bottle", 0.1), DomainError);
}

TEST_CASE("strip chronology is the open cone") {
    Space sp = make_space("strip", 0.0);
    CHECK(sp.chron(Pt(0.2, 0.5), Pt(0.6, 0.6)));
    CHECK_FALSE(sp.chron(Pt(0.2, 0.5), Pt(0.4, 0.8)));
    CHECK_FALSE(sp.chron(Pt(0.5, 0.5), Pt(0.5, 0.5)));
}

TEST_CASE("slit: causal through the origin pivot, chronology blocked") {
    Space sp = make_space("slit", 0.0);
    // null kink through (0,0): causally related, not chronologically
    CHECK(sp.causal(Pt(-1, -1), Pt(1, 1)));
    CHECK_FALSE(sp.chron(Pt(-1, -1), Pt(1, 1)));
    // strictly timelike dodge through x <= 0
    CHECK(sp.chron(Pt(-1, -0.5), Pt(1, 0.5)));
    // blocked: crossing would need x0 > 0
    CHECK_FALSE(sp.chron(Pt(-1, 1.5), Pt(0.5, 1.5)));
    CHECK_FALSE(sp.causal(Pt(-0.5, 2), Pt(0.5, 2)));
    // same side of the slit line: plain Minkowski
    CHECK(sp.chron(Pt(0.5, 2), Pt(1.5, 2.2)));
    CHECK(sp.chron(Pt(-2, 1), Pt(-1, 1.2)));
    CHECK_FALSE(sp.admissible(Pt(0.0, 1.0)));
    CHECK(sp.admissible(Pt(0.0, 0.0)));
    CHECK(sp.admissible(Pt(0.0, -1.0)));
}

TEST_CASE("punctured plane: chronology unobstructed, null line through 0 cut") {
    Space sp = make_space("punctured", 0.0);
    CHECK_FALSE(sp.causal(Pt(-1, -1), Pt(1, 1)));
    CHECK(sp.causal(Pt(-1, -1), Pt(0.5, 0.5 - 1e-3)));  // timelike-ish detour exists
    CHECK(sp.chron(Pt(-1, 0), Pt(1, 0)));
    CHECK(sp.causal(Pt(-1, 0), Pt(1, 0)));
    // null pairs away from the origin keep their segment
    CHECK(sp.causal(Pt(0, 1), Pt(1, 2)));
    CHECK_FALSE(sp.admissible(Pt(0, 0)));
}

TEST_CASE("cylinder chronology wraps") {
    Space sp = make_space("cylinder", 0.0);
    double C = sp.circumference;
    CHECK(sp.chron(Pt(0, 0.1), Pt(1, C - 0.1)));  // short way around
    CHECK_FALSE(sp.chron(Pt(0, 0.1), Pt(1, 0.1 + 2.0)));
    CHECK(sp.chron(Pt(0, 0), Pt(4, M_PI)));  // covers the whole circle
}

TEST_CASE("gallery chronologies validate on sampled windows") {
    struct Case {
        const char* name;
        Box box;
        double h;
    };
    std::vector<Case> cases = {
        {"strip", Box::make2(0, 1, 0, 1), 1.0 / 8.0},
        {"slit", Box::make2(-1.5, 1.5, -1.5, 1.5), 0.25},
        {"punctured", Box::make2(-1, 1, -1, 1), 0.25},
        {"cylinder", Box::make2(-1, 1, 0, 2 * M_PI), 0.25},
    };
    for (const auto& c : cases) {
        Space sp = make_space(c.name, c.h);
        Window w = make_window(sp, c.box, c.h);
        RelationReport r = validate_chron(w);
        INFO(c.name);
        CHECK(r.irreflexive);
        CHECK(r.transitive);
        CHECK(r.connex);
    }
}

TEST_CASE("analytic chronologies agree with discrete path reachability") {
    struct Case {
        const char* name;
        Box box;
        double h;
    };
    std::vector<Case> cases = {
        {"strip", Box::make2(0, 1, 0, 1), 1.0 / 16.0},
        {"slit", Box::make2(-2, 2, -2, 2), 1.0 / 8.0},
        {"punctured", Box::make2(-2, 2, -2, 2), 1.0 / 8.0},
        {"minkowski2", Box::make2(-2, 2, -2, 2), 1.0 / 8.0},
        {"cylinder", Box::make2(-2, 2, 0, 2 * M_PI), 1.0 / 8.0},
    };
    for (const auto& c : cases) {
        Space sp = make_space(c.name, c.h);
        ChronValidation v = cross_validate_chron(sp, c.box, c.h, 100, 20260810);
        INFO(c.name << " checked=" << v.checked << " skipped=" << v.skipped);
        CHECK(v.checked > 20);
        CHECK(v.disagreements == 0);
    }
}

TEST_CASE("grapefruit profile and slice distances") {
    CHECK(grapefruit_profile(0.0) == 2.0);
    CHECK(grapefruit_profile(0.99) == 2.0);
    CHECK(grapefruit_profile(2.5) == 1.0);
    CHECK(grapefruit_profile(-1.5) == grapefruit_profile(1.5));
    double mid = grapefruit_profile(1.5);
    CHECK(mid > 1.0);
    CHECK(mid < 2.0);

    Space sp = make_space("grapefruit", 1.0 / 16.0);
    // flat region: distances are Euclidean within chamfer error
    double d_flat = sp.dist(Pt(0, 3, 3), Pt(0, 5, 3));
    CHECK(std::abs(d_flat - 2.0) < 0.05);
    // crossing the band is strictly longer than Euclid, shorter than sqrt(2)x
    double d_cross = sp.dist(Pt(0, 0, -3), Pt(0, 0, 3));
    CHECK(d_cross > 6.0 + 1.0);
    CHECK(d_cross < 6.0 * std::sqrt(2.0) + 0.3);
    // chronology uses the slice metric
    CHECK(sp.chron(Pt(0, 0, -3), Pt(d_cross + 0.1, 0, 3)));
    CHECK_FALSE(sp.chron(Pt(0, 0, -3), Pt(d_cross - 0.1, 0, 3)));
}

TEST_CASE("grapefruit slice distances are stable under refinement") {
    auto coarse = make_grapefruit_slice(-4, 4, -4, 4, 1.0 / 8.0);
    auto fine = make_grapefruit_slice(-4, 4, -4, 4, 1.0 / 16.0);
    std::vector<std::pair<Pt, Pt>> pairs = {
        {Pt(0, -3, -3), Pt(0, 3, 3)}, {Pt(0, -2, 0), Pt(0, 2, 0)}, {Pt(0, 0, -2), Pt(0, 0, 2)}};
    for (auto& [a, b] : pairs) {
        double dc = coarse->d(a.x(), a.y(), b.x(), b.y());
        double df = fine->d(a.x(), a.y(), b.x(), b.y());
        CHECK(std::abs(dc - df) < 0.08 * std::max(1.0, dc));
    }
}
