#include <catch2/catch_amalgamated.hpp>

#include "horizon/warp.hpp"

using namespace horizon;

namespace {

WarpSpec flat_segment_spec(size_t n = 33, double edge = 0.1) {
    WarpSpec s;
    s.a = 0;
    s.b = 4;
    s.dt = 0.125;  // one edge per step fits the budget, two do not
    s.factors.push_back({"K1", MetricGraph::segment(n, edge), Expr::parse("1")});
    return s;
}

}  // namespace

TEST_CASE("flat warp chronology is the discrete cell cone, one cell per step") {
    WarpSpec s = flat_segment_spec();
    int agree = 0, total = 0;
    for (int i = 0; i <= 32; i += 2)
        for (int j = 0; j <= 32; j += 2)
            for (int k = 2; k <= 16; k += 2) {
                Pt p(0.5, double(i)), q(0.5 + k * s.dt, double(j));
                bool dp = warp_chron(s, p, q);
                bool cell_cone = std::abs(i - j) <= k;
                ++total;
                if (dp == cell_cone) ++agree;
            }
    CHECK(agree == total);
}

TEST_CASE("zero factors: chronology is the time order") {
    WarpSpec s;
    s.a = 0;
    s.b = 1;
    s.dt = 1.0 / 16.0;
    CHECK(warp_chron(s, Pt(0.25, 0), Pt(0.5, 0)));
    CHECK_FALSE(warp_chron(s, Pt(0.5, 0), Pt(0.25, 0)));
    auto comp = warp_completion(s, 4);
    CHECK(comp.boundary.size() == 1);
    CHECK(comp.chart_mismatches == 0);
}

TEST_CASE("stepping error when dt does not divide the separation") {
    WarpSpec s = flat_segment_spec();
    CHECK_THROWS_AS(warp_chron(s, Pt(0.25, 0), Pt(0.25 + 1.4999 * s.dt, 0)), DomainError);
}

TEST_CASE("freezing factor: late-time steps allow no spatial motion") {
    WarpSpec s;
    s.a = 0;
    s.b = 1;
    s.dt = 1.0 / 32.0;
    s.factors.push_back({"K1", MetricGraph::segment(33, 1.0 / 128.0), Expr::parse("(b-t)^-4")});
    // early: f ~ 1 and several edges fit in one step
    CHECK(warp_chron(s, Pt(4 * s.dt, 16), Pt(12 * s.dt, 12)));
    // near b the budget admits no edge at all: fibers freeze
    CHECK_FALSE(warp_chron(s, Pt(1.0 - 12 * s.dt, 16), Pt(1.0 - 2 * s.dt, 12)));
    CHECK(warp_chron(s, Pt(1.0 - 12 * s.dt, 16), Pt(1.0 - 2 * s.dt, 16)));  // pure time ok
}

TEST_CASE("condition (*) integrals: finite cases match closed forms") {
    WarpSpec s;
    s.a = 0;
    s.b = 1;
    s.dt = 1.0 / 32.0;
    s.factors.push_back({"flat", MetricGraph::segment(9, 0.125), Expr::parse("1")});
    s.factors.push_back({"freeze", MetricGraph::segment(9, 0.125), Expr::parse("(b-t)^-4")});
    StarIntegral i0 = star_integral(s, 0, 0.5);
    CHECK(i0.finite);
    CHECK(i0.value == Catch::Approx(0.5).margin(1e-6));  // int_c^b 1 dt
    StarIntegral i1 = star_integral(s, 1, 0.5);
    CHECK(i1.finite);
    // int_c^b (b-t)^2 dt = (b-c)^3/3
    CHECK(i1.value == Catch::Approx(std::pow(0.5, 3) / 3.0).margin(1e-6));
}

TEST_CASE("condition (*) divergence is detected and the factor named") {
    WarpSpec s;
    s.a = 0;
    s.b = 1;
    s.dt = 1.0 / 32.0;
    s.factors.push_back({"bad", MetricGraph::segment(9, 0.125), Expr::parse("(b-t)^2")});
    StarIntegral si = star_integral(s, 0, 0.5);
    CHECK_FALSE(si.finite);
    try {
        warp_completion(s, 4);
        FAIL("expected refusal");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
}

TEST_CASE("warp completion: cycle boundary chart agrees with computed relations") {
    WarpSpec s;
    s.a = 0;
    s.b = 8;
    s.dt = 0.25;
    s.factors.push_back({"K", MetricGraph::cycle(16, 0.2), Expr::parse("1")});
    WarpCompletion comp = warp_completion(s, 5, 24);
    CHECK(comp.integrals[0].finite);
    CHECK(comp.boundary.size() >= 4);
    CHECK(comp.chart_pairs_checked > 0);
    CHECK(comp.chart_mismatches == 0);
}
