#include <cmath>
#include <string>

#include "doctest.h"
#include "dcpsp/harness.hpp"
#include "dcpsp/solver.hpp"
#include "test_util.hpp"

using namespace dcpsp;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.axis = SweepAxis::TimeSlots;
    cfg.axis_values = {1, 2};
    cfg.seeds = {1, 2};
    cfg.solvers = {SolverKind::Exact, SolverKind::Heu1, SolverKind::Heu2};
    cfg.base.n_locations = 3;
    cfg.base.demand_cap = 5;
    cfg.time_budget_s = 30.0;
    cfg.record_timings = false;
    return cfg;
}

}  // namespace

TEST_CASE("sample statistics") {
    SUBCASE("textbook example") {
        // {1,2,3}: mean 2, sample std 1, CI half-width 1.96/sqrt(3)
        Stats st = basic_stats({1.0, 2.0, 3.0});
        CHECK(st.n == 3);
        CHECK(st.mean == doctest::Approx(2.0));
        CHECK(st.stddev == doctest::Approx(1.0));
        CHECK(st.ci_half == doctest::Approx(1.1316).epsilon(1e-3));
    }
    SUBCASE("all-equal samples have zero-width interval") {
        Stats st = basic_stats({5.0, 5.0, 5.0, 5.0});
        CHECK(st.stddev == 0.0);
        CHECK(st.ci_half == 0.0);
    }
    SUBCASE("singleton interval is undefined") {
        Stats st = basic_stats({7.0});
        CHECK(st.n == 1);
        CHECK(st.mean == 7.0);
        CHECK(std::isnan(st.ci_half));
    }
    SUBCASE("empty input") { CHECK(basic_stats({}).n == 0); }
}

TEST_CASE("experiment rows and ordering") {
    ExperimentConfig cfg = small_config();
    auto results = run_experiment(cfg);
    // |axis values| * |seeds| * |solvers|
    REQUIRE(results.size() == 2 * 2 * 3);
    std::size_t i = 0;
    for (int axis : cfg.axis_values)
        for (std::uint64_t seed : cfg.seeds)
            for (SolverKind k : cfg.solvers) {
                CHECK(results[i].axis_value == axis);
                CHECK(results[i].seed == seed);
                CHECK(results[i].solver == k);
                ++i;
            }
    for (const auto& r : results) {
        if (r.solver == SolverKind::Exact) CHECK(r.status == "optimal");
        // ratio >= 1 whenever the exact run in the same cell was optimal
        if (r.cost_ratio) CHECK(*r.cost_ratio >= 1.0);
    }
}

TEST_CASE("heuristic-only runs carry no ratio") {
    ExperimentConfig cfg = small_config();
    cfg.solvers = {SolverKind::Heu1};
    auto results = run_experiment(cfg);
    CHECK(results.size() == 2 * 2);
    for (const auto& r : results) CHECK(!r.cost_ratio.has_value());
}

TEST_CASE("csv format and determinism") {
    ExperimentConfig cfg = small_config();
    std::string a = results_csv(run_experiment(cfg));
    std::string b = results_csv(run_experiment(cfg));
    CHECK(a == b);  // record_timings=false makes the bytes stable
    CHECK(a.rfind("axis,seed,solver,status,fixed,operational,penalty,migration,"
                  "hardware,total,wall_ms,cost_ratio\n",
                  0) == 0);
    CHECK(a.find('\r') == std::string::npos);
    CHECK(a.back() == '\n');
    // summary determinism too
    CHECK(summary_csv(summarize(run_experiment(cfg))) ==
          summary_csv(summarize(run_experiment(cfg))));
}

TEST_CASE("summaries group by axis value and solver") {
    ExperimentConfig cfg = small_config();
    auto groups = summarize(run_experiment(cfg));
    REQUIRE(groups.size() == 2 * 3);
    for (const auto& g : groups) {
        CHECK(g.total.n == cfg.seeds.size());
        CHECK(g.ratio.n == cfg.seeds.size());  // every exact run was optimal
        CHECK(g.total.mean > 0.0);
    }
    // exact rows have ratio exactly 1
    for (const auto& g : groups)
        if (g.solver == SolverKind::Exact) CHECK(g.ratio.mean == doctest::Approx(1.0));
}

TEST_CASE("charts") {
    ExperimentConfig cfg = small_config();
    auto groups = summarize(run_experiment(cfg));
    std::string runtime = emit_chart(groups, ChartKind::RuntimeLog);
    std::string ratio = emit_chart(groups, ChartKind::CostRatio);
    for (const std::string* s : {&runtime, &ratio}) {
        CHECK(s->rfind("<svg", 0) == 0);
        CHECK(s->find("</svg>") != std::string::npos);
        CHECK(s->find("xmlns") != std::string::npos);
    }
    // log ordinate ticks sit at decades
    CHECK(runtime.find("wall time [ms]") != std::string::npos);
    CHECK(runtime.find(">0.001<") != std::string::npos);
    CHECK(ratio.find("cost ratio") != std::string::npos);
    // deterministic bytes for equal stats
    CHECK(emit_chart(groups, ChartKind::RuntimeLog) == runtime);
    // single group still renders a point with an error bar
    auto single = summarize({run_experiment(cfg)[0], run_experiment(cfg)[3]});
    CHECK(emit_chart(single, ChartKind::RuntimeLog).find("<circle") !=
          std::string::npos);
    CHECK_THROWS_AS(emit_chart({}, ChartKind::RuntimeLog), InvalidParamsError);
}

TEST_CASE("config parsing") {
    std::string doc = R"({
        "axis": "locations",
        "axis_values": [4, 6, 8],
        "seeds": [1, 2, 3],
        "solvers": ["heu1", "heu2"],
        "rho": 0.7,
        "record_timings": false,
        "params": {"horizon": 3, "demand_cap": 4}
    })";
    ExperimentConfig cfg = config_from_json(doc);
    CHECK(cfg.axis == SweepAxis::Locations);
    CHECK(cfg.axis_values == std::vector<int>{4, 6, 8});
    CHECK(cfg.solvers.size() == 2);
    CHECK(cfg.rho == 0.7);
    CHECK(cfg.base.horizon == 3);
    CHECK(cfg.base.demand_cap == 4);

    CHECK_THROWS_AS(config_from_json("{"), ParseError);
    CHECK_THROWS_AS(config_from_json(R"({"axis": "sideways"})"), InvalidParamsError);
    CHECK_THROWS_AS(  // non-increasing axis values
        config_from_json(R"({"axis": "locations", "axis_values": [4, 4],
                             "seeds": [1], "solvers": ["heu1"]})"),
        InvalidParamsError);
}

TEST_CASE("solution files round-trip") {
    Scenario sc = testutil::small_scenario(2);
    auto res = solve(sc);
    std::string bytes = write_solution(sc, res.solution);
    Solution back = read_solution(sc, bytes);
    CHECK(back.x == res.solution.x);
    CHECK(back.z == res.solution.z);
    CHECK(back.y == res.solution.y);
    CHECK(back.y_pen == res.solution.y_pen);
    CHECK(write_solution(sc, back) == bytes);

    CHECK_THROWS_AS(read_solution(sc, bytes.substr(0, bytes.size() / 2)), ParseError);
    Scenario other = testutil::small_scenario(3);  // wrong horizon
    CHECK_THROWS_AS(read_solution(other, bytes), InvalidReferenceError);
}
