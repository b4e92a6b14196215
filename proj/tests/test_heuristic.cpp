#include <vector>

#include "doctest.h"
#include "dcpsp/heuristic.hpp"
#include "dcpsp/solver.hpp"
#include "test_util.hpp"

using namespace dcpsp;
using namespace dcpsp::heuristic_detail;

namespace {

Strategy heu2(double rho = 0.8) {
    Strategy st;
    st.variant = HeuristicVariant::Heu2;
    st.rho = rho;
    return st;
}

}  // namespace

TEST_CASE("zero demand costs nothing") {
    Scenario sc = testutil::small_scenario(2);
    sc.demand.assign(sc.demand.size(), 0);
    for (const Strategy& st : {Strategy{}, heu2()}) {
        auto res = heuristic_solve(sc, st);
        CHECK(res.cost.total == 0);
        CHECK(validate(sc, res.solution).empty());
    }
}

TEST_CASE("demand selection order") {
    Scenario sc = testutil::small_scenario(1);
    Strategy st;
    SlotState state = make_state(sc, 0, st, 0);

    SUBCASE("strictest class wins regardless of volume") {
        // {(uc_1, svc_3): 10, (uc_2, svc_1): 1} -> (uc_2, svc_1)
        state.residual_demand.assign(state.residual_demand.size(), 0);
        state.res_demand(0, 1) = 10;
        state.res_demand(1, 0) = 1;
        auto pick = select_service_demand(state);
        CHECK(pick.first == 1);
        CHECK(pick.second == 0);
    }
    SUBCASE("single remaining pair") {
        state.residual_demand.assign(state.residual_demand.size(), 0);
        state.pending.assign(state.pending.size(), 0);
        state.res_demand(1, 1) = 2;
        state.pending[1 * sc.num_services() + 1] = 1;
        auto pick = select_service_demand(state);
        CHECK(pick.first == 1);
        CHECK(pick.second == 1);
    }
    SUBCASE("volume tie breaks to the lowest cluster") {
        auto pick = select_service_demand(state);  // all demands equal 3
        CHECK(pick.first == 0);
        CHECK(pick.second == 0);
    }
}

TEST_CASE("lot size limits") {
    Scenario sc = testutil::small_scenario(1);
    Strategy st;
    int cloudlet = sc.dc_index("dc_1");
    int remote = sc.dc_index("dc_remote");
    int s3 = sc.service_index("svc_3");

    SUBCASE("capacity caps demand") {
        // V=10, K=4 -> 4
        SlotState state = make_state(sc, 0, st, 0);
        state.res_demand(0, s3) = 10;
        state.residual_capacity[cloudlet] = 4;
        CHECK(calc_lot_size(state, cloudlet, 0, s3) == 4);
    }
    SUBCASE("local cloudlet ignores the MAN") {
        SlotState state = make_state(sc, 0, st, 0);
        state.man_down[0] = state.man_up[0] = 0;
        CHECK(calc_lot_size(state, cloudlet, 0, s3) == 3);
    }
    SUBCASE("remote supply is MAN-bound") {
        // man_down=100, l_down=40 -> at most 2 units of svc_1
        SlotState state = make_state(sc, 0, st, 0);
        state.man_down[0] = 100;
        state.res_demand(0, 0) = 10;
        CHECK(calc_lot_size(state, remote, 0, 0) == 2);
    }
    SUBCASE("slot budget caps cloudlet lots") {
        SlotState state = make_state(sc, 0, st, 0);
        state.capped = true;
        state.cap = 5;
        state.cap_used = 3;
        state.res_demand(0, s3) = 10;
        CHECK(calc_lot_size(state, cloudlet, 0, s3) == 2);
        CHECK(calc_lot_size(state, remote, 0, s3) == 10);  // remote unaffected
    }
}

TEST_CASE("slot budget values") {
    Scenario sc = testutil::small_scenario(2);
    // total demand 2*2*2*3 = 24, mean per slot 12
    CHECK(heu2_cap(sc, 0.8) == 10);  // ceil(9.6)
    CHECK(heu2_cap(sc, 1.0) == 12);
    CHECK(heu2_cap(sc, 0.5) == 6);
    sc.demand.assign(sc.demand.size(), 0);
    CHECK(heu2_cap(sc, 0.8) == 0);
}

TEST_CASE("zero budget shuts cloudlets but not remote supply") {
    Scenario sc = testutil::small_scenario(1);
    Strategy st = heu2();
    SlotState state = make_state(sc, 0, st, /*cap=*/0);
    int cloudlet = sc.dc_index("dc_1");
    int s3 = sc.service_index("svc_3");
    CHECK(calc_lot_size(state, cloudlet, 0, s3) == 0);
    // the remote cloud still absorbs svc_3 demand
    CHECK(calc_lot_size(state, sc.dc_index("dc_remote"), 0, s3) > 0);
    // rho itself must stay in (0, 1]
    CHECK_THROWS(heuristic_solve(sc, heu2(0.0)));
    CHECK_THROWS(heuristic_solve(sc, heu2(1.5)));
}

TEST_CASE("constant demand avoids migrations") {
    // strict classes transfer between slots, so a steady instance never moves
    Scenario sc = testutil::small_scenario(3);
    for (const Strategy& st : {Strategy{}, heu2()}) {
        auto res = heuristic_solve(sc, st);
        CHECK(res.cost.migration == 0);
        CHECK(validate(sc, res.solution).empty());
    }
}

TEST_CASE("feasible on generated instances") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Scenario sc = testutil::tiny_random_scenario(rng, 3);
        CAPTURE(trial);
        for (const Strategy& st : {Strategy{}, heu2()}) {
            auto res = heuristic_solve(sc, st);
            CHECK(validate(sc, res.solution).empty());
            CHECK(res.cost.total == evaluate_cost(sc, res.solution).total);
        }
    }
}

TEST_CASE("slot budget is respected end to end") {
    // HEU2: cloudlet units provided per slot never exceed the budget
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        Scenario sc = testutil::tiny_random_scenario(rng, 3);
        CAPTURE(trial);
        const Units cap = heu2_cap(sc, 0.8);
        auto res = heuristic_solve(sc, heu2());
        for (int t = 0; t < sc.horizon; ++t) {
            Units provided = 0;
            for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
                if (sc.data_centers[d].kind != DataCenterKind::Cloudlet) continue;
                for (std::size_t u = 0; u < sc.num_clusters(); ++u)
                    for (std::size_t s = 0; s < sc.num_services(); ++s)
                        provided += res.solution.y_at(sc, d, u, s, t);
            }
            CHECK(provided <= cap);
        }
    }
}

TEST_CASE("never beats the exact optimum") {
    // dominance against the exhaustive oracle
    Rng rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        Scenario sc = testutil::tiny_random_scenario(rng);
        CAPTURE(trial);
        auto exact = brute_force(sc);
        REQUIRE(exact.status == SolveStatus::Optimal);
        for (const Strategy& st : {Strategy{}, heu2()}) {
            auto res = heuristic_solve(sc, st);
            CHECK(res.cost.total >= exact.objective);
        }
    }
}

TEST_CASE("heuristic determinism") {
    Rng rng(911);
    Scenario sc = testutil::tiny_random_scenario(rng, 3);
    for (const Strategy& st : {Strategy{}, heu2()}) {
        auto a = heuristic_solve(sc, st);
        auto b = heuristic_solve(sc, st);
        CHECK(a.cost.total == b.cost.total);
        CHECK(a.solution.y == b.solution.y);
    }
}
