#include <algorithm>
#include <string>

#include "doctest.h"
#include "dcpsp/milp.hpp"
#include "dcpsp/solver.hpp"
#include "test_util.hpp"

using namespace dcpsp;

namespace {

// D=2, U=1, S=1 with adjustable horizon: strips small_scenario down to the
// dimensions of the variable-count example.
Scenario two_dc_one_cluster(int horizon) {
    Scenario sc = testutil::small_scenario(horizon);
    sc.user_clusters.pop_back();
    sc.services.pop_back();
    sc.demand.assign(1 * 1 * horizon, 2);
    sc.qos_gua = {10.0, 150.0};  // [d][u][latency]
    sc.c_pen.assign(1, 150'000);
    sc.check();
    return sc;
}

int count_role(const MilpModel& m, VarRole r) {
    return static_cast<int>(std::count_if(
        m.variables.begin(), m.variables.end(),
        [&](const MilpVariable& v) { return v.role == r; }));
}

}  // namespace

TEST_CASE("variable families and counts") {
    // D=2, U=1, S=1, T=2 -> 2 x, 2 z, 4 y, 2 y_pen, 2 y_mig, 1 delta
    MilpModel m = build_milp(two_dc_one_cluster(2));
    CHECK(count_role(m, VarRole::X) == 2);
    CHECK(count_role(m, VarRole::Z) == 2);
    CHECK(count_role(m, VarRole::Y) == 4);
    CHECK(count_role(m, VarRole::YPen) == 2);
    CHECK(count_role(m, VarRole::YMig) == 2);
    CHECK(count_role(m, VarRole::Delta) == 1);

    // one slot -> no migration machinery
    MilpModel m1 = build_milp(two_dc_one_cluster(1));
    CHECK(count_role(m1, VarRole::YMig) == 0);
    CHECK(count_role(m1, VarRole::Delta) == 0);

    SUBCASE("bounds and kinds") {
        for (const auto& v : m.variables) {
            CHECK(v.lb == 0.0);
            if (v.role == VarRole::X || v.role == VarRole::Delta) {
                CHECK(v.kind == VarKind::Binary);
                CHECK(v.ub == 1.0);
            }
        }
    }
}

TEST_CASE("ineligible pair forces y to zero") {
    // svc_1 (latency 50) cannot run on the remote cloud (150) or
    // on the cloudlet across the MAN (60)
    Scenario sc = testutil::small_scenario(2);
    MilpModel m = build_milp(sc);
    int s1 = sc.service_index("svc_1");
    int remote = sc.dc_index("dc_remote");
    bool found = false;
    for (const auto& c : m.constraints) {
        if (c.tag != "qos-eligibility" || c.terms.size() != 1) continue;
        const auto& v = m.variables[c.terms[0].first];
        if (v.d == remote && v.s == s1) {
            CHECK(c.rel == Relation::Le);
            CHECK(c.rhs == 0.0);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("mps export format") {
    MilpModel m = build_milp(two_dc_one_cluster(2));
    std::string mps = export_mps(m);
    for (const char* section :
         {"NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"})
        CHECK(mps.find(section) != std::string::npos);
    CHECK(mps.find("'MARKER'") != std::string::npos);
    CHECK(mps.find("'INTORG'") != std::string::npos);
    CHECK(mps.find("'INTEND'") != std::string::npos);
    // every variable name appears
    for (const auto& v : m.variables) CHECK(mps.find(v.name) != std::string::npos);
}

TEST_CASE("zero demand solves to zero") {
    // empty problem
    Scenario sc = testutil::small_scenario(2);
    sc.demand.assign(sc.demand.size(), 0);
    auto rep = solve(sc);
    CHECK(rep.status == SolveStatus::Optimal);
    CHECK(rep.objective == 0);
    CHECK(rep.best_bound == 0);
    for (auto x : rep.solution.x) CHECK(x == 0);
}

TEST_CASE("all-penalty-optimal instance") {
    // activation dwarfs the total penalty of the only eligible
    // demand, so the cloudlet stays closed: hand comparison of the two
    // candidates via evaluate_cost
    Scenario sc = testutil::small_scenario(1);
    sc.data_centers.pop_back();  // cloudlet only
    sc.qos_gua = {10.0, 60.0};
    sc.data_centers[0].c_fix = 10'000'000;
    sc.demand.assign(sc.demand.size(), 0);
    sc.demand_at(0, 0, 0) = 2;
    sc.c_pen.assign(sc.c_pen.size(), 1'000);
    sc.check();

    const Money all_pen = 2 * 1'000;
    auto rep = solve(sc);
    CHECK(rep.status == SolveStatus::Optimal);
    CHECK(rep.objective == all_pen);
    CHECK(rep.solution.x[0] == 0);

    auto bf = brute_force(sc);
    CHECK(bf.status == SolveStatus::Optimal);
    CHECK(bf.objective == all_pen);
}

TEST_CASE("remote-only instance serves iff serving is cheaper") {
    // per-unit dominance
    Scenario sc = testutil::small_scenario(1);
    sc.data_centers.erase(sc.data_centers.begin());  // remote cloud only
    sc.data_centers[0].k_max = 10;
    sc.user_clusters[0].local_cloudlet.reset();
    sc.qos_gua = {150.0, 150.0};
    sc.services.erase(sc.services.begin());  // svc_3: eligible everywhere
    sc.demand.assign(sc.num_clusters() * 1 * 1, 2);
    sc.c_pen.assign(sc.num_clusters() * 1, 0);
    sc.check();

    sc.data_centers[0].c_op[0] = 30'000;
    sc.c_pen.assign(sc.c_pen.size(), 50'000);
    auto serve = brute_force(sc);
    CHECK(serve.objective == 4 * 30'000);
    CHECK(serve.solution.z[0] == 4);

    sc.c_pen.assign(sc.c_pen.size(), 20'000);
    auto pen = brute_force(sc);
    CHECK(pen.objective == 4 * 20'000);
    CHECK(pen.solution.x[0] == 0);
}

TEST_CASE("oracle equivalence on tiny instances") {
    // branch and bound against the exhaustive oracle
    Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        Scenario sc = testutil::tiny_random_scenario(rng);
        CAPTURE(trial);
        auto bf = brute_force(sc);
        auto bb = solve(sc);
        REQUIRE(bf.status == SolveStatus::Optimal);
        REQUIRE(bb.status == SolveStatus::Optimal);
        CHECK(bb.objective == bf.objective);
        CHECK(bb.best_bound == bb.objective);
        CHECK(validate(sc, bb.solution).empty());
        CHECK(validate(sc, bf.solution).empty());
    }
}

TEST_CASE("reported migrations match the recount") {
    // the linearization's lower bounds are tight at an optimum, so the
    // returned y_mig values equal compute_migrations on the y tensor
    Rng rng(7);
    Scenario sc = testutil::tiny_random_scenario(rng);
    MilpModel m = build_milp(sc);
    auto rep = solve(sc, m);
    REQUIRE(rep.status == SolveStatus::Optimal);
    const int base = m.mig_var(0, 0, 0, 1);
    for (std::size_t u = 0; u < sc.num_clusters(); ++u)
        for (std::size_t s = 0; s < sc.num_services(); ++s)
            for (int t = 1; t < sc.horizon; ++t) {
                std::vector<Units> prev, cur;
                for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
                    prev.push_back(rep.solution.y_at(sc, d, u, s, t - 1));
                    cur.push_back(rep.solution.y_at(sc, d, u, s, t));
                }
                auto mig = compute_migrations(prev, cur);
                for (std::size_t d = 0; d < sc.num_dcs(); ++d)
                    CHECK(rep.y_mig[m.mig_var(static_cast<int>(d),
                                              static_cast<int>(u),
                                              static_cast<int>(s), t) -
                                    base] == mig[d]);
            }
}

TEST_CASE("penalty monotonicity") {
    // increasing every c_pen never decreases the optimum
    Rng rng(55);
    for (int trial = 0; trial < 4; ++trial) {
        Scenario sc = testutil::tiny_random_scenario(rng);
        auto base = solve(sc);
        for (auto& p : sc.c_pen) p *= 2;
        auto doubled = solve(sc);
        CHECK(doubled.objective >= base.objective);
    }
}

TEST_CASE("bound soundness under a node budget") {
    Rng rng(99);
    Scenario sc = testutil::tiny_random_scenario(rng);
    SolveLimits lim;
    lim.node_budget = 1;
    auto rep = solve(sc, lim);
    CHECK(rep.best_bound <= rep.objective);
    CHECK(validate(sc, rep.solution).empty());
    if (rep.status == SolveStatus::FeasibleBoundGap) CHECK(rep.nodes <= 1);
}

TEST_CASE("solver determinism") {
    Rng rng(4242);
    Scenario sc = testutil::tiny_random_scenario(rng);
    auto a = solve(sc);
    auto b = solve(sc);
    CHECK(a.objective == b.objective);
    CHECK(a.solution.y == b.solution.y);
}

TEST_CASE("brute force refuses oversized instances") {
    Scenario sc = testutil::small_scenario(2);  // k_max 10 and 100
    CHECK_THROWS_AS(brute_force(sc), SizeGuardError);
}
