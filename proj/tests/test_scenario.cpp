#include <doctest.h>

#include "dcpsp/model.hpp"
#include "dcpsp/scenario.hpp"

using namespace dcpsp;

namespace {

GeneratorParams default_scale(std::uint64_t seed) {
    GeneratorParams p;
    p.n_locations = 5;
    p.horizon = 3;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("generation is deterministic per seed") {
    Scenario a = generate(default_scale(42));
    Scenario b = generate(default_scale(42));
    CHECK(write_scenario(a) == write_scenario(b));
    Scenario c = generate(default_scale(43));
    CHECK(write_scenario(a) != write_scenario(c));
}

TEST_CASE("generated remote cloud follows the pay-as-you-go setup") {
    Scenario sc = generate(default_scale(1));
    int remote = sc.dc_index("dc_remote");
    REQUIRE(remote >= 0);
    const DataCenter& dc = sc.data_centers[remote];
    CHECK(dc.kind == DataCenterKind::RemoteCloud);
    CHECK(dc.k_min == 0);
    CHECK(dc.c_fix == 0);
    CHECK(dc.c_hw == 0);
    // covers the aggregate peak on its own
    Units peak = 0;
    for (int t = 0; t < sc.horizon; ++t) {
        Units agg = 0;
        for (std::size_t u = 0; u < sc.num_clusters(); ++u)
            for (std::size_t s = 0; s < sc.num_services(); ++s)
                agg += sc.demand_at(u, s, t);
        peak = std::max(peak, agg);
    }
    CHECK(dc.k_max >= peak);

    // the premium knob scales the remote operating cost proportionally
    GeneratorParams pricey = default_scale(1);
    pricey.remote_premium = 4.0;
    Scenario sc4 = generate(pricey);
    const DataCenter& dc4 = sc4.data_centers[sc4.dc_index("dc_remote")];
    for (int t = 0; t < sc.horizon; ++t)
        CHECK(dc4.c_op[t] == doctest::Approx(2.0 * dc.c_op[t]).epsilon(1e-3));

    pricey.remote_premium = 0.0;
    CHECK_THROWS_AS(generate(pricey), InvalidParamsError);
}

TEST_CASE("location counts: plain and remote-replaces modes") {
    GeneratorParams p = default_scale(5);
    p.n_locations = 19;
    Scenario sc = generate(p);
    CHECK(sc.num_dcs() == 20);  // 19 cloudlets + remote
    CHECK(sc.num_clusters() == 19);

    p.n_locations = 20;
    p.remote_replaces_cloudlet = true;
    Scenario sc2 = generate(p);
    CHECK(sc2.num_dcs() == 20);  // remote takes one cloudlet slot
    CHECK(sc2.num_clusters() == 20);
    CHECK_FALSE(sc2.user_clusters[0].local_cloudlet.has_value());
}

TEST_CASE("eligibility tiers induced by the latency model") {
    Scenario sc = generate(default_scale(9));
    int remote = sc.dc_index("dc_remote");
    for (std::size_t u = 0; u < sc.num_clusters(); ++u) {
        int local = sc.local_cloudlet_of(u);
        for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
            // service 1 (50 ms): local cloudlet only
            CHECK(eligibility(sc, d, u, 0) == (static_cast<int>(d) == local));
            // service 2 (100 ms): every cloudlet, not the remote cloud
            CHECK(eligibility(sc, d, u, 1) == (static_cast<int>(d) != remote));
            // service 3 (250 ms): everyone
            CHECK(eligibility(sc, d, u, 2));
        }
    }
}

TEST_CASE("generated scenarios admit the all-penalty solution") {
    for (std::uint64_t seed : {2u, 3u, 4u}) {
        Scenario sc = generate(default_scale(seed));
        CHECK(validate(sc, Solution::all_penalty(sc)).empty());
    }
}

TEST_CASE("demand_profile evaluates the stated curve") {
    CHECK(demand_profile(0, 0, 4, 0.5, 0.0, 0.0) == 0);
    CHECK(demand_profile(10, 2, 4, 0.0, 0.0, 0.0) == 10);
    // base 10, a=0.5, phi=0, |T|=4, noise off
    CHECK(demand_profile(10, 0, 4, 0.5, 0.0, 0.0) == 10);
    CHECK(demand_profile(10, 1, 4, 0.5, 0.0, 0.0) == 15);
    CHECK(demand_profile(10, 2, 4, 0.5, 0.0, 0.0) == 10);
    CHECK(demand_profile(10, 3, 4, 0.5, 0.0, 0.0) == 5);
}

TEST_CASE("scenario files round-trip") {
    Scenario sc = generate(default_scale(77));
    std::string bytes = write_scenario(sc);
    Scenario back = read_scenario(bytes);
    CHECK(write_scenario(back) == bytes);
}

TEST_CASE("malformed scenario documents are rejected") {
    Scenario sc = generate(default_scale(8));
    std::string bytes = write_scenario(sc);

    CHECK_THROWS_AS(read_scenario(bytes.substr(0, bytes.size() / 2)), ParseError);
    CHECK_THROWS_AS(read_scenario("{}"), InvalidReferenceError);

    // c_op length disagreeing with the horizon names the field
    std::string bad = bytes;
    auto pos = bad.find("\"c_op\"");
    REQUIRE(pos != std::string::npos);
    auto open = bad.find('[', pos);
    auto comma = bad.find(',', open);
    bad.erase(open + 1, comma - open);  // drop the first slot entry
    CHECK_THROWS_WITH_AS(read_scenario(bad),
                         doctest::Contains("c_op"), InvalidReferenceError);
}

TEST_CASE("invalid parameters are rejected") {
    GeneratorParams p = default_scale(1);
    p.n_locations = 0;
    CHECK_THROWS_AS(generate(p), InvalidParamsError);
    p = default_scale(1);
    p.horizon = 0;
    CHECK_THROWS_AS(generate(p), InvalidParamsError);
    p = default_scale(1);
    p.kmax_high = 0;
    CHECK_THROWS_AS(generate(p), InvalidParamsError);
}
