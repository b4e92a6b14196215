#ifndef DCPSP_TEST_UTIL_HPP
#define DCPSP_TEST_UTIL_HPP

#include <vector>

#include "dcpsp/model.hpp"
#include "dcpsp/rng.hpp"

namespace dcpsp::testutil {

// Two clusters, one cloudlet homed at uc_1, one remote cloud, two services
// (latency 50 and latency 250), two slots, ample bandwidth.
inline Scenario small_scenario(int horizon = 2) {
    Scenario sc;
    sc.horizon = horizon;
    sc.qos_attributes = {{"latency", QosDirection::LowerIsBetter}};

    DataCenter a;
    a.id = "dc_1";
    a.kind = DataCenterKind::Cloudlet;
    a.k_min = 0;
    a.k_max = 10;
    a.c_fix = 500'000;
    a.c_hw = 100'000;
    a.c_op.assign(horizon, 20'000);
    a.home_cluster = "uc_1";

    DataCenter r;
    r.id = "dc_remote";
    r.kind = DataCenterKind::RemoteCloud;
    r.k_min = 0;
    r.k_max = 100;
    r.c_fix = 0;
    r.c_hw = 0;
    r.c_op.assign(horizon, 40'000);

    sc.data_centers = {a, r};

    UserCluster u1;
    u1.id = "uc_1";
    u1.lan_down = u1.lan_up = 2000;
    u1.man_down = u1.man_up = 1000;
    u1.local_cloudlet = "dc_1";
    UserCluster u2;
    u2.id = "uc_2";
    u2.lan_down = u2.lan_up = 2000;
    u2.man_down = u2.man_up = 1000;
    sc.user_clusters = {u1, u2};

    Service s1;
    s1.id = "svc_1";
    s1.l_down = 40;
    s1.l_up = 10;
    s1.c_mig = 20'000;
    s1.qos_req = {{"latency", 50.0}};
    Service s3;
    s3.id = "svc_3";
    s3.l_down = 20;
    s3.l_up = 20;
    s3.c_mig = 10'000;
    s3.qos_req = {{"latency", 250.0}};
    sc.services = {s1, s3};

    sc.demand.assign(sc.num_clusters() * sc.num_services() * horizon, 0);
    for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t s = 0; s < 2; ++s)
            for (int t = 0; t < horizon; ++t) sc.demand_at(u, s, t) = 3;

    // latency: local cloudlet 10, cloudlet via MAN 60, remote 150
    sc.qos_gua.assign(sc.num_dcs() * sc.num_clusters() * 1, 0.0);
    sc.guarantee(0, 0, 0) = 10.0;
    sc.guarantee(0, 1, 0) = 60.0;
    sc.guarantee(1, 0, 0) = 150.0;
    sc.guarantee(1, 1, 0) = 150.0;

    sc.c_pen.assign(sc.num_clusters() * sc.num_services(), 150'000);
    sc.check();
    return sc;
}

// Randomized variant of small_scenario kept inside the brute-force guard
// (capacities <= 3, demand <= 3).
inline Scenario tiny_random_scenario(Rng& rng, int horizon = 2) {
    Scenario sc = small_scenario(horizon);
    sc.data_centers[0].k_max = rng.uniform_int(1, 3);
    sc.data_centers[1].k_max = rng.uniform_int(1, 3);
    sc.data_centers[0].c_fix = rng.uniform_int(0, 6) * 100'000;
    for (auto& v : sc.data_centers[0].c_op) v = rng.uniform_int(5, 40) * 1000;
    for (auto& v : sc.data_centers[1].c_op) v = rng.uniform_int(5, 60) * 1000;
    for (auto& v : sc.demand) v = rng.uniform_int(0, 3);
    for (auto& v : sc.c_pen) v = rng.uniform_int(20, 200) * 1000;
    sc.services[0].c_mig = rng.uniform_int(0, 40) * 1000;
    sc.services[1].c_mig = rng.uniform_int(0, 20) * 1000;
    if (rng.uniform_int(0, 3) == 0) {  // occasionally tight MAN links
        sc.user_clusters[0].man_down = sc.user_clusters[0].man_up = 80;
        sc.user_clusters[1].man_down = sc.user_clusters[1].man_up = 80;
    }
    sc.check();
    return sc;
}

}  // namespace dcpsp::testutil

#endif
