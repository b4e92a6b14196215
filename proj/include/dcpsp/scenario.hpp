#ifndef DCPSP_SCENARIO_HPP
#define DCPSP_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "dcpsp/model.hpp"

namespace dcpsp {

// Knobs for the synthetic metropolitan scenario generator. Each location is
// a user cluster that co-hosts one candidate cloudlet; with
// remote_replaces_cloudlet the first location loses its cloudlet so that a
// run with the remote cloud keeps |D| == n_locations.
struct GeneratorParams {
    int n_locations = 1;
    bool include_remote_cloud = true;
    bool remote_replaces_cloudlet = false;
    int n_services = 3;
    int horizon = 1;
    int qos_attr_count = 1;
    std::uint64_t seed = 0;

    // capacity and network
    Units kmax_low = 1;
    Units kmax_high = 20;
    int routers_low = 2;
    int routers_high = 6;
    Mbps lan_per_router = 500;
    Mbps man_bandwidth = 1000;

    // cost calibration (milli money units)
    Money c_hw = 100'000;           // per server per horizon
    // remote per-unit operating cost as a multiple of the mean cloudlet one
    double remote_premium = 2.0;

    // synthetic latency model (ms)
    double latency_local = 10.0;
    double latency_man = 60.0;
    double latency_remote = 150.0;

    // demand shape
    double demand_amplitude_max = 0.5;
    double demand_noise_max = 1.0;  // 0 disables noise
    Units demand_extra = 5;         // base in [0, local k_max + demand_extra]
    Units demand_cap = 0;           // 0 = uncapped; otherwise clamp base
};

Scenario generate(const GeneratorParams& params);

// Deterministic demand curve: round(base * (1 + a*sin(2*pi*t/T + phi)) + noise),
// clamped at zero. generate() draws (a, phi) per (cluster, service) and noise
// per slot from the seeded stream.
Units demand_profile(Units base, int t, int horizon, double amplitude, double phase,
                     double noise);

// Scenario file format: a single JSON document, integers for counts and
// money (milli-units). Round-trips field-for-field.
std::string write_scenario(const Scenario& sc);
Scenario read_scenario(const std::string& bytes);

}  // namespace dcpsp

#endif
