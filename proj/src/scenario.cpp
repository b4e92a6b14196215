#include "dcpsp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "dcpsp/rng.hpp"

namespace dcpsp {

namespace {

struct ServiceClass {
    Mbps l_down, l_up;
    double latency_req;
    double mig_mult, pen_mult;
};

// Service classes 1..3: download 40/40/20, upload 10/10/20 Mbps,
// latency 50/100/250 ms, migration 1.00/0.75/0.50, penalty 1.20/1.00/1.00.
constexpr ServiceClass kServiceClasses[3] = {
    {40, 10, 50.0, 1.00, 1.20},
    {40, 10, 100.0, 0.75, 1.00},
    {20, 20, 250.0, 0.50, 1.00},
};

void check_params(const GeneratorParams& p) {
    if (p.n_locations < 1) throw InvalidParamsError("n_locations must be >= 1");
    if (p.n_services < 1) throw InvalidParamsError("n_services must be >= 1");
    if (p.horizon < 1) throw InvalidParamsError("horizon must be >= 1");
    if (p.qos_attr_count < 1) throw InvalidParamsError("qos_attr_count must be >= 1");
    if (p.kmax_low < 1 || p.kmax_high < p.kmax_low)
        throw InvalidParamsError("need 1 <= kmax_low <= kmax_high");
    if (p.routers_low < 1 || p.routers_high < p.routers_low)
        throw InvalidParamsError("need 1 <= routers_low <= routers_high");
    if (p.lan_per_router < 0 || p.man_bandwidth < 0)
        throw InvalidParamsError("bandwidth knobs must be non-negative");
    if (p.c_hw < 0) throw InvalidParamsError("c_hw must be non-negative");
    if (p.remote_premium <= 0) throw InvalidParamsError("remote_premium must be > 0");
    if (p.demand_amplitude_max < 0 || p.demand_amplitude_max > 1)
        throw InvalidParamsError("demand_amplitude_max must be in [0,1]");
    if (p.demand_noise_max < 0) throw InvalidParamsError("demand_noise_max must be >= 0");
    if (p.demand_extra < 0 || p.demand_cap < 0)
        throw InvalidParamsError("demand knobs must be non-negative");
    if (p.remote_replaces_cloudlet && !p.include_remote_cloud)
        throw InvalidParamsError("remote_replaces_cloudlet requires include_remote_cloud");
}

}  // namespace

Units demand_profile(Units base, int t, int horizon, double amplitude, double phase,
                     double noise) {
    if (base < 0) throw InvalidParamsError("demand_profile: base must be >= 0");
    double arg = 2.0 * std::numbers::pi * static_cast<double>(t) / horizon + phase;
    double v = static_cast<double>(base) * (1.0 + amplitude * std::sin(arg)) + noise;
    Units r = static_cast<Units>(std::llround(v));
    if (base == 0) return 0;
    return std::max<Units>(0, r);
}

Scenario generate(const GeneratorParams& p) {
    check_params(p);
    Rng rng(p.seed);
    Scenario sc;
    sc.horizon = p.horizon;
    const int T = p.horizon;

    sc.qos_attributes.push_back({"latency", QosDirection::LowerIsBetter});
    for (int a = 1; a < p.qos_attr_count; ++a)
        sc.qos_attributes.push_back({"attr_" + std::to_string(a + 1),
                                     QosDirection::HigherIsBetter});

    // clusters
    for (int i = 0; i < p.n_locations; ++i) {
        UserCluster uc;
        uc.id = "uc_" + std::to_string(i + 1);
        Mbps lan = rng.uniform_int(p.routers_low, p.routers_high) * p.lan_per_router;
        uc.lan_down = uc.lan_up = lan;
        uc.man_down = uc.man_up = p.man_bandwidth;
        sc.user_clusters.push_back(uc);
    }

    // candidate cloudlets, one per location (the first location is skipped
    // when the remote cloud takes its slot)
    int first_cloudlet_loc = p.remote_replaces_cloudlet ? 1 : 0;
    for (int i = first_cloudlet_loc; i < p.n_locations; ++i) {
        DataCenter dc;
        dc.id = "dc_" + std::to_string(i + 1);
        dc.kind = DataCenterKind::Cloudlet;
        dc.k_min = 0;
        dc.k_max = rng.uniform_int(p.kmax_low, p.kmax_high);
        dc.c_hw = p.c_hw;
        dc.c_fix = p.c_hw * dc.k_max / 2;  // 25% infrastructure vs 50% servers
        dc.home_cluster = sc.user_clusters[i].id;
        sc.user_clusters[i].local_cloudlet = dc.id;
        // per-unit-slot operating cost, jittered to model varying energy prices
        double op_base = static_cast<double>(p.c_hw) / (2.0 * T);
        dc.c_op.resize(T);
        for (int t = 0; t < T; ++t)
            dc.c_op[t] = std::llround(op_base * rng.uniform(0.8, 1.2));
        sc.data_centers.push_back(dc);
    }

    // services from the three service classes, cycled when n_services > 3
    for (int s = 0; s < p.n_services; ++s) {
        const ServiceClass& cls = kServiceClasses[s % 3];
        Service sv;
        sv.id = "svc_" + std::to_string(s + 1);
        sv.l_down = cls.l_down;
        sv.l_up = cls.l_up;
        sv.qos_req.push_back({"latency", cls.latency_req});
        for (std::size_t a = 1; a < sc.qos_attributes.size(); ++a)
            sv.qos_req.push_back({sc.qos_attributes[a].id, 0.0});
        sc.services.push_back(sv);
    }

    // demand tensor
    const std::size_t U = sc.num_clusters(), S = sc.num_services();
    sc.demand.assign(U * S * T, 0);
    Units fallback_kmax = (p.kmax_low + p.kmax_high) / 2;
    for (std::size_t u = 0; u < U; ++u) {
        int local = sc.local_cloudlet_of(u);
        Units local_kmax = local >= 0 ? sc.data_centers[local].k_max : fallback_kmax;
        for (std::size_t s = 0; s < S; ++s) {
            Units base = rng.uniform_int(0, local_kmax + p.demand_extra);
            if (p.demand_cap > 0) base = std::min(base, p.demand_cap);
            double amplitude = rng.uniform(0.0, p.demand_amplitude_max);
            double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            for (int t = 0; t < T; ++t) {
                double noise = p.demand_noise_max > 0
                                   ? rng.uniform(-p.demand_noise_max, p.demand_noise_max)
                                   : 0.0;
                sc.demand_at(u, s, t) = demand_profile(base, t, T, amplitude, phase, noise);
            }
        }
    }

    // the remote cloud covers any peak on its own; pay-as-you-go pricing
    if (p.include_remote_cloud) {
        Units peak = 1;
        for (int t = 0; t < T; ++t) {
            Units agg = 0;
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t s = 0; s < S; ++s) agg += sc.demand_at(u, s, t);
            peak = std::max(peak, agg);
        }
        double op_sum = 0.0;
        std::size_t op_count = 0;
        for (const auto& dc : sc.data_centers)
            for (Money m : dc.c_op) {
                op_sum += static_cast<double>(m);
                ++op_count;
            }
        Money remote_op =
            op_count > 0
                ? std::llround(p.remote_premium * op_sum / static_cast<double>(op_count))
                : std::llround(p.remote_premium * static_cast<double>(p.c_hw) / (2.0 * T));
        DataCenter dc;
        dc.id = "dc_remote";
        dc.kind = DataCenterKind::RemoteCloud;
        dc.k_min = 0;
        dc.k_max = peak;
        dc.c_fix = 0;
        dc.c_hw = 0;
        dc.c_op.assign(T, remote_op);
        sc.data_centers.push_back(dc);
    }

    // QoS guarantees from the synthetic latency model
    const std::size_t D = sc.num_dcs(), A = sc.num_attrs();
    sc.qos_gua.assign(D * U * A, 0.0);
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t u = 0; u < U; ++u) {
            double lat;
            if (sc.data_centers[d].kind == DataCenterKind::RemoteCloud)
                lat = p.latency_remote;
            else if (sc.data_centers[d].home_cluster == sc.user_clusters[u].id)
                lat = p.latency_local;
            else
                lat = p.latency_man;
            sc.guarantee(d, u, 0) = lat;
            for (std::size_t a = 1; a < A; ++a) sc.guarantee(d, u, a) = 100.0;
        }

    // penalties dominate the most expensive marginal serving cost
    Money max_marginal = 0;
    for (const auto& dc : sc.data_centers)
        for (int t = 0; t < T; ++t)
            max_marginal = std::max(max_marginal, dc.c_op[t] + dc.c_hw / T);
    sc.c_pen.assign(U * S, 0);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < S; ++s) {
            const ServiceClass& cls = kServiceClasses[s % 3];
            sc.penalty(u, s) = std::llround(3.0 * static_cast<double>(max_marginal) *
                                            cls.pen_mult);
        }

    // migration cost, about one slot of cloudlet operation per moved unit
    Money mig_base = p.c_hw / (2 * T);
    for (std::size_t s = 0; s < S; ++s)
        sc.services[s].c_mig =
            std::llround(static_cast<double>(mig_base) * kServiceClasses[s % 3].mig_mult);

    sc.check();
    return sc;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

std::string direction_name(QosDirection d) {
    return d == QosDirection::HigherIsBetter ? "higher-is-better" : "lower-is-better";
}

QosDirection direction_from(const std::string& s) {
    if (s == "higher-is-better") return QosDirection::HigherIsBetter;
    if (s == "lower-is-better") return QosDirection::LowerIsBetter;
    throw InvalidReferenceError("unknown qos direction: " + s);
}

std::string kind_name(DataCenterKind k) {
    return k == DataCenterKind::RemoteCloud ? "remote-cloud" : "cloudlet";
}

DataCenterKind kind_from(const std::string& s) {
    if (s == "remote-cloud") return DataCenterKind::RemoteCloud;
    if (s == "cloudlet") return DataCenterKind::Cloudlet;
    throw InvalidReferenceError("unknown data center kind: " + s);
}

const json& field(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        throw InvalidReferenceError("missing field '" + std::string(key) + "' in " + ctx);
    return *it;
}

}  // namespace

std::string write_scenario(const Scenario& sc) {
    json j;
    j["format_version"] = kFormatVersion;
    j["horizon"] = sc.horizon;
    j["qos_attributes"] = json::array();
    for (const auto& a : sc.qos_attributes)
        j["qos_attributes"].push_back({{"id", a.id},
                                       {"direction", direction_name(a.direction)}});
    j["data_centers"] = json::array();
    for (const auto& dc : sc.data_centers) {
        json jd = {{"id", dc.id},       {"kind", kind_name(dc.kind)},
                   {"k_min", dc.k_min}, {"k_max", dc.k_max},
                   {"c_fix", dc.c_fix}, {"c_hw", dc.c_hw},
                   {"c_op", dc.c_op}};
        if (dc.home_cluster) jd["home_cluster"] = *dc.home_cluster;
        j["data_centers"].push_back(jd);
    }
    j["user_clusters"] = json::array();
    for (const auto& uc : sc.user_clusters) {
        json ju = {{"id", uc.id},
                   {"lan_down", uc.lan_down},
                   {"lan_up", uc.lan_up},
                   {"man_down", uc.man_down},
                   {"man_up", uc.man_up}};
        if (uc.local_cloudlet) ju["local_cloudlet"] = *uc.local_cloudlet;
        j["user_clusters"].push_back(ju);
    }
    j["services"] = json::array();
    for (const auto& sv : sc.services) {
        json req = json::object();
        for (const auto& r : sv.qos_req) req[r.attribute] = r.value;
        j["services"].push_back({{"id", sv.id},
                                 {"l_down", sv.l_down},
                                 {"l_up", sv.l_up},
                                 {"c_mig", sv.c_mig},
                                 {"qos_req", req}});
    }

    // arrays indexed in declared id order
    json demand = json::array();
    for (std::size_t u = 0; u < sc.num_clusters(); ++u) {
        json per_u = json::array();
        for (std::size_t s = 0; s < sc.num_services(); ++s) {
            json per_s = json::array();
            for (int t = 0; t < sc.horizon; ++t) per_s.push_back(sc.demand_at(u, s, t));
            per_u.push_back(per_s);
        }
        demand.push_back(per_u);
    }
    j["demand"] = demand;

    json gua = json::array();
    for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
        json per_d = json::array();
        for (std::size_t u = 0; u < sc.num_clusters(); ++u) {
            json per_u = json::array();
            for (std::size_t a = 0; a < sc.num_attrs(); ++a)
                per_u.push_back(sc.guarantee(d, u, a));
            per_d.push_back(per_u);
        }
        gua.push_back(per_d);
    }
    j["qos_guarantees"] = gua;

    json pen = json::array();
    for (std::size_t u = 0; u < sc.num_clusters(); ++u) {
        json per_u = json::array();
        for (std::size_t s = 0; s < sc.num_services(); ++s)
            per_u.push_back(sc.penalty(u, s));
        pen.push_back(per_u);
    }
    j["penalty_costs"] = pen;

    return j.dump(2) + "\n";
}

Scenario read_scenario(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }
    try {
        if (field(j, "format_version", "document").get<int>() != kFormatVersion)
            throw InvalidReferenceError("unsupported format_version");
        Scenario sc;
        sc.horizon = field(j, "horizon", "document").get<int>();
        for (const auto& ja : field(j, "qos_attributes", "document")) {
            QosAttribute a;
            a.id = field(ja, "id", "qos_attributes").get<std::string>();
            a.direction =
                direction_from(field(ja, "direction", "qos_attributes").get<std::string>());
            sc.qos_attributes.push_back(a);
        }
        for (const auto& jd : field(j, "data_centers", "document")) {
            DataCenter dc;
            dc.id = field(jd, "id", "data_centers").get<std::string>();
            dc.kind = kind_from(field(jd, "kind", "data_centers").get<std::string>());
            dc.k_min = field(jd, "k_min", dc.id).get<Units>();
            dc.k_max = field(jd, "k_max", dc.id).get<Units>();
            dc.c_fix = field(jd, "c_fix", dc.id).get<Money>();
            dc.c_hw = field(jd, "c_hw", dc.id).get<Money>();
            dc.c_op = field(jd, "c_op", dc.id).get<std::vector<Money>>();
            if (jd.contains("home_cluster"))
                dc.home_cluster = jd["home_cluster"].get<std::string>();
            sc.data_centers.push_back(dc);
        }
        for (const auto& ju : field(j, "user_clusters", "document")) {
            UserCluster uc;
            uc.id = field(ju, "id", "user_clusters").get<std::string>();
            uc.lan_down = field(ju, "lan_down", uc.id).get<Mbps>();
            uc.lan_up = field(ju, "lan_up", uc.id).get<Mbps>();
            uc.man_down = field(ju, "man_down", uc.id).get<Mbps>();
            uc.man_up = field(ju, "man_up", uc.id).get<Mbps>();
            if (ju.contains("local_cloudlet"))
                uc.local_cloudlet = ju["local_cloudlet"].get<std::string>();
            sc.user_clusters.push_back(uc);
        }
        for (const auto& js : field(j, "services", "document")) {
            Service sv;
            sv.id = field(js, "id", "services").get<std::string>();
            sv.l_down = field(js, "l_down", sv.id).get<Mbps>();
            sv.l_up = field(js, "l_up", sv.id).get<Mbps>();
            sv.c_mig = field(js, "c_mig", sv.id).get<Money>();
            for (const auto& [attr, value] : field(js, "qos_req", sv.id).items())
                sv.qos_req.push_back({attr, value.get<double>()});
            sc.services.push_back(sv);
        }

        const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
        const std::size_t A = sc.num_attrs();
        const int T = sc.horizon;

        const json& jdem = field(j, "demand", "document");
        if (jdem.size() != U) throw InvalidReferenceError("demand: wrong cluster count");
        sc.demand.assign(U * S * T, 0);
        for (std::size_t u = 0; u < U; ++u) {
            if (jdem[u].size() != S)
                throw InvalidReferenceError("demand: wrong service count");
            for (std::size_t s = 0; s < S; ++s) {
                if (static_cast<int>(jdem[u][s].size()) != T)
                    throw InvalidReferenceError("demand: length must equal horizon");
                for (int t = 0; t < T; ++t)
                    sc.demand_at(u, s, t) = jdem[u][s][t].get<Units>();
            }
        }

        const json& jgua = field(j, "qos_guarantees", "document");
        if (jgua.size() != D)
            throw InvalidReferenceError("qos_guarantees: wrong data center count");
        sc.qos_gua.assign(D * U * A, 0.0);
        for (std::size_t d = 0; d < D; ++d) {
            if (jgua[d].size() != U)
                throw InvalidReferenceError("qos_guarantees: wrong cluster count");
            for (std::size_t u = 0; u < U; ++u) {
                if (jgua[d][u].size() != A)
                    throw InvalidReferenceError("qos_guarantees: wrong attribute count");
                for (std::size_t a = 0; a < A; ++a)
                    sc.guarantee(d, u, a) = jgua[d][u][a].get<double>();
            }
        }

        const json& jpen = field(j, "penalty_costs", "document");
        if (jpen.size() != U)
            throw InvalidReferenceError("penalty_costs: wrong cluster count");
        sc.c_pen.assign(U * S, 0);
        for (std::size_t u = 0; u < U; ++u) {
            if (jpen[u].size() != S)
                throw InvalidReferenceError("penalty_costs: wrong service count");
            for (std::size_t s = 0; s < S; ++s)
                sc.penalty(u, s) = jpen[u][s].get<Money>();
        }

        sc.check();
        return sc;
    } catch (const json::exception& e) {
        throw InvalidReferenceError(std::string("scenario field error: ") + e.what());
    }
}

}  // namespace dcpsp
