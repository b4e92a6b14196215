#ifndef DCPSP_MODEL_HPP
#define DCPSP_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcpsp {

// Money is kept in integer milli-units so cost identities hold exactly.
using Money = std::int64_t;
// Resource units: one server's worth of capacity for one slot.
using Units = std::int64_t;
using Mbps = std::int64_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an id or a tensor dimension does not match the scenario.
struct InvalidReferenceError : Error {
    using Error::Error;
};

struct InvalidParamsError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

enum class QosDirection { HigherIsBetter, LowerIsBetter };

struct QosAttribute {
    std::string id;
    QosDirection direction = QosDirection::HigherIsBetter;
};

enum class DataCenterKind { RemoteCloud, Cloudlet };

struct DataCenter {
    std::string id;
    DataCenterKind kind = DataCenterKind::Cloudlet;
    Units k_min = 0;
    Units k_max = 0;
    Money c_fix = 0;                // charged once per horizon when placed
    Money c_hw = 0;                 // per installed server, per horizon
    std::vector<Money> c_op;        // per resource unit and slot, length = horizon
    std::optional<std::string> home_cluster;  // cloudlets only
};

struct UserCluster {
    std::string id;
    Mbps lan_down = 0;
    Mbps lan_up = 0;
    Mbps man_down = 0;
    Mbps man_up = 0;
    std::optional<std::string> local_cloudlet;
};

struct QosRequirement {
    std::string attribute;
    double value = 0.0;
};

struct Service {
    std::string id;
    Mbps l_down = 0;                // bandwidth per resource unit
    Mbps l_up = 0;
    Money c_mig = 0;                // per migrated unit
    std::vector<QosRequirement> qos_req;
};

class Scenario {
public:
    int horizon = 1;
    std::vector<QosAttribute> qos_attributes;
    std::vector<DataCenter> data_centers;
    std::vector<UserCluster> user_clusters;
    std::vector<Service> services;
    std::vector<Units> demand;      // [u][s][t]
    std::vector<double> qos_gua;    // [d][u][attr]
    std::vector<Money> c_pen;       // [u][s]

    std::size_t num_dcs() const { return data_centers.size(); }
    std::size_t num_clusters() const { return user_clusters.size(); }
    std::size_t num_services() const { return services.size(); }
    std::size_t num_attrs() const { return qos_attributes.size(); }

    Units demand_at(std::size_t u, std::size_t s, std::size_t t) const {
        return demand[(u * num_services() + s) * horizon + t];
    }
    Units& demand_at(std::size_t u, std::size_t s, std::size_t t) {
        return demand[(u * num_services() + s) * horizon + t];
    }
    double guarantee(std::size_t d, std::size_t u, std::size_t a) const {
        return qos_gua[(d * num_clusters() + u) * num_attrs() + a];
    }
    double& guarantee(std::size_t d, std::size_t u, std::size_t a) {
        return qos_gua[(d * num_clusters() + u) * num_attrs() + a];
    }
    Money penalty(std::size_t u, std::size_t s) const {
        return c_pen[u * num_services() + s];
    }
    Money& penalty(std::size_t u, std::size_t s) {
        return c_pen[u * num_services() + s];
    }

    int dc_index(const std::string& id) const;
    int cluster_index(const std::string& id) const;
    int service_index(const std::string& id) const;
    int attr_index(const std::string& id) const;

    // Index of the cloudlet homed at cluster u, or -1.
    int local_cloudlet_of(std::size_t u) const;

    // Checks structural invariants (dimension coherence, id uniqueness,
    // home-cluster bijection, non-negativity). Throws InvalidReferenceError
    // with the offending field on failure.
    void check() const;
};

struct Solution {
    std::vector<std::uint8_t> x;    // [d], data center placed
    std::vector<Units> z;           // [d], installed servers
    std::vector<Units> y;           // [d][u][s][t]
    std::vector<Units> y_pen;       // [u][s][t]

    static Solution zeros(const Scenario& sc);
    static Solution all_penalty(const Scenario& sc);

    Units y_at(const Scenario& sc, std::size_t d, std::size_t u, std::size_t s,
               std::size_t t) const {
        return y[((d * sc.num_clusters() + u) * sc.num_services() + s) * sc.horizon + t];
    }
    Units& y_at(const Scenario& sc, std::size_t d, std::size_t u, std::size_t s,
                std::size_t t) {
        return y[((d * sc.num_clusters() + u) * sc.num_services() + s) * sc.horizon + t];
    }
    Units pen_at(const Scenario& sc, std::size_t u, std::size_t s, std::size_t t) const {
        return y_pen[(u * sc.num_services() + s) * sc.horizon + t];
    }
    Units& pen_at(const Scenario& sc, std::size_t u, std::size_t s, std::size_t t) {
        return y_pen[(u * sc.num_services() + s) * sc.horizon + t];
    }
};

struct CostBreakdown {
    Money fixed = 0;
    Money operational = 0;
    Money penalty = 0;
    Money migration = 0;
    Money hardware = 0;
    Money total = 0;
};

struct Violation {
    std::string tag;                 // constraint family
    std::array<int, 4> idx{-1, -1, -1, -1};  // (d,u,s,t), unused dims -1
    long long slack = 0;             // amount by which the constraint is missed
};

// QoS eligibility p_{d,u,s}: every requirement of s must be met by d's
// guarantee towards u under the attribute's direction (non-strict).
bool eligibility(const Scenario& sc, std::size_t d, std::size_t u, std::size_t s);

// Migrated units per data center for one (u,s) between two consecutive
// slots. If the aggregate did not decrease, per-DC decreases are counted;
// otherwise per-DC increases.
std::vector<Units> compute_migrations(std::span<const Units> y_prev,
                                      std::span<const Units> y_curr);

CostBreakdown evaluate_cost(const Scenario& sc, const Solution& sol);

// Full feasibility check; empty result means the solution is valid.
std::vector<Violation> validate(const Scenario& sc, const Solution& sol);

namespace detail {
void check_dimensions(const Scenario& sc, const Solution& sol);
}

}  // namespace dcpsp

#endif
