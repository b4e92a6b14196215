#include "dcpsp/model.hpp"

#include <algorithm>
#include <set>

namespace dcpsp {

namespace {

int find_id(const std::vector<std::string>& ids, const std::string& id) {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return static_cast<int>(i);
    return -1;
}

template <class T>
std::vector<std::string> collect_ids(const std::vector<T>& items) {
    std::vector<std::string> ids;
    ids.reserve(items.size());
    for (const auto& it : items) ids.push_back(it.id);
    return ids;
}

template <class T>
void require_unique_ids(const std::vector<T>& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& it : items)
        if (!seen.insert(it.id).second)
            throw InvalidReferenceError(std::string("duplicate ") + what + " id: " + it.id);
}

}  // namespace

int Scenario::dc_index(const std::string& id) const {
    return find_id(collect_ids(data_centers), id);
}

int Scenario::cluster_index(const std::string& id) const {
    return find_id(collect_ids(user_clusters), id);
}

int Scenario::service_index(const std::string& id) const {
    return find_id(collect_ids(services), id);
}

int Scenario::attr_index(const std::string& id) const {
    return find_id(collect_ids(qos_attributes), id);
}

int Scenario::local_cloudlet_of(std::size_t u) const {
    const auto& ref = user_clusters[u].local_cloudlet;
    if (!ref) return -1;
    return dc_index(*ref);
}

void Scenario::check() const {
    if (horizon < 1) throw InvalidReferenceError("horizon must be >= 1");
    require_unique_ids(qos_attributes, "qos attribute");
    require_unique_ids(data_centers, "data center");
    require_unique_ids(user_clusters, "user cluster");
    require_unique_ids(services, "service");

    for (const auto& dc : data_centers) {
        if (dc.k_min < 0 || dc.k_max < dc.k_min)
            throw InvalidReferenceError("data center " + dc.id +
                                        ": need 0 <= k_min <= k_max");
        if (dc.c_fix < 0 || dc.c_hw < 0)
            throw InvalidReferenceError("data center " + dc.id + ": negative cost");
        if (static_cast<int>(dc.c_op.size()) != horizon)
            throw InvalidReferenceError("data center " + dc.id +
                                        ": c_op length must equal horizon");
        for (Money m : dc.c_op)
            if (m < 0)
                throw InvalidReferenceError("data center " + dc.id + ": negative c_op");
        if (dc.kind == DataCenterKind::RemoteCloud) {
            if (dc.k_min != 0)
                throw InvalidReferenceError("remote cloud " + dc.id + ": k_min must be 0");
            if (dc.home_cluster)
                throw InvalidReferenceError("remote cloud " + dc.id +
                                            ": must not have home_cluster");
        } else {
            if (dc.k_max < 1)
                throw InvalidReferenceError("cloudlet " + dc.id + ": k_max must be >= 1");
        }
        if (dc.home_cluster && cluster_index(*dc.home_cluster) < 0)
            throw InvalidReferenceError("data center " + dc.id +
                                        ": unknown home_cluster " + *dc.home_cluster);
    }

    for (std::size_t u = 0; u < user_clusters.size(); ++u) {
        const auto& uc = user_clusters[u];
        if (uc.lan_down < 0 || uc.lan_up < 0 || uc.man_down < 0 || uc.man_up < 0)
            throw InvalidReferenceError("user cluster " + uc.id + ": negative bandwidth");
        if (uc.local_cloudlet) {
            int d = dc_index(*uc.local_cloudlet);
            if (d < 0)
                throw InvalidReferenceError("user cluster " + uc.id +
                                            ": unknown local_cloudlet " + *uc.local_cloudlet);
            const auto& dc = data_centers[d];
            if (dc.kind != DataCenterKind::Cloudlet || !dc.home_cluster ||
                *dc.home_cluster != uc.id)
                throw InvalidReferenceError("user cluster " + uc.id +
                                            ": local_cloudlet link is not a bijection");
        }
    }
    // the bijection must hold from the data center side as well
    for (const auto& dc : data_centers) {
        if (!dc.home_cluster) continue;
        int u = cluster_index(*dc.home_cluster);
        const auto& uc = user_clusters[u];
        if (!uc.local_cloudlet || *uc.local_cloudlet != dc.id)
            throw InvalidReferenceError("data center " + dc.id +
                                        ": home_cluster link is not a bijection");
    }

    for (const auto& sv : services) {
        if (sv.l_down < 0 || sv.l_up < 0 || sv.c_mig < 0)
            throw InvalidReferenceError("service " + sv.id + ": negative field");
        for (const auto& req : sv.qos_req)
            if (attr_index(req.attribute) < 0)
                throw InvalidReferenceError("service " + sv.id +
                                            ": unknown qos attribute " + req.attribute);
    }

    if (demand.size() != num_clusters() * num_services() * static_cast<std::size_t>(horizon))
        throw InvalidReferenceError("demand tensor has wrong size");
    for (Units v : demand)
        if (v < 0) throw InvalidReferenceError("demand tensor has a negative entry");
    if (qos_gua.size() != num_dcs() * num_clusters() * num_attrs())
        throw InvalidReferenceError("qos_guarantees tensor has wrong size");
    if (c_pen.size() != num_clusters() * num_services())
        throw InvalidReferenceError("penalty_costs matrix has wrong size");
    for (Money m : c_pen)
        if (m < 0) throw InvalidReferenceError("penalty_costs has a negative entry");
}

Solution Solution::zeros(const Scenario& sc) {
    Solution sol;
    sol.x.assign(sc.num_dcs(), 0);
    sol.z.assign(sc.num_dcs(), 0);
    sol.y.assign(sc.num_dcs() * sc.num_clusters() * sc.num_services() * sc.horizon, 0);
    sol.y_pen.assign(sc.num_clusters() * sc.num_services() * sc.horizon, 0);
    return sol;
}

Solution Solution::all_penalty(const Scenario& sc) {
    Solution sol = zeros(sc);
    for (std::size_t u = 0; u < sc.num_clusters(); ++u)
        for (std::size_t s = 0; s < sc.num_services(); ++s)
            for (int t = 0; t < sc.horizon; ++t)
                sol.pen_at(sc, u, s, t) = sc.demand_at(u, s, t);
    return sol;
}

void detail::check_dimensions(const Scenario& sc, const Solution& sol) {
    if (sol.x.size() != sc.num_dcs() || sol.z.size() != sc.num_dcs() ||
        sol.y.size() != sc.num_dcs() * sc.num_clusters() * sc.num_services() *
                            static_cast<std::size_t>(sc.horizon) ||
        sol.y_pen.size() != sc.num_clusters() * sc.num_services() *
                                static_cast<std::size_t>(sc.horizon))
        throw InvalidReferenceError("solution dimensions do not match scenario");
}

bool eligibility(const Scenario& sc, std::size_t d, std::size_t u, std::size_t s) {
    if (d >= sc.num_dcs() || u >= sc.num_clusters() || s >= sc.num_services())
        throw InvalidReferenceError("eligibility: index out of range");
    for (const auto& req : sc.services[s].qos_req) {
        int a = sc.attr_index(req.attribute);
        if (a < 0)
            throw InvalidReferenceError("eligibility: unknown attribute " + req.attribute);
        double gua = sc.guarantee(d, u, a);
        if (sc.qos_attributes[a].direction == QosDirection::HigherIsBetter) {
            if (gua < req.value) return false;
        } else {
            if (gua > req.value) return false;
        }
    }
    return true;
}

std::vector<Units> compute_migrations(std::span<const Units> y_prev,
                                      std::span<const Units> y_curr) {
    if (y_prev.size() != y_curr.size())
        throw InvalidReferenceError("compute_migrations: mismatched data center sets");
    Units agg_prev = 0, agg_curr = 0;
    for (Units v : y_prev) agg_prev += v;
    for (Units v : y_curr) agg_curr += v;
    std::vector<Units> mig(y_curr.size(), 0);
    for (std::size_t d = 0; d < y_curr.size(); ++d) {
        if (agg_curr >= agg_prev)
            mig[d] = std::max<Units>(0, y_prev[d] - y_curr[d]);
        else
            mig[d] = std::max<Units>(0, y_curr[d] - y_prev[d]);
    }
    return mig;
}

CostBreakdown evaluate_cost(const Scenario& sc, const Solution& sol) {
    detail::check_dimensions(sc, sol);
    CostBreakdown cb;
    const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
    const int T = sc.horizon;

    for (std::size_t d = 0; d < D; ++d) {
        if (sol.x[d]) cb.fixed += sc.data_centers[d].c_fix;
        cb.hardware += sol.z[d] * sc.data_centers[d].c_hw;
    }
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t s = 0; s < S; ++s)
                for (int t = 0; t < T; ++t)
                    cb.operational += sol.y_at(sc, d, u, s, t) * sc.data_centers[d].c_op[t];
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < S; ++s)
            for (int t = 0; t < T; ++t)
                cb.penalty += sol.pen_at(sc, u, s, t) * sc.penalty(u, s);

    std::vector<Units> prev(D), curr(D);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < S; ++s)
            for (int t = 1; t < T; ++t) {
                for (std::size_t d = 0; d < D; ++d) {
                    prev[d] = sol.y_at(sc, d, u, s, t - 1);
                    curr[d] = sol.y_at(sc, d, u, s, t);
                }
                for (Units m : compute_migrations(prev, curr))
                    cb.migration += m * sc.services[s].c_mig;
            }

    cb.total = cb.fixed + cb.operational + cb.penalty + cb.migration + cb.hardware;
    return cb;
}

std::vector<Violation> validate(const Scenario& sc, const Solution& sol) {
    detail::check_dimensions(sc, sol);
    std::vector<Violation> out;
    const int D = static_cast<int>(sc.num_dcs());
    const int U = static_cast<int>(sc.num_clusters());
    const int S = static_cast<int>(sc.num_services());
    const int T = sc.horizon;

    auto add = [&out](const std::string& tag, int d, int u, int s, int t, long long slack) {
        out.push_back(Violation{tag, {d, u, s, t}, slack});
    };

    for (int d = 0; d < D; ++d) {
        if (sol.z[d] < 0) add("non-negativity", d, -1, -1, -1, -sol.z[d]);
        for (int u = 0; u < U; ++u)
            for (int s = 0; s < S; ++s)
                for (int t = 0; t < T; ++t)
                    if (sol.y_at(sc, d, u, s, t) < 0)
                        add("non-negativity", d, u, s, t, -sol.y_at(sc, d, u, s, t));
    }
    for (int u = 0; u < U; ++u)
        for (int s = 0; s < S; ++s)
            for (int t = 0; t < T; ++t)
                if (sol.pen_at(sc, u, s, t) < 0)
                    add("non-negativity", -1, u, s, t, -sol.pen_at(sc, u, s, t));

    // demand coverage
    for (int u = 0; u < U; ++u)
        for (int s = 0; s < S; ++s)
            for (int t = 0; t < T; ++t) {
                Units served = sol.pen_at(sc, u, s, t);
                for (int d = 0; d < D; ++d) served += sol.y_at(sc, d, u, s, t);
                if (served < sc.demand_at(u, s, t))
                    add("coverage", -1, u, s, t, sc.demand_at(u, s, t) - served);
            }

    // per-slot capacity vs installed servers
    for (int d = 0; d < D; ++d)
        for (int t = 0; t < T; ++t) {
            Units load = 0;
            for (int u = 0; u < U; ++u)
                for (int s = 0; s < S; ++s) load += sol.y_at(sc, d, u, s, t);
            if (load > sol.z[d]) add("capacity-link", d, -1, -1, t, load - sol.z[d]);
        }

    // z within [x*k_min, x*k_max]
    for (int d = 0; d < D; ++d) {
        Units lo = sol.x[d] ? sc.data_centers[d].k_min : 0;
        Units hi = sol.x[d] ? sc.data_centers[d].k_max : 0;
        if (sol.z[d] < lo) add("capacity-bounds", d, -1, -1, -1, lo - sol.z[d]);
        if (sol.z[d] > hi) add("capacity-bounds", d, -1, -1, -1, sol.z[d] - hi);
    }

    // eligibility gating
    for (int d = 0; d < D; ++d)
        for (int u = 0; u < U; ++u)
            for (int s = 0; s < S; ++s) {
                if (eligibility(sc, d, u, s)) continue;
                for (int t = 0; t < T; ++t) {
                    Units v = sol.y_at(sc, d, u, s, t);
                    if (v > 0) add("qos-eligibility", d, u, s, t, v);
                }
            }

    // LAN: every flow consumed by a cluster traverses its LAN
    for (int u = 0; u < U; ++u)
        for (int t = 0; t < T; ++t) {
            Mbps down = 0, up = 0;
            for (int d = 0; d < D; ++d)
                for (int s = 0; s < S; ++s) {
                    Units v = sol.y_at(sc, d, u, s, t);
                    down += v * sc.services[s].l_down;
                    up += v * sc.services[s].l_up;
                }
            if (down > sc.user_clusters[u].lan_down)
                add("lan-down", -1, u, -1, t, down - sc.user_clusters[u].lan_down);
            if (up > sc.user_clusters[u].lan_up)
                add("lan-up", -1, u, -1, t, up - sc.user_clusters[u].lan_up);
        }

    // MAN: remote-sourced inflows plus local-cloudlet outflows to other
    // clusters; local-cloudlet-to-local-users traffic is exempt
    for (int u = 0; u < U; ++u) {
        int local = sc.local_cloudlet_of(u);
        for (int t = 0; t < T; ++t) {
            Mbps down = 0, up = 0;
            for (int d = 0; d < D; ++d) {
                if (d == local) continue;
                for (int s = 0; s < S; ++s) {
                    Units v = sol.y_at(sc, d, u, s, t);
                    down += v * sc.services[s].l_down;
                    up += v * sc.services[s].l_up;
                }
            }
            if (local >= 0) {
                for (int m = 0; m < U; ++m) {
                    if (m == u) continue;
                    for (int s = 0; s < S; ++s) {
                        Units v = sol.y_at(sc, local, m, s, t);
                        down += v * sc.services[s].l_up;
                        up += v * sc.services[s].l_down;
                    }
                }
            }
            if (down > sc.user_clusters[u].man_down)
                add("man-down", -1, u, -1, t, down - sc.user_clusters[u].man_down);
            if (up > sc.user_clusters[u].man_up)
                add("man-up", -1, u, -1, t, up - sc.user_clusters[u].man_up);
        }
    }

    return out;
}

}  // namespace dcpsp
