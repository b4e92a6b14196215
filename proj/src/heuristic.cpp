#include "dcpsp/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dcpsp {

namespace heuristic_detail {

namespace {

// Index of the latency-like attribute used for tie-breaking, or -1.
int latency_attr(const Scenario& sc) {
    for (std::size_t a = 0; a < sc.num_attrs(); ++a)
        if (sc.qos_attributes[a].id == "latency") return static_cast<int>(a);
    for (std::size_t a = 0; a < sc.num_attrs(); ++a)
        if (sc.qos_attributes[a].direction == QosDirection::LowerIsBetter)
            return static_cast<int>(a);
    return -1;
}

double latency_requirement(const Scenario& sc, std::size_t s) {
    int a = latency_attr(sc);
    if (a < 0) return 0.0;
    const auto& attr = sc.qos_attributes[a].id;
    for (const auto& req : sc.services[s].qos_req)
        if (req.attribute == attr) return req.value;
    return std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<int> service_priority(const Scenario& sc) {
    std::vector<int> order(sc.num_services());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return latency_requirement(sc, a) < latency_requirement(sc, b);
    });
    return order;
}

SlotState make_state(const Scenario& sc, int slot, const Strategy& strategy, Units cap) {
    SlotState st;
    st.sc = &sc;
    st.slot = slot;
    st.capped = strategy.variant == HeuristicVariant::Heu2;
    st.cap = cap;

    const std::size_t U = sc.num_clusters(), S = sc.num_services(), D = sc.num_dcs();
    st.residual_demand.resize(U * S);
    st.pending.assign(U * S, 0);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < S; ++s) {
            Units v = sc.demand_at(u, s, slot);
            st.res_demand(u, s) = v;
            st.pending[u * S + s] = v > 0;
        }
    st.residual_capacity.resize(D);
    for (std::size_t d = 0; d < D; ++d) st.residual_capacity[d] = sc.data_centers[d].k_max;
    st.open_dcs.assign(D, 0);
    st.lan_down.resize(U);
    st.lan_up.resize(U);
    st.man_down.resize(U);
    st.man_up.resize(U);
    for (std::size_t u = 0; u < U; ++u) {
        st.lan_down[u] = sc.user_clusters[u].lan_down;
        st.lan_up[u] = sc.user_clusters[u].lan_up;
        st.man_down[u] = sc.user_clusters[u].man_down;
        st.man_up[u] = sc.user_clusters[u].man_up;
    }
    return st;
}

std::pair<int, int> select_service_demand(const SlotState& st) {
    const Scenario& sc = *st.sc;
    const std::size_t S = sc.num_services();
    auto order = service_priority(sc);
    std::vector<int> rank(S);
    for (std::size_t i = 0; i < S; ++i) rank[order[i]] = static_cast<int>(i);

    int best_u = -1, best_s = -1;
    for (std::size_t u = 0; u < sc.num_clusters(); ++u)
        for (std::size_t s = 0; s < S; ++s) {
            if (!st.pending[u * S + s]) continue;
            if (best_u < 0) {
                best_u = static_cast<int>(u);
                best_s = static_cast<int>(s);
                continue;
            }
            Units rv = st.residual_demand[u * S + s];
            Units bv = st.residual_demand[best_u * S + best_s];
            int rs = rank[s], bs = rank[best_s];
            // strictest class first, then largest residual, then lowest u
            if (rs < bs || (rs == bs && rv > bv)) {
                best_u = static_cast<int>(u);
                best_s = static_cast<int>(s);
            }
        }
    return {best_u, best_s};
}

Units calc_lot_size(const SlotState& st, int d, int u, int s) {
    const Scenario& sc = *st.sc;
    const Service& sv = sc.services[s];
    const std::size_t S = sc.num_services();

    Units lot = std::min(st.residual_demand[u * S + s], st.residual_capacity[d]);
    if (sv.l_down > 0) lot = std::min(lot, st.lan_down[u] / sv.l_down);
    if (sv.l_up > 0) lot = std::min(lot, st.lan_up[u] / sv.l_up);

    if (d != sc.local_cloudlet_of(u)) {
        if (sv.l_down > 0) lot = std::min(lot, st.man_down[u] / sv.l_down);
        if (sv.l_up > 0) lot = std::min(lot, st.man_up[u] / sv.l_up);
        // a cloudlet serving another cluster also consumes MAN bandwidth at
        // its home cluster, mirrored in direction
        const auto& home = sc.data_centers[d].home_cluster;
        if (home) {
            int h = sc.cluster_index(*home);
            if (sv.l_up > 0) lot = std::min(lot, st.man_down[h] / sv.l_up);
            if (sv.l_down > 0) lot = std::min(lot, st.man_up[h] / sv.l_down);
        }
    }
    if (st.capped && sc.data_centers[d].kind == DataCenterKind::Cloudlet)
        lot = std::min(lot, st.cap - st.cap_used);
    return std::max<Units>(lot, 0);
}

int select_data_center(const SlotState& st, int u, int s) {
    const Scenario& sc = *st.sc;
    const int T = sc.horizon;
    const int lat = latency_attr(sc);
    const int local = sc.local_cloudlet_of(u);
    const std::size_t S = sc.num_services();

    int best = -1;
    double best_score = 0.0, best_lat = 0.0;
    for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
        if (!eligibility(sc, d, u, s)) continue;
        if (st.residual_capacity[d] <= 0) continue;
        if (st.capped && sc.data_centers[d].kind == DataCenterKind::Cloudlet &&
            st.cap_used >= st.cap)
            continue;
        if (calc_lot_size(st, static_cast<int>(d), u, s) <= 0) continue;

        const DataCenter& dc = sc.data_centers[d];
        double op = 0.0;
        for (int t = st.slot; t < T; ++t) op += static_cast<double>(dc.c_op[t]);
        double score = op / (T - st.slot);
        if (!st.open_dcs[d]) {
            // amortize activation over the units this pick could place
            double expected = static_cast<double>(
                std::min(st.residual_demand[u * S + s], st.residual_capacity[d]));
            score += (static_cast<double>(dc.c_fix) +
                      static_cast<double>(dc.c_hw) * expected) /
                     expected;
        }
        double dl = lat >= 0 ? sc.guarantee(d, u, lat) : 0.0;
        bool better = false;
        if (best < 0 || score < best_score - 1e-6) {
            better = true;
        } else if (score < best_score + 1e-6) {
            // ties: local cloudlet, then lowest latency, then lowest id
            bool best_is_local = best == local;
            bool d_is_local = static_cast<int>(d) == local;
            if (d_is_local && !best_is_local)
                better = true;
            else if (d_is_local == best_is_local && dl < best_lat)
                better = true;
        }
        if (better) {
            best = static_cast<int>(d);
            best_score = score;
            best_lat = dl;
        }
    }
    return best;
}

void apply_assignment(SlotState& st, int d, int u, int s, Units lot) {
    const Scenario& sc = *st.sc;
    const Service& sv = sc.services[s];
    const std::size_t S = sc.num_services();

    st.residual_demand[u * S + s] -= lot;
    st.residual_capacity[d] -= lot;
    st.lan_down[u] -= lot * sv.l_down;
    st.lan_up[u] -= lot * sv.l_up;
    if (d != sc.local_cloudlet_of(u)) {
        st.man_down[u] -= lot * sv.l_down;
        st.man_up[u] -= lot * sv.l_up;
        const auto& home = sc.data_centers[d].home_cluster;
        if (home) {
            int h = sc.cluster_index(*home);
            st.man_down[h] -= lot * sv.l_up;
            st.man_up[h] -= lot * sv.l_down;
        }
    }
    if (st.capped && sc.data_centers[d].kind == DataCenterKind::Cloudlet)
        st.cap_used += lot;
    st.open_dcs[d] = 1;
    if (st.residual_demand[u * S + s] == 0) st.pending[u * S + s] = 0;
}

}  // namespace heuristic_detail

Units heu2_cap(const Scenario& sc, double rho) {
    if (rho <= 0.0 || rho > 1.0) throw InvalidParamsError("rho must be in (0, 1]");
    Units total = std::accumulate(sc.demand.begin(), sc.demand.end(), Units{0});
    double mean = static_cast<double>(total) / sc.horizon;
    return static_cast<Units>(std::ceil(rho * mean - 1e-9));
}

HeuristicResult heuristic_solve(const Scenario& sc, const Strategy& strategy) {
    using namespace heuristic_detail;
    const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
    const int T = sc.horizon;

    Units cap = strategy.variant == HeuristicVariant::Heu2 ? heu2_cap(sc, strategy.rho) : 0;
    Solution sol = Solution::zeros(sc);
    std::vector<char> opened(D, 0);  // across slots: activation charged once
    auto order = service_priority(sc);

    for (int t = 0; t < T; ++t) {
        SlotState st = make_state(sc, t, strategy, cap);
        st.open_dcs = opened;

        // carry over the previous slot's placements for the two strictest
        // classes, truncated to current demand, capacity, and bandwidth
        if (t > 0) {
            for (std::size_t i = 0; i < std::min<std::size_t>(2, S); ++i) {
                int s = order[i];
                for (std::size_t u = 0; u < U; ++u)
                    for (std::size_t d = 0; d < D; ++d) {
                        Units prev = sol.y_at(sc, d, u, s, t - 1);
                        if (prev <= 0) continue;
                        Units lot = std::min(
                            prev, calc_lot_size(st, static_cast<int>(d),
                                                static_cast<int>(u), s));
                        if (lot <= 0) continue;
                        apply_assignment(st, static_cast<int>(d),
                                         static_cast<int>(u), s, lot);
                        sol.y_at(sc, d, u, s, t) += lot;
                    }
            }
        }

        // open-demand loop: strictest class first, cheapest supply
        while (true) {
            auto [u, s] = select_service_demand(st);
            if (u < 0) break;
            int d = select_data_center(st, u, s);
            if (d < 0) {
                st.pending[u * S + s] = 0;  // no supply; residual is penalized
                continue;
            }
            Units lot = calc_lot_size(st, d, u, s);
            apply_assignment(st, d, u, s, lot);
            sol.y_at(sc, d, u, s, t) += lot;
        }

        for (std::size_t d = 0; d < D; ++d)
            if (st.open_dcs[d]) opened[d] = 1;
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t s = 0; s < S; ++s)
                sol.pen_at(sc, u, s, t) = st.residual_demand[u * S + s];
    }

    // one z per data center couples the slots: size to the peak
    for (std::size_t d = 0; d < D; ++d) {
        Units peak = 0;
        for (int t = 0; t < T; ++t) {
            Units load = 0;
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t s = 0; s < S; ++s) load += sol.y_at(sc, d, u, s, t);
            peak = std::max(peak, load);
        }
        if (peak > 0) {
            sol.x[d] = 1;
            sol.z[d] = std::max(peak, sc.data_centers[d].k_min);
        }
    }

    return {sol, evaluate_cost(sc, sol)};
}

}  // namespace dcpsp
