#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "dcpsp/solver.hpp"

namespace dcpsp {

namespace {

// One candidate per-slot assignment matrix y[d][u][s], with the per-DC loads
// and per-(u,s) totals cached for costing and migration counting.
struct SlotCandidate {
    std::vector<Units> y;       // [d][u][s]
    std::vector<Units> load;    // [d]
    std::vector<Units> served;  // [u][s]
};

struct Enumerator {
    const Scenario& sc;
    std::uint64_t cap;
    std::vector<SlotCandidate> out;
    std::vector<Units> y, load, served;
    std::vector<Mbps> lan_down, lan_up, man_down, man_up;

    Enumerator(const Scenario& s, std::uint64_t cap_) : sc(s), cap(cap_) {
        const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
        y.assign(D * U * S, 0);
        load.assign(D, 0);
        served.assign(U * S, 0);
        lan_down.resize(U);
        lan_up.resize(U);
        man_down.resize(U);
        man_up.resize(U);
        for (std::size_t u = 0; u < U; ++u) {
            lan_down[u] = sc.user_clusters[u].lan_down;
            lan_up[u] = sc.user_clusters[u].lan_up;
            man_down[u] = sc.user_clusters[u].man_down;
            man_up[u] = sc.user_clusters[u].man_up;
        }
    }

    // Highest value the cell (d,u,s) can take under every slot-local cap.
    Units cell_limit(std::size_t d, std::size_t u, std::size_t s) const {
        if (!eligibility(sc, d, u, s)) return 0;
        const Service& sv = sc.services[s];
        Units lim = sc.data_centers[d].k_max - load[d];
        if (sv.l_down > 0) lim = std::min(lim, lan_down[u] / sv.l_down);
        if (sv.l_up > 0) lim = std::min(lim, lan_up[u] / sv.l_up);
        if (static_cast<int>(d) != sc.local_cloudlet_of(u)) {
            if (sv.l_down > 0) lim = std::min(lim, man_down[u] / sv.l_down);
            if (sv.l_up > 0) lim = std::min(lim, man_up[u] / sv.l_up);
            const auto& home = sc.data_centers[d].home_cluster;
            if (home) {
                std::size_t h = sc.cluster_index(*home);
                if (sv.l_up > 0) lim = std::min(lim, man_down[h] / sv.l_up);
                if (sv.l_down > 0) lim = std::min(lim, man_up[h] / sv.l_down);
            }
        }
        return std::max<Units>(lim, 0);
    }

    void adjust(std::size_t d, std::size_t u, std::size_t s, Units delta) {
        const Service& sv = sc.services[s];
        load[d] += delta;
        served[u * sc.num_services() + s] += delta;
        lan_down[u] -= delta * sv.l_down;
        lan_up[u] -= delta * sv.l_up;
        if (static_cast<int>(d) != sc.local_cloudlet_of(u)) {
            man_down[u] -= delta * sv.l_down;
            man_up[u] -= delta * sv.l_up;
            const auto& home = sc.data_centers[d].home_cluster;
            if (home) {
                std::size_t h = sc.cluster_index(*home);
                man_down[h] -= delta * sv.l_up;
                man_up[h] -= delta * sv.l_down;
            }
        }
    }

    void run(std::size_t cell) {
        const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
        if (cell == D * U * S) {
            if (out.size() >= cap)
                throw SizeGuardError("assignment state space exceeds the size guard");
            out.push_back({y, load, served});
            return;
        }
        std::size_t d = cell / (U * S), u = (cell / S) % U, s = cell % S;
        Units lim = cell_limit(d, u, s);
        for (Units v = 0; v <= lim; ++v) {
            y[cell] = v;
            adjust(d, u, s, v);
            run(cell + 1);
            adjust(d, u, s, -v);
        }
        y[cell] = 0;
    }
};

}  // namespace

SolveReport brute_force(const Scenario& sc, std::uint64_t guard) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
    const int T = sc.horizon;

    Enumerator en(sc, guard);
    en.run(0);
    const auto& states = en.out;
    const std::size_t n = states.size();

    // total DFS work is about n^T paths
    double paths = std::pow(static_cast<double>(n), T);
    if (paths > static_cast<double>(guard))
        throw SizeGuardError("assignment state space exceeds the size guard");

    // slot-local cost (operational + canonical penalty) of each state
    std::vector<std::vector<Money>> slot_cost(T, std::vector<Money>(n, 0));
    std::vector<std::vector<std::size_t>> order(T);
    for (int t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            Money c = 0;
            for (std::size_t d = 0; d < D; ++d)
                c += states[i].load[d] * sc.data_centers[d].c_op[t];
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t s = 0; s < S; ++s) {
                    Units open = sc.demand_at(u, s, t) - states[i].served[u * S + s];
                    if (open > 0) c += open * sc.penalty(u, s);
                }
            slot_cost[t][i] = c;
        }
        order[t].resize(n);
        std::iota(order[t].begin(), order[t].end(), std::size_t{0});
        std::stable_sort(order[t].begin(), order[t].end(),
                         [&](std::size_t a, std::size_t b) {
                             return slot_cost[t][a] < slot_cost[t][b];
                         });
    }

    // fixed + hardware cost once the per-DC peak loads are known
    auto hw_cost = [&](const std::vector<Units>& peak) {
        Money c = 0;
        for (std::size_t d = 0; d < D; ++d)
            if (peak[d] > 0)
                c += sc.data_centers[d].c_fix +
                     sc.data_centers[d].c_hw *
                         std::max(peak[d], sc.data_centers[d].k_min);
        return c;
    };

    Money best = std::numeric_limits<Money>::max();
    std::vector<std::size_t> best_path, path(T);
    long long nodes = 0;

    // depth-first over slots; partial cost plus the hardware cost of the
    // peaks seen so far is a valid lower bound, so it prunes
    std::vector<Units> peak(D, 0);
    auto dfs = [&](auto&& self, int t, Money acc) -> void {
        if (acc + hw_cost(peak) >= best) return;
        if (t == T) {
            best = acc + hw_cost(peak);
            best_path = path;
            return;
        }
        for (std::size_t i : order[t]) {
            ++nodes;
            Money c = acc + slot_cost[t][i];
            if (t > 0) {
                const auto& prev = states[path[t - 1]];
                const auto& cur = states[i];
                for (std::size_t u = 0; u < U && c < best; ++u)
                    for (std::size_t s = 0; s < S; ++s) {
                        std::vector<Units> yp(D), yc(D);
                        for (std::size_t d = 0; d < D; ++d) {
                            yp[d] = prev.y[(d * U + u) * S + s];
                            yc[d] = cur.y[(d * U + u) * S + s];
                        }
                        auto mig = compute_migrations(yp, yc);
                        Units total = std::accumulate(mig.begin(), mig.end(), Units{0});
                        c += total * sc.services[s].c_mig;
                    }
            }
            if (c >= best) continue;
            std::vector<Units> saved = peak;
            for (std::size_t d = 0; d < D; ++d)
                peak[d] = std::max(peak[d], states[i].load[d]);
            path[t] = i;
            self(self, t + 1, c);
            peak = saved;
        }
    };
    dfs(dfs, 0, 0);

    SolveReport rep;
    rep.nodes = nodes;
    if (best == std::numeric_limits<Money>::max()) {  // cannot happen: all-zero state exists
        rep.status = SolveStatus::Infeasible;
        return rep;
    }

    Solution sol = Solution::zeros(sc);
    std::vector<Units> final_peak(D, 0);
    for (int t = 0; t < T; ++t) {
        const auto& st = states[best_path[t]];
        for (std::size_t d = 0; d < D; ++d) {
            final_peak[d] = std::max(final_peak[d], st.load[d]);
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t s = 0; s < S; ++s)
                    sol.y_at(sc, d, u, s, t) = st.y[(d * U + u) * S + s];
        }
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t s = 0; s < S; ++s) {
                Units open = sc.demand_at(u, s, t) - st.served[u * S + s];
                sol.pen_at(sc, u, s, t) = std::max<Units>(open, 0);
            }
    }
    for (std::size_t d = 0; d < D; ++d)
        if (final_peak[d] > 0) {
            sol.x[d] = 1;
            sol.z[d] = std::max(final_peak[d], sc.data_centers[d].k_min);
        }

    rep.solution = std::move(sol);
    rep.objective = evaluate_cost(sc, rep.solution).total;
    rep.status = SolveStatus::Optimal;
    rep.best_bound = rep.objective;
    rep.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace dcpsp
