#ifndef DCPSP_HEURISTIC_HPP
#define DCPSP_HEURISTIC_HPP

#include <utility>
#include <vector>

#include "dcpsp/model.hpp"

namespace dcpsp {

enum class HeuristicVariant { Heu1, Heu2 };

struct Strategy {
    HeuristicVariant variant = HeuristicVariant::Heu1;
    double rho = 0.8;  // cloudlet cap fraction, HEU2 only
};

struct HeuristicResult {
    Solution solution;
    CostBreakdown cost;
};

// Greedy multi-period assignment: per slot, transfer the previous slot's
// placements for the two strictest service classes, then assign open demand
// by priority to the cheapest permitted supply. HEU2 additionally caps the
// units cloudlets may provide per slot.
HeuristicResult heuristic_solve(const Scenario& sc, const Strategy& strategy = {});

// Per-slot cloudlet budget for HEU2: ceil(rho * mean aggregate demand).
Units heu2_cap(const Scenario& sc, double rho);

namespace heuristic_detail {

// Working state for one slot; exposed for targeted tests.
struct SlotState {
    const Scenario* sc = nullptr;
    std::vector<Units> residual_demand;   // [u][s]
    std::vector<Units> residual_capacity; // [d]
    std::vector<Mbps> lan_down, lan_up, man_down, man_up;  // [u]
    std::vector<char> pending;            // [u][s], still in the work list
    std::vector<char> open_dcs;           // [d]
    bool capped = false;                  // HEU2
    Units cap = 0;
    Units cap_used = 0;
    int slot = 0;

    Units& res_demand(std::size_t u, std::size_t s) {
        return residual_demand[u * sc->num_services() + s];
    }
};

SlotState make_state(const Scenario& sc, int slot, const Strategy& strategy, Units cap);

// Service-class rank: strictest latency requirement first, then declared
// order. Classes with rank < 2 carry assignments across slots.
std::vector<int> service_priority(const Scenario& sc);

// (u, s) choice: strictest class, then largest residual, then lowest id.
std::pair<int, int> select_service_demand(const SlotState& st);

// Cheapest permitted supply by estimated marginal cost; -1 when no supply.
int select_data_center(const SlotState& st, int u, int s);

// Largest lot the residual demand, capacity, and network admit.
Units calc_lot_size(const SlotState& st, int d, int u, int s);

void apply_assignment(SlotState& st, int d, int u, int s, Units lot);

}  // namespace heuristic_detail

}  // namespace dcpsp

#endif
