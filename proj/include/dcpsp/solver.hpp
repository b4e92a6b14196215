#ifndef DCPSP_SOLVER_HPP
#define DCPSP_SOLVER_HPP

#include <cstdint>

#include "dcpsp/milp.hpp"
#include "dcpsp/model.hpp"

namespace dcpsp {

struct SolveLimits {
    double time_budget_s = 60.0;
    long long node_budget = 5'000'000;
};

enum class SolveStatus { Optimal, FeasibleBoundGap, TimeLimit, Infeasible };

const char* to_string(SolveStatus s);

struct SolveReport {
    Solution solution;
    Money objective = 0;
    SolveStatus status = SolveStatus::Infeasible;
    long long nodes = 0;
    double wall_s = 0.0;
    Money best_bound = 0;
    // MILP migration variables at the reported solution (canonical: equal to
    // compute_migrations on the y tensor); empty for brute force.
    std::vector<Units> y_mig;
};

// Branch and bound over the linearized MILP: depth/best-first on the LP
// relaxation bound, branching x before z before y on the most fractional
// variable, seeded with the greedy incumbent.
SolveReport solve(const Scenario& sc, const MilpModel& milp, const SolveLimits& limits = {});
SolveReport solve(const Scenario& sc, const SolveLimits& limits = {});

struct SizeGuardError : Error {
    using Error::Error;
};

// Independent oracle: exhaustive enumeration of per-slot assignment states,
// scored through evaluate_cost. Refuses instances whose state space exceeds
// the guard.
SolveReport brute_force(const Scenario& sc, std::uint64_t guard = 20'000'000);

}  // namespace dcpsp

#endif
