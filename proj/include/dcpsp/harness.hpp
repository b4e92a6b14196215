#ifndef DCPSP_HARNESS_HPP
#define DCPSP_HARNESS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dcpsp/model.hpp"
#include "dcpsp/scenario.hpp"

namespace dcpsp {

enum class SolverKind { Exact, Heu1, Heu2 };
const char* to_string(SolverKind k);
SolverKind solver_kind_from(const std::string& name);

enum class SweepAxis { TimeSlots, Locations };
const char* to_string(SweepAxis a);

struct ExperimentConfig {
    SweepAxis axis = SweepAxis::TimeSlots;
    std::vector<int> axis_values;           // strictly increasing
    std::vector<std::uint64_t> seeds;       // one run per (axis value, seed)
    std::vector<SolverKind> solvers;
    GeneratorParams base;                   // axis/seed fields overridden per run
    double time_budget_s = 60.0;
    long long node_budget = 5'000'000;
    double rho = 0.8;                       // heu2 budget fraction
    bool record_timings = true;             // false zeroes wall_ms for byte-stable CSVs

    void check() const;
};

struct ExperimentResult {
    int axis_value = 0;
    std::uint64_t seed = 0;
    SolverKind solver = SolverKind::Exact;
    std::string status;
    CostBreakdown cost;
    double wall_ms = 0.0;
    // total / exact total; absent when the exact run is missing or not optimal
    std::optional<double> cost_ratio;
};

// Generates one scenario per (axis value, seed), runs every requested solver
// under the budget, validates each solution, and returns rows ordered by
// (axis, seed, solver). A validation failure is a contract breach and throws.
std::vector<ExperimentResult> run_experiment(const ExperimentConfig& config);

struct Stats {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    // half-width of the 95% normal-approximation interval; NaN when n < 2
    double ci_half = std::numeric_limits<double>::quiet_NaN();
};

Stats basic_stats(const std::vector<double>& samples);

struct GroupSummary {
    int axis_value = 0;
    SolverKind solver = SolverKind::Exact;
    Stats total;    // cost totals, milli money units
    Stats wall_ms;
    Stats ratio;    // over the rows that carry a ratio
};

std::vector<GroupSummary> summarize(const std::vector<ExperimentResult>& results);

// CSV with header axis,seed,solver,status,fixed,operational,penalty,migration,
// hardware,total,wall_ms,cost_ratio; UTF-8, LF, '.' decimal point.
std::string results_csv(const std::vector<ExperimentResult>& results);
std::string summary_csv(const std::vector<GroupSummary>& groups);

enum class ChartKind { RuntimeLog, CostRatio };

// Standalone SVG; one polyline per solver with 95% CI error bars. The runtime
// chart uses a log10 ordinate with ticks at decades.
std::string emit_chart(const std::vector<GroupSummary>& groups, ChartKind kind);

// JSON bindings for CLI inputs.
ExperimentConfig config_from_json(const std::string& bytes);
GeneratorParams params_from_json(const std::string& bytes);

// Solution files: a single JSON document carrying x, z, y, y_pen in declared
// id order; read_solution checks dimensions against the scenario.
std::string write_solution(const Scenario& sc, const Solution& sol);
Solution read_solution(const Scenario& sc, const std::string& bytes);

}  // namespace dcpsp

#endif
