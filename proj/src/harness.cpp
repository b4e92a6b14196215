#include "dcpsp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "dcpsp/heuristic.hpp"
#include "dcpsp/solver.hpp"

namespace dcpsp {

using nlohmann::json;

const char* to_string(SolverKind k) {
    switch (k) {
        case SolverKind::Exact: return "exact";
        case SolverKind::Heu1: return "heu1";
        case SolverKind::Heu2: return "heu2";
    }
    return "?";
}

SolverKind solver_kind_from(const std::string& name) {
    if (name == "exact") return SolverKind::Exact;
    if (name == "heu1") return SolverKind::Heu1;
    if (name == "heu2") return SolverKind::Heu2;
    throw InvalidParamsError("unknown solver: " + name);
}

const char* to_string(SweepAxis a) {
    return a == SweepAxis::TimeSlots ? "time-slots" : "locations";
}

void ExperimentConfig::check() const {
    if (axis_values.empty()) throw InvalidParamsError("config: no axis values");
    for (std::size_t i = 0; i + 1 < axis_values.size(); ++i)
        if (axis_values[i] >= axis_values[i + 1])
            throw InvalidParamsError("config: axis values must be strictly increasing");
    for (int v : axis_values)
        if (v < 1) throw InvalidParamsError("config: axis values must be >= 1");
    if (seeds.empty()) throw InvalidParamsError("config: need at least one seed");
    if (solvers.empty()) throw InvalidParamsError("config: need at least one solver");
    if (time_budget_s <= 0) throw InvalidParamsError("config: time budget must be > 0");
    if (rho <= 0 || rho > 1) throw InvalidParamsError("config: rho must be in (0, 1]");
}

namespace {

Scenario instance_for(const ExperimentConfig& cfg, int axis_value, std::uint64_t seed) {
    GeneratorParams p = cfg.base;
    if (cfg.axis == SweepAxis::TimeSlots)
        p.horizon = axis_value;
    else
        p.n_locations = axis_value;
    p.seed = seed;
    return generate(p);
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
        .count();
}

}  // namespace

std::vector<ExperimentResult> run_experiment(const ExperimentConfig& cfg) {
    cfg.check();
    std::vector<ExperimentResult> out;
    for (int axis_value : cfg.axis_values)
        for (std::uint64_t seed : cfg.seeds) {
            Scenario sc = instance_for(cfg, axis_value, seed);
            std::optional<Money> exact_total;
            std::vector<ExperimentResult> batch;
            for (SolverKind k : cfg.solvers) {
                ExperimentResult r;
                r.axis_value = axis_value;
                r.seed = seed;
                r.solver = k;
                Solution sol;
                double t0 = now_ms();
                if (k == SolverKind::Exact) {
                    SolveLimits lim;
                    lim.time_budget_s = cfg.time_budget_s;
                    lim.node_budget = cfg.node_budget;
                    SolveReport rep = solve(sc, lim);
                    sol = rep.solution;
                    r.status = to_string(rep.status);
                    if (rep.status == SolveStatus::Optimal) exact_total = rep.objective;
                } else {
                    Strategy st;
                    st.variant = k == SolverKind::Heu1 ? HeuristicVariant::Heu1
                                                       : HeuristicVariant::Heu2;
                    st.rho = cfg.rho;
                    sol = heuristic_solve(sc, st).solution;
                    r.status = "feasible";
                }
                r.wall_ms = cfg.record_timings ? now_ms() - t0 : 0.0;
                if (!validate(sc, sol).empty())
                    throw Error(std::string("experiment produced an invalid solution (") +
                                to_string(k) + ", axis " + std::to_string(axis_value) +
                                ", seed " + std::to_string(seed) + ")");
                r.cost = evaluate_cost(sc, sol);
                batch.push_back(std::move(r));
            }
            if (exact_total && *exact_total > 0)
                for (auto& r : batch)
                    r.cost_ratio = static_cast<double>(r.cost.total) /
                                   static_cast<double>(*exact_total);
            for (auto& r : batch) out.push_back(std::move(r));
        }
    return out;
}

Stats basic_stats(const std::vector<double>& samples) {
    Stats st;
    st.n = samples.size();
    if (st.n == 0) return st;
    double sum = 0.0;
    for (double v : samples) sum += v;
    st.mean = sum / static_cast<double>(st.n);
    if (st.n < 2) return st;  // ci_half stays NaN
    double ss = 0.0;
    for (double v : samples) ss += (v - st.mean) * (v - st.mean);
    st.stddev = std::sqrt(ss / static_cast<double>(st.n - 1));
    st.ci_half = 1.96 * st.stddev / std::sqrt(static_cast<double>(st.n));
    return st;
}

std::vector<GroupSummary> summarize(const std::vector<ExperimentResult>& results) {
    // stable grouping: first-appearance order of (axis value, solver)
    std::vector<GroupSummary> out;
    std::map<std::pair<int, int>, std::size_t> index;
    std::vector<std::vector<double>> totals, walls, ratios;
    for (const auto& r : results) {
        auto key = std::make_pair(r.axis_value, static_cast<int>(r.solver));
        auto it = index.find(key);
        std::size_t g;
        if (it == index.end()) {
            g = out.size();
            index.emplace(key, g);
            GroupSummary s;
            s.axis_value = r.axis_value;
            s.solver = r.solver;
            out.push_back(s);
            totals.emplace_back();
            walls.emplace_back();
            ratios.emplace_back();
        } else {
            g = it->second;
        }
        totals[g].push_back(static_cast<double>(r.cost.total));
        walls[g].push_back(r.wall_ms);
        if (r.cost_ratio) ratios[g].push_back(*r.cost_ratio);
    }
    for (std::size_t g = 0; g < out.size(); ++g) {
        out[g].total = basic_stats(totals[g]);
        out[g].wall_ms = basic_stats(walls[g]);
        out[g].ratio = basic_stats(ratios[g]);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const GroupSummary& a, const GroupSummary& b) {
                         if (a.axis_value != b.axis_value)
                             return a.axis_value < b.axis_value;
                         return static_cast<int>(a.solver) < static_cast<int>(b.solver);
                     });
    return out;
}

namespace {

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string fmt_or_na(double v, const char* spec) {
    return std::isnan(v) ? "na" : fmt(v, spec);
}

}  // namespace

std::string results_csv(const std::vector<ExperimentResult>& results) {
    std::string out =
        "axis,seed,solver,status,fixed,operational,penalty,migration,hardware,"
        "total,wall_ms,cost_ratio\n";
    for (const auto& r : results) {
        out += std::to_string(r.axis_value) + ',' + std::to_string(r.seed) + ',' +
               to_string(r.solver) + ',' + r.status + ',' +
               std::to_string(r.cost.fixed) + ',' + std::to_string(r.cost.operational) +
               ',' + std::to_string(r.cost.penalty) + ',' +
               std::to_string(r.cost.migration) + ',' + std::to_string(r.cost.hardware) +
               ',' + std::to_string(r.cost.total) + ',' + fmt(r.wall_ms, "%.3f") + ',';
        if (r.cost_ratio) out += fmt(*r.cost_ratio, "%.6f");
        out += '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<GroupSummary>& groups) {
    std::string out =
        "axis,solver,n,mean_total,ci_total,mean_wall_ms,ci_wall_ms,"
        "n_ratio,mean_ratio,ci_ratio\n";
    for (const auto& g : groups) {
        out += std::to_string(g.axis_value) + ',' + to_string(g.solver) + ',' +
               std::to_string(g.total.n) + ',' + fmt(g.total.mean, "%.3f") + ',' +
               fmt_or_na(g.total.ci_half, "%.3f") + ',' + fmt(g.wall_ms.mean, "%.3f") +
               ',' + fmt_or_na(g.wall_ms.ci_half, "%.3f") + ',' +
               std::to_string(g.ratio.n) + ',';
        out += g.ratio.n > 0 ? fmt(g.ratio.mean, "%.6f") : "na";
        out += ',';
        out += g.ratio.n > 0 ? fmt_or_na(g.ratio.ci_half, "%.6f") : "na";
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON bindings

namespace {

void apply_params(GeneratorParams& p, const json& j) {
    auto get_int = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get_int("n_locations", p.n_locations);
    get_int("include_remote_cloud", p.include_remote_cloud);
    get_int("remote_replaces_cloudlet", p.remote_replaces_cloudlet);
    get_int("n_services", p.n_services);
    get_int("horizon", p.horizon);
    get_int("qos_attr_count", p.qos_attr_count);
    get_int("seed", p.seed);
    get_int("kmax_low", p.kmax_low);
    get_int("kmax_high", p.kmax_high);
    get_int("routers_low", p.routers_low);
    get_int("routers_high", p.routers_high);
    get_int("lan_per_router", p.lan_per_router);
    get_int("man_bandwidth", p.man_bandwidth);
    get_int("c_hw", p.c_hw);
    get_int("remote_premium", p.remote_premium);
    get_int("latency_local", p.latency_local);
    get_int("latency_man", p.latency_man);
    get_int("latency_remote", p.latency_remote);
    get_int("demand_amplitude_max", p.demand_amplitude_max);
    get_int("demand_noise_max", p.demand_noise_max);
    get_int("demand_extra", p.demand_extra);
    get_int("demand_cap", p.demand_cap);
}

json parse_doc(const std::string& bytes, const char* what) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + " parse error: " + e.what());
    }
}

}  // namespace

GeneratorParams params_from_json(const std::string& bytes) {
    json j = parse_doc(bytes, "params");
    GeneratorParams p;
    try {
        apply_params(p, j);
    } catch (const json::exception& e) {
        throw InvalidParamsError(std::string("params field error: ") + e.what());
    }
    return p;
}

ExperimentConfig config_from_json(const std::string& bytes) {
    json j = parse_doc(bytes, "config");
    ExperimentConfig cfg;
    try {
        std::string axis = j.at("axis").get<std::string>();
        if (axis == "time-slots")
            cfg.axis = SweepAxis::TimeSlots;
        else if (axis == "locations")
            cfg.axis = SweepAxis::Locations;
        else
            throw InvalidParamsError("config: unknown axis '" + axis + "'");
        cfg.axis_values = j.at("axis_values").get<std::vector<int>>();
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        for (const auto& s : j.at("solvers"))
            cfg.solvers.push_back(solver_kind_from(s.get<std::string>()));
        if (j.contains("time_budget_s"))
            cfg.time_budget_s = j.at("time_budget_s").get<double>();
        if (j.contains("node_budget"))
            cfg.node_budget = j.at("node_budget").get<long long>();
        if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
        if (j.contains("record_timings"))
            cfg.record_timings = j.at("record_timings").get<bool>();
        if (j.contains("params")) apply_params(cfg.base, j.at("params"));
    } catch (const json::exception& e) {
        throw InvalidParamsError(std::string("config field error: ") + e.what());
    }
    cfg.check();
    return cfg;
}

// ---------------------------------------------------------------------------
// solution files

std::string write_solution(const Scenario& sc, const Solution& sol) {
    detail::check_dimensions(sc, sol);
    json j;
    j["format_version"] = 1;
    j["x"] = json::array();
    j["z"] = json::array();
    for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
        j["x"].push_back(static_cast<int>(sol.x[d]));
        j["z"].push_back(sol.z[d]);
    }
    json y = json::array();
    for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
        json per_d = json::array();
        for (std::size_t u = 0; u < sc.num_clusters(); ++u) {
            json per_u = json::array();
            for (std::size_t s = 0; s < sc.num_services(); ++s) {
                json per_s = json::array();
                for (int t = 0; t < sc.horizon; ++t)
                    per_s.push_back(sol.y_at(sc, d, u, s, t));
                per_u.push_back(per_s);
            }
            per_d.push_back(per_u);
        }
        y.push_back(per_d);
    }
    j["y"] = y;
    json pen = json::array();
    for (std::size_t u = 0; u < sc.num_clusters(); ++u) {
        json per_u = json::array();
        for (std::size_t s = 0; s < sc.num_services(); ++s) {
            json per_s = json::array();
            for (int t = 0; t < sc.horizon; ++t) per_s.push_back(sol.pen_at(sc, u, s, t));
            per_u.push_back(per_s);
        }
        pen.push_back(per_u);
    }
    j["y_pen"] = pen;
    return j.dump(2) + "\n";
}

Solution read_solution(const Scenario& sc, const std::string& bytes) {
    json j = parse_doc(bytes, "solution");
    try {
        Solution sol = Solution::zeros(sc);
        const auto& jx = j.at("x");
        const auto& jz = j.at("z");
        const auto& jy = j.at("y");
        const auto& jp = j.at("y_pen");
        if (jx.size() != sc.num_dcs() || jz.size() != sc.num_dcs() ||
            jy.size() != sc.num_dcs() || jp.size() != sc.num_clusters())
            throw InvalidReferenceError("solution: dimensions do not match the scenario");
        for (std::size_t d = 0; d < sc.num_dcs(); ++d) {
            sol.x[d] = static_cast<std::uint8_t>(jx[d].get<int>());
            sol.z[d] = jz[d].get<Units>();
            for (std::size_t u = 0; u < sc.num_clusters(); ++u)
                for (std::size_t s = 0; s < sc.num_services(); ++s)
                    for (int t = 0; t < sc.horizon; ++t)
                        sol.y_at(sc, d, u, s, t) = jy.at(d).at(u).at(s).at(t).get<Units>();
        }
        for (std::size_t u = 0; u < sc.num_clusters(); ++u)
            for (std::size_t s = 0; s < sc.num_services(); ++s)
                for (int t = 0; t < sc.horizon; ++t)
                    sol.pen_at(sc, u, s, t) = jp.at(u).at(s).at(t).get<Units>();
        return sol;
    } catch (const json::exception& e) {
        throw InvalidReferenceError(std::string("solution field error: ") + e.what());
    }
}

}  // namespace dcpsp
