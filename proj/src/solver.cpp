#include "dcpsp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "dcpsp/heuristic.hpp"
#include "dcpsp/rng.hpp"
#include "dcpsp/simplex.hpp"

namespace dcpsp {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleBoundGap: return "feasible-bound-gap";
        case SolveStatus::TimeLimit: return "time-limit";
        case SolveStatus::Infeasible: return "infeasible";
    }
    return "?";
}

namespace {

constexpr double kIntTol = 1e-6;

// Rows normalized to <= for presolve and the LP core.
struct NormRow {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
};

int role_priority(VarRole r) {
    switch (r) {
        case VarRole::X: return 0;
        case VarRole::Z: return 1;
        case VarRole::Delta: return 5;
        case VarRole::Y: return 2;
        case VarRole::YPen: return 3;
        case VarRole::YMig: return 4;
    }
    return 6;
}

// Conservative integer floor of an LP objective value: rounding down keeps
// pruning sound under LP tolerances.
Money bound_to_money(double v) {
    double slack = 2e-8 * std::max(1.0, std::fabs(v)) + 0.5;
    return static_cast<Money>(std::ceil(v - slack));
}

// Uncovered demand must be either penalized or served at no less than the
// cheapest eligible operational rate; everything else costs >= 0.
Money combinatorial_bound(const Scenario& sc) {
    Money total = 0;
    for (std::size_t u = 0; u < sc.num_clusters(); ++u)
        for (std::size_t s = 0; s < sc.num_services(); ++s)
            for (int t = 0; t < sc.horizon; ++t) {
                Units v = sc.demand_at(u, s, t);
                if (v == 0) continue;
                Money per = sc.penalty(u, s);
                for (std::size_t d = 0; d < sc.num_dcs(); ++d)
                    if (eligibility(sc, d, u, s))
                        per = std::min(per, sc.data_centers[d].c_op[t]);
                total += v * per;
            }
    return total;
}

struct Incumbent {
    bool found = false;
    Money total = std::numeric_limits<Money>::max();
    Solution sol;
};

// Canonicalizes a rounded integral assignment into a Solution (minimal
// y_pen) and offers it as an incumbent.
bool offer_candidate(const Scenario& sc, const MilpModel& m,
                     const std::vector<double>& val, Incumbent& inc) {
    Solution sol = Solution::zeros(sc);
    const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
    for (std::size_t d = 0; d < D; ++d) {
        sol.x[d] = static_cast<std::uint8_t>(std::llround(val[m.x_var(d)]));
        sol.z[d] = std::llround(val[m.z_var(d)]);
    }
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < S; ++s)
            for (int t = 0; t < sc.horizon; ++t) {
                Units served = 0;
                for (std::size_t d = 0; d < D; ++d) {
                    Units y = std::llround(val[m.y_var(d, u, s, t)]);
                    sol.y_at(sc, d, u, s, t) = y;
                    served += y;
                }
                sol.pen_at(sc, u, s, t) =
                    std::max<Units>(sc.demand_at(u, s, t) - served, 0);
            }
    if (!validate(sc, sol).empty()) return false;
    Money total = evaluate_cost(sc, sol).total;
    if (total < inc.total) {
        inc.found = true;
        inc.total = total;
        inc.sol = std::move(sol);
    }
    return true;
}

void seed_incumbent(const Scenario& sc, Incumbent& inc) {
    Solution pen = Solution::all_penalty(sc);
    inc.found = true;
    inc.sol = pen;
    inc.total = evaluate_cost(sc, pen).total;

    auto heu = heuristic_solve(sc, {HeuristicVariant::Heu1, 0.8});
    if (validate(sc, heu.solution).empty() && heu.cost.total < inc.total) {
        inc.sol = std::move(heu.solution);
        inc.total = heu.cost.total;
    }
}

// Migration counts implied by the y tensor, laid out like the model's
// migration variables.
std::vector<Units> canonical_migrations(const Scenario& sc, const MilpModel& m,
                                        const Solution& sol) {
    const std::size_t D = sc.num_dcs(), U = sc.num_clusters(), S = sc.num_services();
    const int T = sc.horizon;
    std::vector<Units> out(D * U * S * std::max(T - 1, 0), 0);
    if (T < 2) return out;
    const int base = m.mig_var(0, 0, 0, 1);
    std::vector<Units> prev(D), cur(D);
    for (std::size_t u = 0; u < U; ++u)
        for (std::size_t s = 0; s < S; ++s)
            for (int t = 1; t < T; ++t) {
                for (std::size_t d = 0; d < D; ++d) {
                    prev[d] = sol.y_at(sc, d, u, s, t - 1);
                    cur[d] = sol.y_at(sc, d, u, s, t);
                }
                auto mig = compute_migrations(prev, cur);
                for (std::size_t d = 0; d < D; ++d)
                    out[m.mig_var(static_cast<int>(d), static_cast<int>(u),
                                  static_cast<int>(s), t) -
                        base] = mig[d];
            }
    return out;
}

struct Node {
    double bound = 0.0;
    int parent = -1;
    int var = -1;          // free-variable index the parent branched on
    double value = 0.0;    // new bound value
    bool is_ub = false;
};

}  // namespace

SolveReport solve(const Scenario& sc, const MilpModel& m, const SolveLimits& limits) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    const int NV = static_cast<int>(m.variables.size());
    std::vector<double> lb(NV), ub(NV);
    for (int j = 0; j < NV; ++j) {
        lb[j] = m.variables[j].lb;
        ub[j] = m.variables[j].ub;
    }

    // normalize all rows to <=
    std::vector<NormRow> rows(m.constraints.size());
    for (std::size_t r = 0; r < m.constraints.size(); ++r) {
        double sign = m.constraints[r].rel == Relation::Ge ? -1.0 : 1.0;
        rows[r].rhs = sign * m.constraints[r].rhs;
        rows[r].terms.reserve(m.constraints[r].terms.size());
        for (const auto& [j, a] : m.constraints[r].terms)
            rows[r].terms.emplace_back(j, sign * a);
    }

    SolveReport rep;

    // root presolve: drop rows no bound combination can violate, round
    // activity-implied bounds to integers; sound under branching because
    // node bounds only ever tighten
    std::vector<char> active(rows.size(), 1);
    for (int pass = 0; pass < 10; ++pass) {
        bool changed = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!active[r]) continue;
            double minact = 0.0, maxact = 0.0;
            for (const auto& [j, a] : rows[r].terms) {
                minact += a > 0 ? a * lb[j] : a * ub[j];
                maxact += a > 0 ? a * ub[j] : a * lb[j];
            }
            if (maxact <= rows[r].rhs + 1e-9) {
                active[r] = 0;
                changed = true;
                continue;
            }
            if (minact > rows[r].rhs + 1e-9) {
                rep.status = SolveStatus::Infeasible;
                rep.wall_s = elapsed();
                return rep;
            }
            for (const auto& [j, a] : rows[r].terms) {
                if (lb[j] >= ub[j]) continue;
                double rest = minact - (a > 0 ? a * lb[j] : a * ub[j]);
                double room = rows[r].rhs - rest;
                if (a > 0) {
                    double cap = std::floor(room / a + 1e-9);
                    if (cap < ub[j] - 0.5) {
                        ub[j] = std::max(cap, lb[j]);
                        changed = true;
                    }
                } else {
                    double low = std::ceil(room / a - 1e-9);
                    if (low > lb[j] + 0.5) {
                        lb[j] = std::min(low, ub[j]);
                        changed = true;
                    }
                }
            }
        }
        if (!changed) break;
    }

    // variables that only relax <= rows when decreased can sit at their
    // lower bound (objective coefficients are all >= 0)
    {
        std::vector<char> has_neg(NV, 0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!active[r]) continue;
            for (const auto& [j, a] : rows[r].terms)
                if (a < 0) has_neg[j] = 1;
        }
        for (int j = 0; j < NV; ++j)
            if (!has_neg[j]) ub[j] = lb[j];
    }

    // fold fixed variables into constants; the LP runs on the free subset
    std::vector<int> free_of;                 // free index -> model index
    std::vector<int> pos(NV, -1);             // model index -> free index
    double obj_const = 0.0;
    for (int j = 0; j < NV; ++j) {
        if (lb[j] < ub[j]) {
            pos[j] = static_cast<int>(free_of.size());
            free_of.push_back(j);
        } else {
            obj_const += m.objective[j] * lb[j];
        }
    }
    const int nf = static_cast<int>(free_of.size());

    lp::Problem prob;
    prob.n = nf;
    prob.obj.resize(nf);
    // a deterministic relative perturbation breaks the dual degeneracy that
    // stalls the simplex; it inflates LP values by at most 1e-8, well inside
    // the slack bound_to_money subtracts
    Rng pert(0x9e3779b97f4a7c15ull);
    for (int f = 0; f < nf; ++f)
        prob.obj[f] = m.objective[free_of[f]] * (1.0 + 1e-8 * pert.uniform());

    // migration rows rarely bind, so they start cold and join the working
    // LP only once some relaxation violates them; the hot set persists
    // across nodes
    std::vector<lp::Problem::Row> frows;
    std::vector<char> hot;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!active[r]) continue;
        lp::Problem::Row row;
        row.rhs = rows[r].rhs;
        for (const auto& [j, a] : rows[r].terms) {
            if (pos[j] >= 0)
                row.terms.emplace_back(pos[j], a);
            else
                row.rhs -= a * lb[j];
        }
        if (row.terms.empty()) continue;
        frows.push_back(std::move(row));
        hot.push_back(m.constraints[r].tag != "migration-linearization");
    }
    bool hot_dirty = true;
    auto rebuild_hot = [&] {
        prob.rows.clear();
        for (std::size_t r = 0; r < frows.size(); ++r)
            if (hot[r]) prob.rows.push_back(frows[r]);
        hot_dirty = false;
    };
    // solves the working LP, promoting violated cold rows until none remain
    auto solve_lp = [&](std::span<const double> nlb, std::span<const double> nub) {
        for (;;) {
            if (hot_dirty) rebuild_hot();
            int iter_limit = 20 * (static_cast<int>(prob.rows.size()) + nf) + 500;
            auto res = lp::solve(prob, nlb, nub, iter_limit);
            if (res.status != lp::Status::Optimal) return res;
            bool promoted = false;
            for (std::size_t r = 0; r < frows.size(); ++r) {
                if (hot[r]) continue;
                double act = 0.0;
                for (const auto& [f, a] : frows[r].terms) act += a * res.x[f];
                if (act > frows[r].rhs + 1e-7 * (1.0 + std::fabs(frows[r].rhs))) {
                    hot[r] = 1;
                    promoted = true;
                    hot_dirty = true;
                }
            }
            if (!promoted) return res;
        }
    };

    Incumbent inc;
    seed_incumbent(sc, inc);
    const Money comb = combinatorial_bound(sc);

    std::vector<double> root_lb(nf), root_ub(nf);
    for (int f = 0; f < nf; ++f) {
        root_lb[f] = lb[free_of[f]];
        root_ub[f] = ub[free_of[f]];
    }

    // best-first on the LP bound; equal bounds prefer the newest node, which
    // turns bound plateaus into dives toward integer solutions
    std::vector<Node> pool;
    pool.push_back({static_cast<double>(comb), -1, -1, 0.0, false});
    auto worse = [&](int a, int b) {
        if (pool[a].bound != pool[b].bound) return pool[a].bound > pool[b].bound;
        return a < b;
    };
    std::vector<int> open{0};  // heap ordered by `worse`
    auto push_open = [&](int id) {
        open.push_back(id);
        std::push_heap(open.begin(), open.end(), worse);
    };
    auto pop_open = [&] {
        std::pop_heap(open.begin(), open.end(), worse);
        int id = open.back();
        open.pop_back();
        return id;
    };

    std::vector<double> nlb(nf), nub(nf), val(NV);
    long long nodes = 0;
    bool out_of_time = false, out_of_nodes = false;

    while (!open.empty()) {
        if (elapsed() > limits.time_budget_s) {
            out_of_time = true;
            break;
        }
        if (nodes >= limits.node_budget) {
            out_of_nodes = true;
            break;
        }
        const int nid = pop_open();
        const double nbound = pool[nid].bound;
        if (bound_to_money(nbound) >= inc.total) break;  // bound proves the rest
        ++nodes;

        nlb = root_lb;
        nub = root_ub;
        for (int i = nid; pool[i].var >= 0; i = pool[i].parent) {
            if (pool[i].is_ub)
                nub[pool[i].var] = std::min(nub[pool[i].var], pool[i].value);
            else
                nlb[pool[i].var] = std::max(nlb[pool[i].var], pool[i].value);
        }
        bool empty_box = false;
        for (int f = 0; f < nf && !empty_box; ++f) empty_box = nlb[f] > nub[f];
        if (empty_box) continue;

        auto res = solve_lp(nlb, nub);
        if (res.status == lp::Status::Infeasible) continue;

        int branch_f = -1;
        double branch_lo = 0.0, branch_hi = 0.0;
        if (res.status == lp::Status::IterLimit) {
            // no usable relaxation: keep the parent bound, split the box on
            // the highest-priority open variable
            for (int f = 0; f < nf; ++f) {
                if (nlb[f] >= nub[f]) continue;
                if (branch_f < 0 ||
                    role_priority(m.variables[free_of[f]].role) <
                        role_priority(m.variables[free_of[branch_f]].role))
                    branch_f = f;
            }
            if (branch_f < 0) continue;
            double mid = std::floor((nlb[branch_f] + nub[branch_f]) / 2.0);
            branch_lo = mid;
            branch_hi = mid + 1.0;
            pool.push_back({nbound, nid, branch_f, branch_hi, false});
            push_open(static_cast<int>(pool.size() - 1));
            pool.push_back({nbound, nid, branch_f, branch_lo, true});
            push_open(static_cast<int>(pool.size() - 1));
            continue;
        }

        const double node_obj = res.obj + obj_const;
        if (bound_to_money(node_obj) >= inc.total) continue;

        for (int j = 0; j < NV; ++j) val[j] = pos[j] >= 0 ? res.x[pos[j]] : lb[j];

        // candidate whenever the structural families are integral, even if
        // the migration indicators are still fractional
        bool structural_integral = true, all_integral = true;
        for (int f = 0; f < nf; ++f) {
            double v = res.x[f];
            bool frac = std::fabs(v - std::llround(v)) > kIntTol;
            if (!frac) continue;
            all_integral = false;
            VarRole role = m.variables[free_of[f]].role;
            if (role != VarRole::Delta && role != VarRole::YMig)
                structural_integral = false;
        }
        if (structural_integral) offer_candidate(sc, m, val, inc);
        if (all_integral) continue;

        // root reduced-cost fixing: moving a nonbasic variable k steps off
        // its bound costs at least k times its reduced cost, so steps that
        // exceed the incumbent gap cannot be part of an improving solution
        if (nid == 0) {
            double gap =
                static_cast<double>(inc.total - 1 - bound_to_money(node_obj));
            if (gap >= 0.0) {
                for (int f = 0; f < nf; ++f) {
                    double r = res.red[f];
                    if (r > 1e-9 && res.x[f] < nlb[f] + kIntTol) {
                        double steps = std::floor(gap / r) + 1.0;
                        if (root_lb[f] + steps < root_ub[f])
                            root_ub[f] = root_lb[f] + steps;
                    } else if (r < -1e-9 && res.x[f] > nub[f] - kIntTol) {
                        double steps = std::floor(gap / -r) + 1.0;
                        if (root_ub[f] - steps > root_lb[f])
                            root_lb[f] = root_ub[f] - steps;
                    }
                }
            }
        }

        // most fractional within the highest-priority fractional role
        int best_pri = 7;
        double best_frac = -1.0;
        for (int f = 0; f < nf; ++f) {
            double v = res.x[f];
            double frac = std::fabs(v - std::llround(v));
            if (frac <= kIntTol) continue;
            int pri = role_priority(m.variables[free_of[f]].role);
            double score = std::min(frac, 1.0 - frac);
            if (pri < best_pri || (pri == best_pri && score > best_frac + 1e-12)) {
                best_pri = pri;
                best_frac = score;
                branch_f = f;
            }
        }
        if (branch_f < 0) continue;
        double v = res.x[branch_f];
        // dive towards the nearer integer: that child is pushed last so it
        // is explored first
        bool down_first = v - std::floor(v) <= 0.5;
        Node down{node_obj, nid, branch_f, std::floor(v), true};
        Node up{node_obj, nid, branch_f, std::ceil(v), false};
        pool.push_back(down_first ? up : down);
        push_open(static_cast<int>(pool.size() - 1));
        pool.push_back(down_first ? down : up);
        push_open(static_cast<int>(pool.size() - 1));
    }

    rep.nodes = nodes;
    rep.wall_s = elapsed();
    rep.solution = inc.sol;
    rep.objective = inc.total;
    rep.y_mig = canonical_migrations(sc, m, inc.sol);
    if (!out_of_time && !out_of_nodes) {
        rep.status = SolveStatus::Optimal;
        rep.best_bound = rep.objective;
    } else {
        rep.status = out_of_time ? SolveStatus::TimeLimit : SolveStatus::FeasibleBoundGap;
        double open_min = static_cast<double>(rep.objective);
        for (int id : open) open_min = std::min(open_min, pool[id].bound);
        rep.best_bound = std::min(rep.objective, std::max(comb, bound_to_money(open_min)));
    }
    return rep;
}

SolveReport solve(const Scenario& sc, const SolveLimits& limits) {
    return solve(sc, build_milp(sc), limits);
}

}  // namespace dcpsp
