#include "dcpsp/milp.hpp"

#include <algorithm>
#include <cstdio>

namespace dcpsp {

namespace {

std::string short_name(const char* prefix, int idx) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s%07d", prefix, idx);
    return buf;
}

}  // namespace

MilpModel build_milp(const Scenario& sc) {
    sc.check();
    MilpModel m;
    const int D = static_cast<int>(sc.num_dcs());
    const int U = static_cast<int>(sc.num_clusters());
    const int S = static_cast<int>(sc.num_services());
    const int T = sc.horizon;
    m.num_dcs = D;
    m.num_clusters = U;
    m.num_services = S;
    m.horizon = T;

    const std::size_t nvars =
        2 * D + static_cast<std::size_t>(D + 1) * U * S * T +
        static_cast<std::size_t>(D + 1) * U * S * (T - 1);
    m.variables.resize(nvars);
    m.objective.assign(nvars, 0.0);

    auto set_var = [&m](int idx, const char* prefix, VarKind kind, double lb, double ub,
                        VarRole role, int d, int u, int s, int t) {
        m.variables[idx] = MilpVariable{short_name(prefix, idx), kind, lb, ub,
                                        role, d, u, s, t};
    };

    for (int d = 0; d < D; ++d) {
        set_var(m.x_var(d), "X", VarKind::Binary, 0, 1, VarRole::X, d, -1, -1, -1);
        m.objective[m.x_var(d)] = static_cast<double>(sc.data_centers[d].c_fix);
        set_var(m.z_var(d), "Z", VarKind::Integer, 0,
                static_cast<double>(sc.data_centers[d].k_max), VarRole::Z, d, -1, -1, -1);
        m.objective[m.z_var(d)] = static_cast<double>(sc.data_centers[d].c_hw);
    }
    for (int d = 0; d < D; ++d)
        for (int u = 0; u < U; ++u)
            for (int s = 0; s < S; ++s)
                for (int t = 0; t < T; ++t) {
                    int idx = m.y_var(d, u, s, t);
                    set_var(idx, "Y", VarKind::Integer, 0,
                            static_cast<double>(sc.data_centers[d].k_max), VarRole::Y,
                            d, u, s, t);
                    m.objective[idx] = static_cast<double>(sc.data_centers[d].c_op[t]);
                }
    for (int u = 0; u < U; ++u)
        for (int s = 0; s < S; ++s)
            for (int t = 0; t < T; ++t) {
                int idx = m.pen_var(u, s, t);
                // y_pen above the demand never pays off; V is a valid cap
                set_var(idx, "P", VarKind::Integer, 0,
                        static_cast<double>(sc.demand_at(u, s, t)), VarRole::YPen,
                        -1, u, s, t);
                m.objective[idx] = static_cast<double>(sc.penalty(u, s));
            }
    for (int d = 0; d < D; ++d)
        for (int u = 0; u < U; ++u)
            for (int s = 0; s < S; ++s)
                for (int t = 1; t < T; ++t) {
                    int idx = m.mig_var(d, u, s, t);
                    set_var(idx, "M", VarKind::Integer, 0,
                            static_cast<double>(sc.data_centers[d].k_max), VarRole::YMig,
                            d, u, s, t);
                    m.objective[idx] = static_cast<double>(sc.services[s].c_mig);
                }
    for (int u = 0; u < U; ++u)
        for (int s = 0; s < S; ++s)
            for (int t = 1; t < T; ++t) {
                int idx = m.delta_var(u, s, t);
                set_var(idx, "D", VarKind::Binary, 0, 1, VarRole::Delta, -1, u, s, t);
            }

    auto add_row = [&m](std::vector<std::pair<int, double>> terms, Relation rel,
                        double rhs, const char* tag) {
        m.constraints.push_back(MilpConstraint{std::move(terms), rel, rhs, tag});
    };

    // demand coverage
    for (int u = 0; u < U; ++u)
        for (int s = 0; s < S; ++s)
            for (int t = 0; t < T; ++t) {
                std::vector<std::pair<int, double>> terms{{m.pen_var(u, s, t), 1.0}};
                for (int d = 0; d < D; ++d) terms.emplace_back(m.y_var(d, u, s, t), 1.0);
                add_row(std::move(terms), Relation::Ge,
                        static_cast<double>(sc.demand_at(u, s, t)), "coverage");
            }

    // per-slot load vs installed servers
    for (int d = 0; d < D; ++d)
        for (int t = 0; t < T; ++t) {
            std::vector<std::pair<int, double>> terms{{m.z_var(d), -1.0}};
            for (int u = 0; u < U; ++u)
                for (int s = 0; s < S; ++s) terms.emplace_back(m.y_var(d, u, s, t), 1.0);
            add_row(std::move(terms), Relation::Le, 0.0, "capacity-link");
        }

    // z within [x*k_min, x*k_max]
    for (int d = 0; d < D; ++d) {
        add_row({{m.z_var(d), 1.0},
                 {m.x_var(d), -static_cast<double>(sc.data_centers[d].k_max)}},
                Relation::Le, 0.0, "capacity-bounds");
        add_row({{m.z_var(d), 1.0},
                 {m.x_var(d), -static_cast<double>(sc.data_centers[d].k_min)}},
                Relation::Ge, 0.0, "capacity-bounds");
    }

    // eligibility gating with constant p
    for (int d = 0; d < D; ++d)
        for (int u = 0; u < U; ++u)
            for (int s = 0; s < S; ++s) {
                double cap = eligibility(sc, d, u, s)
                                 ? static_cast<double>(sc.data_centers[d].k_max)
                                 : 0.0;
                for (int t = 0; t < T; ++t)
                    add_row({{m.y_var(d, u, s, t), 1.0}}, Relation::Le, cap,
                            "qos-eligibility");
            }

    // LAN bandwidth
    for (int u = 0; u < U; ++u)
        for (int t = 0; t < T; ++t) {
            std::vector<std::pair<int, double>> down, up;
            for (int d = 0; d < D; ++d)
                for (int s = 0; s < S; ++s) {
                    down.emplace_back(m.y_var(d, u, s, t),
                                      static_cast<double>(sc.services[s].l_down));
                    up.emplace_back(m.y_var(d, u, s, t),
                                    static_cast<double>(sc.services[s].l_up));
                }
            add_row(std::move(down), Relation::Le,
                    static_cast<double>(sc.user_clusters[u].lan_down), "lan-down");
            add_row(std::move(up), Relation::Le,
                    static_cast<double>(sc.user_clusters[u].lan_up), "lan-up");
        }

    // MAN bandwidth; traffic between a cluster and its own cloudlet is exempt
    for (int u = 0; u < U; ++u) {
        int local = sc.local_cloudlet_of(u);
        for (int t = 0; t < T; ++t) {
            std::vector<std::pair<int, double>> down, up;
            for (int d = 0; d < D; ++d) {
                if (d == local) continue;
                for (int s = 0; s < S; ++s) {
                    down.emplace_back(m.y_var(d, u, s, t),
                                      static_cast<double>(sc.services[s].l_down));
                    up.emplace_back(m.y_var(d, u, s, t),
                                    static_cast<double>(sc.services[s].l_up));
                }
            }
            if (local >= 0)
                for (int mu = 0; mu < U; ++mu) {
                    if (mu == u) continue;
                    for (int s = 0; s < S; ++s) {
                        down.emplace_back(m.y_var(local, mu, s, t),
                                          static_cast<double>(sc.services[s].l_up));
                        up.emplace_back(m.y_var(local, mu, s, t),
                                        static_cast<double>(sc.services[s].l_down));
                    }
                }
            add_row(std::move(down), Relation::Le,
                    static_cast<double>(sc.user_clusters[u].man_down), "man-down");
            add_row(std::move(up), Relation::Le,
                    static_cast<double>(sc.user_clusters[u].man_up), "man-up");
        }
    }

    // migration case split, linearized per (u,s,t>=2). The indicator delta
    // picks the non-decreasing case; M bounds any feasible per-(u,s) aggregate.
    for (int u = 0; u < U; ++u)
        for (int s = 0; s < S; ++s) {
            Units cap_sum = 0;
            for (int d = 0; d < D; ++d)
                if (eligibility(sc, d, u, s)) cap_sum += sc.data_centers[d].k_max;
            Units big_m = cap_sum;
            if (sc.services[s].l_down > 0)
                big_m = std::min(big_m,
                                 sc.user_clusters[u].lan_down / sc.services[s].l_down);
            if (sc.services[s].l_up > 0)
                big_m = std::min(big_m, sc.user_clusters[u].lan_up / sc.services[s].l_up);
            const double M = static_cast<double>(big_m);

            for (int t = 1; t < T; ++t) {
                int delta = m.delta_var(u, s, t);
                std::vector<std::pair<int, double>> inc{{delta, -M}};
                std::vector<std::pair<int, double>> dec{{delta, M}};
                for (int d = 0; d < D; ++d) {
                    inc.emplace_back(m.y_var(d, u, s, t), 1.0);
                    inc.emplace_back(m.y_var(d, u, s, t - 1), -1.0);
                    dec.emplace_back(m.y_var(d, u, s, t), -1.0);
                    dec.emplace_back(m.y_var(d, u, s, t - 1), 1.0);
                }
                // A_t - A_{t-1} <= M*delta ; A_{t-1} - A_t <= M*(1-delta)
                add_row(std::move(inc), Relation::Le, 0.0, "migration-linearization");
                add_row(std::move(dec), Relation::Le, M, "migration-linearization");
                for (int d = 0; d < D; ++d) {
                    // y_mig >= (y_{t-1} - y_t) - M*(1-delta)
                    add_row({{m.y_var(d, u, s, t - 1), 1.0},
                             {m.y_var(d, u, s, t), -1.0},
                             {m.mig_var(d, u, s, t), -1.0},
                             {delta, M}},
                            Relation::Le, M, "migration-linearization");
                    // y_mig >= (y_t - y_{t-1}) - M*delta
                    add_row({{m.y_var(d, u, s, t), 1.0},
                             {m.y_var(d, u, s, t - 1), -1.0},
                             {m.mig_var(d, u, s, t), -1.0},
                             {delta, -M}},
                            Relation::Le, 0.0, "migration-linearization");
                }
            }
        }

    return m;
}

std::string export_mps(const MilpModel& m) {
    std::string out;
    out.reserve(1 << 16);
    char line[128];
    auto emit = [&out, &line]() { out += line; };

    out += "NAME          DCPSP\n";
    out += "ROWS\n";
    out += " N  COST\n";
    for (std::size_t r = 0; r < m.constraints.size(); ++r) {
        std::snprintf(line, sizeof(line), " %c  R%07zu\n",
                      m.constraints[r].rel == Relation::Le ? 'L' : 'G', r);
        emit();
    }

    // column-major entries: objective first, then constraint coefficients
    std::vector<std::vector<std::pair<std::size_t, double>>> cols(m.variables.size());
    for (std::size_t r = 0; r < m.constraints.size(); ++r)
        for (const auto& [j, a] : m.constraints[r].terms)
            cols[j].emplace_back(r, a);

    out += "COLUMNS\n";
    out += "    MARKER                 'MARKER'                 'INTORG'\n";
    for (std::size_t j = 0; j < m.variables.size(); ++j) {
        const std::string& name = m.variables[j].name;
        if (m.objective[j] != 0.0) {
            std::snprintf(line, sizeof(line), "    %-8s  %-8s  %.12g\n", name.c_str(),
                          "COST", m.objective[j]);
            emit();
        }
        for (const auto& [r, a] : cols[j]) {
            std::snprintf(line, sizeof(line), "    %-8s  R%07zu  %.12g\n", name.c_str(),
                          r, a);
            emit();
        }
    }
    out += "    MARKER                 'MARKER'                 'INTEND'\n";

    out += "RHS\n";
    for (std::size_t r = 0; r < m.constraints.size(); ++r) {
        if (m.constraints[r].rhs == 0.0) continue;
        std::snprintf(line, sizeof(line), "    RHS       R%07zu  %.12g\n", r,
                      m.constraints[r].rhs);
        emit();
    }

    out += "RANGES\n";

    out += "BOUNDS\n";
    for (const auto& v : m.variables) {
        if (v.kind == VarKind::Binary) {
            std::snprintf(line, sizeof(line), " BV BND       %-8s\n", v.name.c_str());
            emit();
            continue;
        }
        if (v.lb != 0.0) {
            std::snprintf(line, sizeof(line), " LO BND       %-8s  %.12g\n",
                          v.name.c_str(), v.lb);
            emit();
        }
        std::snprintf(line, sizeof(line), " UP BND       %-8s  %.12g\n", v.name.c_str(),
                      v.ub);
        emit();
    }
    out += "ENDATA\n";
    return out;
}

}  // namespace dcpsp
