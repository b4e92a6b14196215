#ifndef DCPSP_MILP_HPP
#define DCPSP_MILP_HPP

#include <string>
#include <vector>

#include "dcpsp/model.hpp"

namespace dcpsp {

enum class VarKind { Binary, Integer };
enum class VarRole { X, Z, Y, YPen, YMig, Delta };

struct MilpVariable {
    std::string name;  // short, MPS-safe
    VarKind kind = VarKind::Integer;
    double lb = 0.0, ub = 0.0;
    VarRole role = VarRole::Y;
    int d = -1, u = -1, s = -1, t = -1;
};

enum class Relation { Le, Ge };

struct MilpConstraint {
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    Relation rel = Relation::Le;
    double rhs = 0.0;
    std::string tag;  // constraint family, matches validator tags
};

// The linearized DCPSP. Eligibility enters as precomputed constants; the
// migration case split is linearized with an indicator per (u,s,t) and a
// big-M bounded by what capacity, eligibility, and LAN caps admit.
struct MilpModel {
    int num_dcs = 0, num_clusters = 0, num_services = 0, horizon = 0;
    std::vector<MilpVariable> variables;
    std::vector<MilpConstraint> constraints;
    std::vector<double> objective;  // minimization, milli money units

    // variable index helpers (layout: x, z, y, y_pen, y_mig, delta)
    int x_var(int d) const { return d; }
    int z_var(int d) const { return num_dcs + d; }
    int y_var(int d, int u, int s, int t) const {
        return 2 * num_dcs +
               ((d * num_clusters + u) * num_services + s) * horizon + t;
    }
    int pen_var(int u, int s, int t) const {
        return 2 * num_dcs + num_dcs * num_clusters * num_services * horizon +
               (u * num_services + s) * horizon + t;
    }
    // t >= 1 (second slot onward)
    int mig_var(int d, int u, int s, int t) const {
        return 2 * num_dcs +
               (num_dcs + 1) * num_clusters * num_services * horizon +
               ((d * num_clusters + u) * num_services + s) * (horizon - 1) + (t - 1);
    }
    int delta_var(int u, int s, int t) const {
        return 2 * num_dcs +
               (num_dcs + 1) * num_clusters * num_services * horizon +
               num_dcs * num_clusters * num_services * (horizon - 1) +
               (u * num_services + s) * (horizon - 1) + (t - 1);
    }
};

MilpModel build_milp(const Scenario& sc);

// Fixed-format MPS document with integer markers; minimization objective.
std::string export_mps(const MilpModel& m);

}  // namespace dcpsp

#endif
