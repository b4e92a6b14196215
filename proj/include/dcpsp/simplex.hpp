#ifndef DCPSP_SIMPLEX_HPP
#define DCPSP_SIMPLEX_HPP

#include <span>
#include <vector>

namespace dcpsp::lp {

// Dense LP solver for the branch-and-bound relaxations. All structural
// variables must carry finite bounds and non-negative objective
// coefficients; with every variable starting at its lower bound the initial
// slack basis is dual feasible, so a single dual-simplex phase suffices.
struct Problem {
    int n = 0;                       // structural variables
    std::vector<double> obj;         // size n, all >= 0
    struct Row {
        std::vector<std::pair<int, double>> terms;
        bool is_ge = false;          // false: <= rhs, true: >= rhs
        double rhs = 0.0;
    };
    std::vector<Row> rows;
};

enum class Status { Optimal, Infeasible, IterLimit };

struct Result {
    Status status = Status::IterLimit;
    double obj = 0.0;
    std::vector<double> x;           // structural values, size n
    std::vector<double> red;         // structural reduced costs at optimum
};

// Bounds are supplied per call so branch-and-bound nodes can share one
// Problem. Requires lb[j] <= ub[j], both finite.
Result solve(const Problem& p, std::span<const double> lb, std::span<const double> ub,
             int iter_limit);

}  // namespace dcpsp::lp

#endif
