#include "dcpsp/simplex.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace dcpsp::lp {

namespace {

constexpr double kInf = 1e30;
constexpr double kFeasTol = 1e-7;
constexpr double kPivTol = 1e-8;

enum class St : unsigned char { Lower, Upper, Basic };

}  // namespace

Result solve(const Problem& p, std::span<const double> lb_in,
             std::span<const double> ub_in, int iter_limit) {
    const int n = p.n;
    const int m = static_cast<int>(p.rows.size());
    const int N = n + m;

    std::vector<double> lb(N), ub(N);
    for (int j = 0; j < n; ++j) {
        lb[j] = lb_in[j];
        ub[j] = ub_in[j];
    }
    for (int i = 0; i < m; ++i) {
        lb[n + i] = 0.0;
        ub[n + i] = kInf;
    }

    // normalize every row to <=; slack in [0, inf)
    std::vector<double> tab(static_cast<std::size_t>(m) * N, 0.0);
    std::vector<double> beta(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const auto& row = p.rows[i];
        double sign = row.is_ge ? -1.0 : 1.0;
        double* tr = &tab[static_cast<std::size_t>(i) * N];
        for (const auto& [j, a] : row.terms) tr[j] += sign * a;
        tr[n + i] = 1.0;
        beta[i] = sign * row.rhs;
    }

    std::vector<St> st(N, St::Lower);
    std::vector<double> val(N, 0.0);
    for (int j = 0; j < n; ++j) val[j] = lb[j];
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        basis[i] = n + i;
        st[n + i] = St::Basic;
    }
    for (int i = 0; i < m; ++i) {
        const double* tr = &tab[static_cast<std::size_t>(i) * N];
        for (int j = 0; j < n; ++j)
            if (val[j] != 0.0) beta[i] -= tr[j] * val[j];
    }

    // with all structurals at their lower bound and obj >= 0 this start is
    // dual feasible
    std::vector<double> red(N, 0.0);
    for (int j = 0; j < n; ++j) {
        assert(p.obj[j] >= 0.0);
        red[j] = p.obj[j];
    }

    Result res;
    int iter = 0;
    for (; iter < iter_limit; ++iter) {
        // leaving: most violated basic
        int r = -1;
        bool below = false;
        double viol = kFeasTol;
        for (int i = 0; i < m; ++i) {
            int b = basis[i];
            double v = lb[b] - beta[i];
            if (v > viol) {
                r = i;
                below = true;
                viol = v;
            }
            v = beta[i] - ub[b];
            if (v > viol) {
                r = i;
                below = false;
                viol = v;
            }
        }
        if (r < 0) break;  // primal feasible == optimal

        const double* tr = &tab[static_cast<std::size_t>(r) * N];
        int q = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int j = 0; j < N; ++j) {
            if (st[j] == St::Basic || lb[j] >= ub[j] - 1e-12) continue;
            double a = tr[j];
            bool ok = below ? (st[j] == St::Lower ? a < -kPivTol : a > kPivTol)
                            : (st[j] == St::Lower ? a > kPivTol : a < -kPivTol);
            if (!ok) continue;
            double ratio = std::fabs(red[j]) / std::fabs(a);
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                q = j;
            }
        }
        if (q < 0) {
            res.status = Status::Infeasible;
            return res;
        }

        const int leave = basis[r];
        const double piv = tr[q];
        const double target = below ? lb[leave] : ub[leave];
        const double step = (beta[r] - target) / piv;

        for (int i = 0; i < m; ++i)
            if (i != r) beta[i] -= tab[static_cast<std::size_t>(i) * N + q] * step;
        const double enter_val = val[q] + step;

        const double theta = red[q] / piv;
        if (theta != 0.0)
            for (int j = 0; j < N; ++j) red[j] -= theta * tr[j];
        red[q] = 0.0;

        double* rr = &tab[static_cast<std::size_t>(r) * N];
        const double inv = 1.0 / piv;
        for (int j = 0; j < N; ++j) rr[j] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            double* ri = &tab[static_cast<std::size_t>(i) * N];
            double f = ri[q];
            if (f == 0.0) continue;
            for (int j = 0; j < N; ++j) ri[j] -= f * rr[j];
            ri[q] = 0.0;  // keep the unit column exact
        }

        st[leave] = below ? St::Lower : St::Upper;
        val[leave] = target;
        st[q] = St::Basic;
        basis[r] = q;
        beta[r] = enter_val;
    }
    if (iter >= iter_limit) {
        res.status = Status::IterLimit;
        return res;
    }

    res.status = Status::Optimal;
    res.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        if (st[j] != St::Basic) res.x[j] = val[j];
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = beta[i];
    res.obj = 0.0;
    for (int j = 0; j < n; ++j) res.obj += p.obj[j] * res.x[j];
    res.red.assign(red.begin(), red.begin() + n);
    return res;
}

}  // namespace dcpsp::lp
