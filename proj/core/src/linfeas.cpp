#include "trisec/linfeas.hpp"

namespace trisec {

// Standard form: split x = u - v with u, v >= 0, add a slack per inequality,
// flip rows to nonnegative rhs, add one artificial per row and minimize the
// artificial sum.  Feasible iff the phase-1 optimum is zero.
std::optional<Vec> solve_feasibility(const std::vector<LinearConstraint>& constraints,
                                     size_t nvars) {
    const size_t m = constraints.size();
    if (m == 0) return Vec(nvars, Scalar(0));
    size_t nslack = 0;
    for (const auto& c : constraints) {
        if (c.a.size() != nvars)
            throw Error(Error::Kind::Dimension, "constraint width mismatch");
        if (c.rel != Rel::EQ) ++nslack;
    }
    const size_t cols = 2 * nvars + nslack + m; // u, v, slacks, artificials
    const size_t art0 = 2 * nvars + nslack;

    // tableau rows: [A | rhs]; basis holds the basic column of each row.
    std::vector<Vec> tab(m, Vec(cols + 1, Scalar(0)));
    std::vector<size_t> basis(m);
    size_t slack_at = 2 * nvars;
    for (size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        int flip = c.b.sign() < 0 ? -1 : 1;
        Scalar f(flip);
        for (size_t j = 0; j < nvars; ++j) {
            tab[i][j] = f * c.a[j];
            tab[i][nvars + j] = -f * c.a[j];
        }
        if (c.rel != Rel::EQ) {
            Scalar s = (c.rel == Rel::GE) ? Scalar(-1) : Scalar(1);
            tab[i][slack_at++] = f * s;
        }
        tab[i][art0 + i] = Scalar(1);
        tab[i][cols] = f * c.b;
        basis[i] = art0 + i;
    }

    // Reduced costs for minimizing the sum of artificials: z_j = -sum of the
    // rows (artificial columns start basic with cost 1).
    Vec cost(cols + 1, Scalar(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= cols; ++j) cost[j] -= tab[i][j];
    for (size_t i = 0; i < m; ++i) cost[art0 + i] = Scalar(0);

    while (true) {
        // Bland: entering = lowest-index column with negative reduced cost.
        size_t enter = cols;
        for (size_t j = 0; j < cols; ++j) {
            if (cost[j].sign() < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break; // optimal
        // Ratio test, ties by smallest basic variable index (Bland).
        size_t leave = m;
        for (size_t i = 0; i < m; ++i) {
            if (tab[i][enter].sign() <= 0) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            Scalar lhs = tab[i][cols] * tab[leave][enter];
            Scalar rhs = tab[leave][cols] * tab[i][enter];
            int c = (lhs - rhs).sign();
            if (c < 0 || (c == 0 && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m)
            throw Error(Error::Kind::Inconsistency, "phase-1 objective unbounded below");
        // Pivot.
        Scalar piv = tab[leave][enter];
        Scalar inv = piv.inverse();
        for (size_t j = 0; j <= cols; ++j) tab[leave][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter].is_zero()) continue;
            Scalar f = tab[i][enter];
            for (size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (!cost[enter].is_zero()) {
            Scalar f = cost[enter];
            for (size_t j = 0; j <= cols; ++j) cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    // Objective value = -cost[rhs].
    if (cost[cols].sign() != 0) return std::nullopt; // artificials stuck > 0

    Vec x(nvars, Scalar(0));
    for (size_t i = 0; i < m; ++i) {
        if (basis[i] < nvars)
            x[basis[i]] += tab[i][cols];
        else if (basis[i] < 2 * nvars)
            x[basis[i] - nvars] -= tab[i][cols];
    }
    return x;
}

} // namespace trisec
