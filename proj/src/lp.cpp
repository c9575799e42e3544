#include "convexjet/lp.hpp"

#include "convexjet/jet.hpp"

#include <cmath>
#include <limits>

namespace convexjet::lp {

Solution maximize(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b, int max_iter)
{
    constexpr double eps = 1e-12;
    const std::size_t m = A.size();
    const std::size_t nv = c.size();
    const std::size_t cols = nv + m + 1;
    for (const auto& row : A)
        if (row.size() != nv) throw InputError("lp::maximize: constraint row has wrong length");
    if (b.size() != m) throw InputError("lp::maximize: rhs has wrong length");

    // Rows 0..m-1 constraints, row m is the objective (stored as -c).
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0.0) throw InputError("lp::maximize: rhs must be nonnegative");
        for (std::size_t j = 0; j < nv; ++j) T[i][j] = A[i][j];
        T[i][nv + i] = 1.0;
        T[i][cols - 1] = b[i];
        basis[i] = nv + i;
    }
    for (std::size_t j = 0; j < nv; ++j) T[m][j] = -c[j];

    Solution sol;
    for (int it = 0; it < max_iter; ++it) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (T[m][j] < -eps) {
                enter = j;
                break;
            }
        if (enter == cols) {
            sol.status = Status::Optimal;
            break;
        }
        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] > eps) {
                const double ratio = T[i][cols - 1] / T[i][enter];
                if (ratio < best - eps || (std::abs(ratio - best) <= eps && leave < m && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) {
            sol.status = Status::Unbounded;
            return sol;
        }
        const double piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = T[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    sol.x.assign(nv, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < nv) sol.x[basis[i]] = T[i][cols - 1];
    sol.objective = T[m][cols - 1];
    return sol;
}

}  // namespace convexjet::lp
