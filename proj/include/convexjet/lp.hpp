#pragma once

// Dense tableau simplex for small problems: maximize c.x subject to A x <= b,
// x >= 0, with b >= 0 so the slack basis is feasible. Bland's rule.

#include <vector>

namespace convexjet::lp {

enum class Status { Optimal, Unbounded, IterationLimit };

struct Solution {
    Status status = Status::IterationLimit;
    std::vector<double> x;
    double objective = 0.0;
};

Solution maximize(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b, int max_iter = 10000);

}  // namespace convexjet::lp
