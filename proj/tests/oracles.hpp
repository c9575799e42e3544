#pragma once

// Test-only oracles and seeded data generators. Nothing here calls the
// library's algorithms; the oracles are written directly from the formulas.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
    std::mt19937_64 eng;
};

// Sorted points in [a, b] with spacing at least `min_gap`.
inline std::vector<double> sorted_points(Rng& r, int n, double a, double b, double min_gap)
{
    for (;;) {
        std::vector<double> x(n);
        for (auto& v : x) v = r.uniform(a, b);
        std::sort(x.begin(), x.end());
        bool ok = true;
        for (int i = 1; i < n; ++i) ok = ok && x[i] - x[i - 1] >= min_gap;
        if (ok) return x;
    }
}

// A convex C^{1,1} function with Lip(f') <= curvature bound:
// f(x) = a x^2/2 + b x + c + sum_k w_k max(0, s_k (x - t_k))^2 / 2.
struct ConvexPQ {
    double a = 0, b = 0, c = 0;
    std::vector<double> w, t, s;

    double operator()(double x) const
    {
        double v = 0.5 * a * x * x + b * x + c;
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double u = std::max(0.0, s[k] * (x - t[k]));
            v += 0.5 * w[k] * u * u;
        }
        return v;
    }
    double grad(double x) const
    {
        double g = a * x + b;
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double u = std::max(0.0, s[k] * (x - t[k]));
            g += w[k] * s[k] * u;
        }
        return g;
    }
    // Upper bound on Lip(f'): the pieces can overlap.
    double lip_bound() const
    {
        double L = a;
        for (double v : w) L += v;
        return L;
    }
};

inline ConvexPQ random_convex_pq(Rng& r, double max_curv, double lo, double hi)
{
    ConvexPQ f;
    const int pieces = r.integer(1, 3);
    double budget = max_curv;
    f.a = r.coin(0.3) ? 0.0 : r.uniform(0.0, budget / 2);
    budget -= f.a;
    for (int k = 0; k < pieces; ++k) {
        const double w = r.uniform(0.0, budget / pieces);
        f.w.push_back(w);
        f.t.push_back(r.uniform(lo, hi));
        f.s.push_back(r.coin() ? 1.0 : -1.0);
    }
    f.b = r.uniform(-2.0, 2.0);
    f.c = r.uniform(-1.0, 1.0);
    return f;
}

// Convex data: f from a convex piecewise quadratic plus a small convex,
// piecewise-affine jitter eps*|x - t| (keeps divided differences ordered).
inline void random_convex_dataset(Rng& r, int n, std::vector<double>& xs, std::vector<double>& fs)
{
    xs = sorted_points(r, n, -3.0, 3.0, 0.2);
    const auto f = random_convex_pq(r, r.uniform(0.2, 3.0), -3.0, 3.0);
    const double eps = r.uniform(0.0, 0.05);
    const double t = r.uniform(-3.0, 3.0);
    fs.resize(n);
    for (int i = 0; i < n; ++i) fs[i] = f(xs[i]) + eps * std::abs(xs[i] - t);
}

// Literal 1-based transcription of the selection formulas. Arrays have
// length N+1 with index 0 unused. `ok` is false when the sandwich fails.
struct LiteralSelection {
    bool ok = false;
    std::vector<double> D, Pl, Pr, Pp, Pm, grad;
};

inline LiteralSelection literal_select(const std::vector<double>& xs0, const std::vector<double>& fs0, double M)
{
    const int N = static_cast<int>(xs0.size());
    std::vector<double> x(N + 1), f(N + 1);
    for (int i = 1; i <= N; ++i) {
        x[i] = xs0[i - 1];
        f[i] = fs0[i - 1];
    }
    LiteralSelection s;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.D.assign(N + 1, nan);
    s.Pl.assign(N + 1, nan);
    s.Pr.assign(N + 1, nan);
    s.Pp.assign(N + 1, nan);
    s.Pm.assign(N + 1, nan);
    s.grad.assign(N + 1, nan);
    auto D = [&](int i) { return (f[i + 1] - f[i]) / (x[i + 1] - x[i]); };  // D_{i,i+1}
    for (int i = 1; i < N; ++i) s.D[i] = D(i);
    s.Pl[1] = D(1) - M / 2 * (x[2] - x[1]);
    for (int i = 2; i <= N - 1; ++i) s.Pl[i] = std::max(D(i - 1), D(i) - M / 2 * (x[i + 1] - x[i]));
    s.Pr[N] = D(N - 1) + M / 2 * (x[N] - x[N - 1]);
    for (int i = 2; i <= N - 1; ++i) s.Pr[i] = std::min(D(i), D(i - 1) + M / 2 * (x[i] - x[i - 1]));
    auto rt = [](double v) { return std::sqrt(std::max(0.0, v)); };
    for (int i = 2; i <= N - 1; ++i) {
        s.Pp[i] = s.Pl[i - 1] + rt(2 * M * (D(i - 1) - s.Pl[i - 1]) * (x[i] - x[i - 1]));
        s.Pm[i] = s.Pr[i + 1] - rt(2 * M * (s.Pr[i + 1] - D(i)) * (x[i + 1] - x[i]));
    }
    s.ok = true;
    for (int i = 2; i <= N - 1; ++i) {
        const double lo = std::max(s.Pm[i], D(i - 1)), hi = std::min(s.Pp[i], D(i));
        if (lo > hi + 1e-9) s.ok = false;
        s.grad[i] = 0.5 * (lo + hi);
    }
    if (N >= 3) {
        s.grad[1] = s.grad[2] - rt(2 * M * (s.grad[2] - D(1)) * (x[2] - x[1]));
        s.grad[N] = s.grad[N - 1] + rt(2 * M * (D(N - 1) - s.grad[N - 1]) * (x[N] - x[N - 1]));
    }
    return s;
}

// Residuals of (a) and (b) from their definitions, for 1-D jets.
struct Resid {
    double a, b;
};
inline Resid wells1(double x, double fx, double gx, double y, double fy, double gy, double M)
{
    const double q = (gx - gy) * (gx - gy) / (2 * M);
    return {fx - (fy + gy * (x - y)) - q, fy - (fx + gx * (y - x)) - q};
}

// Smallest M at which two 1-D jets are compatible.
inline double wells_constant1(double x, double fx, double gx, double y, double fy, double gy)
{
    const double a = fx - (fy + gy * (x - y));
    const double b = fy - (fx + gx * (y - x));
    const double dg2 = (gx - gy) * (gx - gy);
    if (dg2 == 0.0) return (a >= -1e-12 && b >= -1e-12) ? 0.0 : std::numeric_limits<double>::infinity();
    if (a <= 0.0 || b <= 0.0) return std::numeric_limits<double>::infinity();
    return std::max(dg2 / (2 * a), dg2 / (2 * b));
}

// Brute force over gradient assignments on a grid: the smallest M for which
// some assignment is pairwise compatible.
inline double brute_force_budget(const std::vector<double>& xs, const std::vector<double>& fs, double glo, double ghi,
                                 int steps)
{
    const std::size_t n = xs.size();
    std::vector<int> idx(n, 0);
    double best = std::numeric_limits<double>::infinity();
    auto g = [&](int k) { return glo + (ghi - glo) * k / steps; };
    for (;;) {
        double m = 0.0;
        for (std::size_t i = 0; i < n && m < best; ++i)
            for (std::size_t j = i + 1; j < n && m < best; ++j)
                m = std::max(m, wells_constant1(xs[i], fs[i], g(idx[i]), xs[j], fs[j], g(idx[j])));
        best = std::min(best, m);
        std::size_t k = 0;
        while (k < n && ++idx[k] > steps) idx[k++] = 0;
        if (k == n) break;
    }
    return best;
}

// Exact Fourier-Motzkin feasibility of {g : A g <= b} over the rationals.
using Rational = boost::multiprecision::cpp_rational;

inline bool fm_feasible(const std::vector<std::vector<double>>& A, const std::vector<Rational>& b)
{
    struct Row {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<Row> rows;
    const std::size_t n = A.empty() ? 0 : A[0].size();
    for (std::size_t i = 0; i < A.size(); ++i) {
        Row r;
        for (double v : A[i]) r.a.emplace_back(v);
        r.b = b[i];
        rows.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Row> pos, neg, next;
        for (auto& r : rows) {
            if (r.a[k] > 0)
                pos.push_back(r);
            else if (r.a[k] < 0)
                neg.push_back(r);
            else
                next.push_back(r);
        }
        for (const auto& p : pos)
            for (const auto& q : neg) {
                const Rational cp = -q.a[k], cq = p.a[k];
                Row r;
                r.a.resize(n);
                for (std::size_t j = 0; j < n; ++j) r.a[j] = cp * p.a[j] + cq * q.a[j];
                r.b = cp * p.b + cq * q.b;
                next.push_back(std::move(r));
            }
        rows = std::move(next);
    }
    for (const auto& r : rows)
        if (r.b < 0) return false;
    return true;
}

inline bool fm_feasible(const std::vector<std::vector<double>>& A, const std::vector<double>& b)
{
    return fm_feasible(A, std::vector<Rational>(b.begin(), b.end()));
}

}  // namespace oracle
