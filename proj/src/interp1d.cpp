#include "convexjet/interp1d.hpp"

#include "convexjet/extension1d.hpp"
#include "convexjet/strong_convexity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace convexjet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_1d(const SampleSet& s, const char* who)
{
    if (s.dim() != 1) throw InputError(std::string(who) + ": samples must be one-dimensional");
}

// sqrt(2M * t * gap) with t*gap (a value gap) clamped at 0 when it is
// negative by no more than tol; nullopt when it is more negative than that.
std::optional<double> reach(double M, double t, double gap, double tol)
{
    double v = t * gap;
    if (v < -tol) return std::nullopt;
    v = std::max(v, 0.0);
    return std::sqrt(2.0 * M * v);
}

}  // namespace

std::string to_string(InfeasibilityKind k)
{
    switch (k) {
    case InfeasibilityKind::NotConvexOrder: return "NotConvexOrder";
    case InfeasibilityKind::SymgViolation: return "SymgViolation";
    case InfeasibilityKind::WellsViolation: return "WellsViolation";
    }
    return "Unknown";
}

DividedDiffs divided_differences(const SampleSet& s)
{
    require_1d(s, "divided_differences");
    if (s.size() < 2) throw InputError("divided_differences: need at least two samples");
    DividedDiffs out;
    out.d.resize(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        out.d[i] = (s.value(i + 1) - s.value(i)) / (s.x(i + 1) - s.x(i));
    return out;
}

bool convex_order_ok(const DividedDiffs& d, double tol)
{
    for (std::size_t i = 1; i < d.d.size(); ++i)
        if (d.d[i] < d.d[i - 1] - tol) return false;
    return true;
}

SelectResult select_jets(const SampleSet& s, double M, double tol)
{
    require_1d(s, "select_jets");
    if (!(M > 0.0)) throw InputError("select_jets: M must be positive");
    const std::size_t n = s.size();

    JetSelection sel;
    sel.M_used = M;
    sel.envelopes.left.assign(n, kNaN);
    sel.envelopes.right.assign(n, kNaN);
    sel.envelopes.plus.assign(n, kNaN);
    sel.envelopes.minus.assign(n, kNaN);

    if (n == 1) {
        sel.field = WhitneyField({Jet(s.x(0), s.value(0), 0.0)});
        return sel;
    }

    const auto D = divided_differences(s).d;
    std::vector<double> gap(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) gap[i] = s.x(i + 1) - s.x(i);

    for (std::size_t i = 1; i < D.size(); ++i)
        if (D[i] < D[i - 1] - tol) return InfeasibilityReport{InfeasibilityKind::NotConvexOrder, i + 1, D[i - 1] - D[i]};

    std::vector<double> grad(n);
    if (n == 2) {
        grad[0] = grad[1] = D[0];
    } else {
        auto& L = sel.envelopes.left;
        auto& R = sel.envelopes.right;
        auto& P = sel.envelopes.plus;
        auto& Q = sel.envelopes.minus;
        L[0] = D[0] - 0.5 * M * gap[0];
        R[n - 1] = D[n - 2] + 0.5 * M * gap[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            L[i] = std::max(D[i - 1], D[i] - 0.5 * M * gap[i]);
            R[i] = std::min(D[i], D[i - 1] + 0.5 * M * gap[i - 1]);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            auto up = reach(M, D[i - 1] - L[i - 1], gap[i - 1], tol);
            auto down = reach(M, R[i + 1] - D[i], gap[i], tol);
            if (!up) return InfeasibilityReport{InfeasibilityKind::SymgViolation, i + 1, L[i - 1] - D[i - 1]};
            if (!down) return InfeasibilityReport{InfeasibilityKind::SymgViolation, i + 1, D[i] - R[i + 1]};
            P[i] = L[i - 1] + *up;
            Q[i] = R[i + 1] - *down;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double lo = std::max(Q[i], D[i - 1]);
            const double hi = std::min(P[i], D[i]);
            if (lo > hi + tol) return InfeasibilityReport{InfeasibilityKind::SymgViolation, i + 1, lo - hi};
            grad[i] = std::clamp(0.5 * (lo + hi), D[i - 1], std::max(D[i - 1], D[i]));
            // order violations within tol would otherwise leak into the gradients
            if (i > 1) grad[i] = std::max(grad[i], grad[i - 1]);
        }
        auto first = reach(M, grad[1] - D[0], gap[0], tol);
        auto last = reach(M, D[n - 2] - grad[n - 2], gap[n - 2], tol);
        if (!first) return InfeasibilityReport{InfeasibilityKind::SymgViolation, 2, D[0] - grad[1]};
        if (!last) return InfeasibilityReport{InfeasibilityKind::SymgViolation, n - 1, grad[n - 2] - D[n - 2]};
        grad[0] = grad[1] - *first;
        grad[n - 1] = grad[n - 2] + *last;
    }

    std::vector<Jet> jets;
    jets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) jets.emplace_back(s.x(i), s.value(i), grad[i]);
    sel.field = WhitneyField(std::move(jets));

    const auto pairs = wells_all_pairs(sel.field, 2.0 * M, tol);
    if (!pairs.ok) {
        const auto [a, b] = *pairs.first_failure;
        (void)b;
        return InfeasibilityReport{InfeasibilityKind::WellsViolation, a + 1, -pairs.min_residual};
    }
    return sel;
}

Jet areflm_jet(const Jet& jx, double y, double fy, double M, double tol)
{
    if (jx.dim() != 1) throw InputError("areflm_jet: jets must be one-dimensional");
    if (!(M > 0.0)) throw InputError("areflm_jet: M must be positive");
    const double x = jx.base[0];
    if (x == y) throw InputError("areflm_jet: points must be distinct");
    const double g = jx.grad1();
    const double D = (fy - jx.value) / (y - x);
    const double t = (D - g) * (y - x);
    const double cap = 0.5 * M * (y - x) * (y - x);
    if (t < -tol) throw InputError("areflm_jet: data lies below the jet's affine part (lower bound of the admissible window violated)");
    if (t > cap + tol) throw InputError("areflm_jet: value gap exceeds M/2 |y-x|^2 (upper bound of the admissible window violated)");
    const double r = std::sqrt(2.0 * M * std::clamp(t, 0.0, cap));
    return Jet(y, fy, x < y ? g + r : g - r);
}

double mono_h(double omega, double t) { return -t + std::sqrt(4.0 * omega * t); }

PairsCheck wells_all_pairs(const WhitneyField& field, double M, double tol)
{
    PairsCheck out;
    const std::size_t n = field.size();
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (field[i + 1].grad1() < field[i].grad1()) monotone = false;
        if (!wells_compatible(field[i], field[i + 1], M, tol).ok) out.adjacent_ok = false;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto c = wells_compatible(field[i], field[j], M, tol);
            out.min_residual = std::min(out.min_residual, c.min_residual());
            if (!c.ok && out.ok) {
                out.ok = false;
                out.first_failure = std::make_pair(i, j);
            }
        }
    // Adjacent tolerances can compound along a chain, hence the widened check.
    if (out.adjacent_ok && monotone && n > 2) {
        const double chain_tol = tol * static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n && out.transitivity_consistent; ++i)
            for (std::size_t j = i + 2; j < n; ++j)
                if (!wells_compatible(field[i], field[j], M, chain_tol).ok) {
                    out.transitivity_consistent = false;
                    break;
                }
    }
    return out;
}

namespace {

bool feasible_at(const SampleSet& s, double M, double tol)
{
    auto r = select_jets(s, M, tol);
    if (!succeeded(r)) return false;
    const auto& sel = std::get<JetSelection>(r);
    const auto F = build_extension(sel.field, s, 2.0 * M, tol);
    return verify_extension(F, s, 2.0 * M, 0.0, tol, &sel.field).ok;
}

}  // namespace

double minimal_M(const SampleSet& s, double rel_tol, double tol)
{
    require_1d(s, "minimal_M");
    const std::size_t n = s.size();
    if (n <= 2) return 0.0;
    const auto D = divided_differences(s).d;
    if (!convex_order_ok({D}, tol)) return kInfiniteM;
    const auto [dmin, dmax] = std::minmax_element(D.begin(), D.end());
    if (*dmax - *dmin <= tol) return 0.0;

    // Scale: twice the largest second divided difference.
    double M0 = 0.0;
    for (std::size_t i = 1; i < D.size(); ++i)
        M0 = std::max(M0, 2.0 * (D[i] - D[i - 1]) / (s.x(i + 1) - s.x(i - 1)));
    if (!(M0 > 0.0)) M0 = 1.0;
    const double M_hi_cap = std::ldexp(M0, 60);
    const double M_lo_cap = std::ldexp(M0, -60);

    // A failed extension verification is possible when tolerance effects bite
    // at large values; scale the absolute tolerance with the data.
    double scale = 1.0;
    for (double v : s.values()) scale = std::max(scale, std::abs(v));
    const double vtol = tol * scale;

    double lo = 0.0;
    double hi = M0;
    if (feasible_at(s, hi, vtol)) {
        while (true) {
            const double next = hi * 0.5;
            if (next < M_lo_cap) return 0.0;
            if (!feasible_at(s, next, vtol)) {
                lo = next;
                break;
            }
            hi = next;
        }
    } else {
        lo = hi;
        while (true) {
            hi = lo * 2.0;
            if (hi > M_hi_cap) return kInfiniteM;
            if (feasible_at(s, hi, vtol)) break;
            lo = hi;
        }
    }
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (feasible_at(s, mid, vtol))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n, std::size_t kmax)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t k = 1; k <= std::min(kmax, n); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            out.push_back(idx);
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == n - k + (pos - 1)) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

ScanReport finiteness_scan_1d(const SampleSet& s, double M, double eta, const ScanOptions& opts)
{
    require_1d(s, "finiteness_scan_1d");
    if (s.size() > 30 && !opts.allow_large) {
        std::ostringstream os;
        os << "finiteness_scan_1d: " << s.size() << " points exceeds the 30-point guard; pass the override to proceed";
        throw InputError(os.str());
    }
    ScanReport rep;
    for (auto& idx : enumerate_subsets(s.size(), opts.kmax)) {
        SubsetResult r;
        r.indices = idx;
        const auto reduced = oned_sc_reduce(s.subset(idx), eta, M).samples;
        auto sel = select_jets(reduced, M, opts.tol);
        r.feasible = succeeded(sel);
        if (!r.feasible) r.failure = std::get<InfeasibilityReport>(sel);
        r.minimal_M = minimal_M(reduced, 1e-6, opts.tol);
        rep.all_feasible = rep.all_feasible && r.feasible;
        rep.subsets.push_back(std::move(r));
        const auto k = rep.subsets.size() - 1;
        if (!rep.worst || rep.subsets[k].minimal_M > rep.subsets[*rep.worst].minimal_M) rep.worst = k;
    }
    return rep;
}

}  // namespace convexjet
