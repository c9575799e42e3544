#pragma once

// Jet selection for convex C^{1,1} interpolation of scattered data on the
// line: divided differences, boundary envelopes, reachability envelopes, the
// selected Whitney field, infeasibility certificates, minimal budgets and
// finiteness scans over small subsets.

#include "convexjet/jet.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace convexjet {

/// d[i] = (f(x_{i+1}) - f(x_i)) / (x_{i+1} - x_i).
struct DividedDiffs {
    std::vector<double> d;
};

DividedDiffs divided_differences(const SampleSet& s);

/// True iff the slopes are nondecreasing within `tol`.
bool convex_order_ok(const DividedDiffs& d, double tol = kDefaultTol);

/// Per-point envelope gradients. Entries are indexed by sample (0-based);
/// entries a formula does not define are NaN: `left` is defined for all but
/// the last point, `right` for all but the first, `plus`/`minus` only at
/// interior points.
struct Envelopes {
    std::vector<double> left;
    std::vector<double> right;
    std::vector<double> plus;
    std::vector<double> minus;
};

struct JetSelection {
    WhitneyField field;
    Envelopes envelopes;
    double M_used = 0.0;
};

enum class InfeasibilityKind { NotConvexOrder, SymgViolation, WellsViolation };

std::string to_string(InfeasibilityKind k);

/// `index` is 1-based (the first sample is index 1). For NotConvexOrder it
/// names the first slope d[index] (1-based) that drops below its predecessor.
struct InfeasibilityReport {
    InfeasibilityKind kind = InfeasibilityKind::SymgViolation;
    std::size_t index = 0;
    double gap = 0.0;
};

using SelectResult = std::variant<JetSelection, InfeasibilityReport>;

inline bool succeeded(const SelectResult& r) { return std::holds_alternative<JetSelection>(r); }

/// Selects a Whitney field interpolating the samples. On success the
/// gradients are nondecreasing, each interior gradient lies between
/// max{plus^-, left slope} and min{plus^+, right slope}, and all pairs are
/// compatible at 2M.
SelectResult select_jets(const SampleSet& s, double M, double tol = kDefaultTol);

/// The reflected jet at y: value fy and gradient g +/- sqrt(2M t), with
/// t = <D - g, y - x> required to lie in [0, M/2 |y - x|^2]. The result is
/// compatible with `jx` at M, with inequality (b) holding with equality.
Jet areflm_jet(const Jet& jx, double y, double fy, double M, double tol = kDefaultTol);

/// h(t) = -t + sqrt(4 omega t); nondecreasing on [0, omega].
double mono_h(double omega, double t);

struct PairsCheck {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> first_failure;
    double min_residual = std::numeric_limits<double>::infinity();
    bool adjacent_ok = true;
    /// False when adjacent pairs and monotone gradients pass but some
    /// non-adjacent pair fails, contradicting 1-D transitivity.
    bool transitivity_consistent = true;
};

/// Checks compatibility at M over all pairs of a 1-D field sorted by base.
PairsCheck wells_all_pairs(const WhitneyField& field, double M, double tol = kDefaultTol);

inline constexpr double kInfiniteM = std::numeric_limits<double>::infinity();

/// Smallest M (within relative `rel_tol`) at which select_jets succeeds and
/// the extension built at 2M verifies; 0 when every M > 0 works and +inf
/// when none up to 2^60 does.
double minimal_M(const SampleSet& s, double rel_tol = 1e-6, double tol = kDefaultTol);

struct SubsetResult {
    std::vector<std::size_t> indices;
    bool feasible = false;        ///< at the scan's M
    double minimal_M = 0.0;       ///< of the (reduced) subset
    std::optional<InfeasibilityReport> failure;
};

struct ScanReport {
    std::vector<SubsetResult> subsets;  ///< lexicographic by size, then indices
    bool all_feasible = true;
    std::optional<std::size_t> worst;   ///< index into `subsets`, largest minimal_M
};

struct ScanOptions {
    std::size_t kmax = 5;
    bool allow_large = false;  ///< lift the N <= 30 guard
    double tol = kDefaultTol;
};

/// Runs the strongly convex reduction and select_jets at M on every subset of
/// size <= kmax.
ScanReport finiteness_scan_1d(const SampleSet& s, double M, double eta, const ScanOptions& opts = {});

/// All index subsets of {0..n-1} of size 1..kmax, by size then lexicographic.
std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n, std::size_t kmax);

}  // namespace convexjet
