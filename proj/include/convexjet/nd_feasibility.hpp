#pragma once

// Feasibility analysis for strongly convex C^{1,1} interpolation in R^n at
// desk scale: admissible-gradient polyhedra, LP emptiness, compatibility
// matrices, a numerical Lipschitz gradient selection, and subset scans.
//
// The selection routine is a bisection over the Lipschitz bound with cyclic
// projections deciding each trial; it has no convergence guarantee, so the
// bound it reports is a heuristic upper bound.

#include "convexjet/jet.hpp"

#include <optional>
#include <string>
#include <vector>

namespace convexjet {

struct HalfSpace {
    std::vector<double> normal;
    double offset = 0.0;
};

/// Gradients g admissible at `base`: <g, y - base> <= f(y) - f(base) - eta/2 |y - base|^2
/// for every other sample y, one row per y.
struct GammaPolyhedron {
    Point base;
    std::vector<HalfSpace> rows;

    std::size_t dim() const { return base.dim(); }
    /// Largest row violation of g (0 when g is admissible).
    double violation(const std::vector<double>& g) const;
};

GammaPolyhedron gamma_polyhedron(const SampleSet& s, const Point& x, double eta);
GammaPolyhedron gamma_polyhedron(const SampleSet& s, std::size_t index, double eta);

struct PolyhedronCheck {
    bool nonempty = false;
    std::vector<double> witness;
    /// Signed radius of the largest inscribed ball (capped at 1); negative
    /// when empty.
    double depth = 0.0;
    bool near_degenerate = false;
};

/// Decides emptiness by a Chebyshev-centre LP; the witness is that centre.
PolyhedronCheck polyhedron_nonempty(const GammaPolyhedron& P, double tol = kDefaultTol);

struct WellsMatrix {
    std::vector<std::vector<double>> residuals;  ///< [i][j] = residual_a of (field[i], field[j])
    double M = 0.0;

    double min_entry() const;
    bool ok(double tol = kDefaultTol) const { return min_entry() >= -tol; }
};

WellsMatrix wells_matrix(const WhitneyField& field, double M);

struct SelectionOptions {
    int max_sweeps = 10000;
    double violation_tol = 1e-8;
    double bisection_rel = 1e-4;
    double tol = kDefaultTol;
};

struct SelectionResult {
    bool feasible = false;              ///< false iff some polyhedron is empty
    std::optional<std::size_t> empty_at;
    std::vector<std::vector<double>> gradients;
    double L = 0.0;                     ///< measured max |g_x - g_y| / |x - y|
    bool budget_exhausted = false;      ///< some trial bound was rejected on the sweep budget
    bool heuristic_upper_bound = true;
};

/// Picks g_x in each polyhedron, approximately minimising max |g_x - g_y|/|x - y|.
SelectionResult lipschitz_selection_desk(const SampleSet& s, double eta, const SelectionOptions& opts = {});

/// The same, restricted to the samples at `subset` but with polyhedra built
/// from the full sample set.
SelectionResult lipschitz_selection_desk(const SampleSet& s, double eta, const std::vector<std::size_t>& subset,
                                         const SelectionOptions& opts = {});

struct CertificateReport {
    bool ok = false;
    std::string failed_stage;  ///< empty on success
    double L = 0.0;
    double C_prime = 0.0;                 ///< L / M
    bool membership_ok = false;
    double wells_bound = 0.0;             ///< L^2 / eta
    double wells_constant = 0.0;          ///< measured
    bool wells_ok = false;
    double flexsc_bound = 0.0;            ///< q L^2 / eta
    double flexsc_wells_constant = 0.0;   ///< measured on the transformed field
    bool flexsc_ok = false;
    WhitneyField field;
};

/// Selects gradients, anchors jets at the sample values and checks the chain:
/// strongly convex membership, compatibility at L^2/eta, and compatibility of
/// the tilted field at q L^2/eta. Requires eta > 0.
CertificateReport scthm_certificate(const SampleSet& s, double eta, double M, double p,
                                    const SelectionOptions& opts = {});

/// Whether two jets admit an eta-strongly convex C^{1,1} interpolant with
/// Lip(F') <= Mcap: tilt both by -eta/2 |x|^2 and test compatibility at
/// Mcap - eta. Requires Mcap > eta.
bool sc_pair_feasible(const Jet& jx, const Jet& jy, double eta, double Mcap, double tol = kDefaultTol);

/// max over the field of eval_jet(P_y, x): a convex piecewise-affine extension.
double lipschitz_convex_eval(const WhitneyField& field, const Point& x);

struct NdSubsetResult {
    std::vector<std::size_t> indices;
    bool polyhedra_nonempty = false;
    bool pass = false;
    double L = 0.0;
};

/// A necessary-condition scan: passing does not certify an extension.
struct NdScanReport {
    std::vector<NdSubsetResult> subsets;
    bool all_pass = true;
    std::optional<std::size_t> worst;  ///< failing subset, else largest L
    std::string label = "necessary conditions only";
};

NdScanReport finiteness_scan_nd(const SampleSet& s, double eta, std::size_t kmax, bool allow_large = false,
                                const SelectionOptions& opts = {});

}  // namespace convexjet
