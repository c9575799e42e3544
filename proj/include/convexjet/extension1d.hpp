#pragma once

// Convex piecewise-quadratic functions on the line, represented by their
// piecewise-linear derivative, and the construction of such a function from a
// compatible 1-D Whitney field.

#include "convexjet/jet.hpp"

#include <vector>

namespace convexjet {

/// A C^{1,1} function on R whose derivative is piecewise linear with
/// breakpoints `knots` and values `gvals` there. Outside [knots.front(),
/// knots.back()] the derivative continues with slope `tail_curvature`
/// (0 gives affine tails). The additive constant is fixed by F(anchor_x) =
/// anchor_value.
class ConvexPW1D {
public:
    ConvexPW1D() = default;
    ConvexPW1D(std::vector<double> knots, std::vector<double> gvals, double anchor_x, double anchor_value,
               double tail_curvature = 0.0);

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& gvals() const { return gvals_; }
    double anchor_x() const { return anchor_x_; }
    double anchor_value() const { return anchor_value_; }
    double tail_curvature() const { return tail_curvature_; }
    /// F at each knot.
    const std::vector<double>& knot_values() const { return fvals_; }

    double eval(double x) const;
    double eval_grad(double x) const;
    Jet jet_at(double x) const { return Jet(x, eval(x), eval_grad(x)); }

    /// Largest slope of the derivative profile, tails included.
    double lip_grad() const;
    /// Whether the derivative profile is nondecreasing.
    bool is_convex(double tol = 0.0) const;
    /// Whether F(x) - eta/2 x^2 is convex, read off the tilted profile.
    bool is_strongly_convex(double eta, double tol = 0.0) const;

private:
    std::size_t segment(double x) const;

    std::vector<double> knots_;
    std::vector<double> gvals_;
    std::vector<double> fvals_;
    double anchor_x_ = 0.0;
    double anchor_value_ = 0.0;
    double tail_curvature_ = 0.0;
};

/// Builds a convex extension with J_{x_i}F = field[i] and Lip(F') <= M from a
/// 1-D field that is pairwise compatible at M. On each interval the
/// derivative stays flat, rises at slope exactly M, then stays flat, with the
/// flat lead length chosen so the interval integral equals the value gap.
/// Throws WellsViolationError if an adjacent pair is incompatible at M.
ConvexPW1D build_extension(const WhitneyField& field, const SampleSet& samples, double M, double tol = kDefaultTol);

struct ExtensionReport {
    double max_value_residual = 0.0;
    double max_grad_residual = 0.0;  ///< only populated when a field is supplied
    double lip_grad = 0.0;
    double lip_excess = 0.0;         ///< lip_grad - M, clipped at 0
    double monotonicity_violation = 0.0;
    double strong_convexity_violation = 0.0;
    double min_wells_residual = 0.0;
    bool ok = false;
};

/// Checks interpolation, monotone profile, the Lipschitz budget, eta-strong
/// convexity (tilted profile) and pairwise compatibility of F's jets at the
/// sample points.
ExtensionReport verify_extension(const ConvexPW1D& F, const SampleSet& samples, double M, double eta,
                                 double tol = kDefaultTol, const WhitneyField* field = nullptr);

/// True iff F's jets at every pair of probes are compatible at M.
bool verify_jets_on_function(const ConvexPW1D& F, const std::vector<double>& probes, double M,
                             double tol = kDefaultTol);

}  // namespace convexjet
