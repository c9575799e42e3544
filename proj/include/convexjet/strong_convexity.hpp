#pragma once

// Tilts that move between convex and strongly convex interpolation problems.

#include "convexjet/extension1d.hpp"
#include "convexjet/jet.hpp"

namespace convexjet {

enum class TiltMode { SampleTilt, FlexscTilt, OneDScaling };

struct TiltSpec {
    double eta = 0.0;
    double p = 2.0;
    TiltMode mode = TiltMode::SampleTilt;

    double q() const { return p / (p - 1.0); }
    void validate() const;
};

/// Same points; values f(x) - eta/2 |x|^2.
SampleSet tilt_samples(const SampleSet& s, double eta);

/// F(x) = G(x) + eta/2 x^2, as a piecewise representation with the same knots.
/// Lip(F') = Lip(G') + eta.
ConvexPW1D untilt_pw(const ConvexPW1D& G, double eta);

/// Per point: value f(x) - eta/(2p)|x|^2 and gradient grad - (eta/p) x. If the
/// input jets are strongly convex members (modulus eta) that are pairwise
/// compatible at M, the output is pairwise compatible at qM.
WhitneyField flexsc_transform(const WhitneyField& field, const SampleSet& samples, double eta, double p,
                              double tol = kDefaultTol);

/// Checks every pair of a transformed field at qM; throws WellsViolationError
/// naming the first offending pair.
void check_flexsc_contract(const WhitneyField& transformed, double q, double M, double tol = kDefaultTol);

/// Interpolates a strongly convex 1-D field: transform, build the convex
/// extension at qM, add back eta/(2p) x^2. The result is (eta/p)-strongly
/// convex with J_x F equal to the input jets and Lip(F') <= qM + eta/p.
ConvexPW1D scprop_extend_1d(const WhitneyField& field, const SampleSet& samples, double eta, double M, double p,
                            double tol = kDefaultTol);

struct ReducedSamples {
    SampleSet samples;
    double scale = 1.0;
};

/// g = (f - eta/2 x^2) / (1 + eta/M), scale = 1 + eta/M.
ReducedSamples oned_sc_reduce(const SampleSet& s, double eta, double M);

/// F = (1 + eta/M) G + eta/2 x^2; eta-strongly convex with
/// Lip(F') = (1 + eta/M) Lip(G') + eta.
ConvexPW1D oned_sc_reconstruct(const ConvexPW1D& G, double eta, double M);

}  // namespace convexjet
