#include "convexjet/strong_convexity.hpp"

#include "convexjet/interp1d.hpp"

#include <cmath>
#include <sstream>

namespace convexjet {

void TiltSpec::validate() const
{
    if (!(eta >= 0.0)) throw InputError("tilt: eta must be nonnegative");
    if (!(p > 1.0)) throw InputError("tilt: p must exceed 1");
}

SampleSet tilt_samples(const SampleSet& s, double eta)
{
    if (!(eta >= 0.0)) throw InputError("tilt_samples: eta must be nonnegative");
    std::vector<double> v(s.values());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] -= 0.5 * eta * norm_sq(s.point(i).coords());
    return SampleSet(s.points(), std::move(v));
}

ConvexPW1D untilt_pw(const ConvexPW1D& G, double eta)
{
    if (!(eta >= 0.0)) throw InputError("untilt_pw: eta must be nonnegative");
    if (eta == 0.0) return G;
    std::vector<double> g(G.gvals());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += eta * G.knots()[k];
    const double ax = G.anchor_x();
    return ConvexPW1D(G.knots(), std::move(g), ax, G.anchor_value() + 0.5 * eta * ax * ax,
                      G.tail_curvature() + eta);
}

WhitneyField flexsc_transform(const WhitneyField& field, const SampleSet& samples, double eta, double p, double tol)
{
    TiltSpec{eta, p, TiltMode::FlexscTilt}.validate();
    field.check_anchored(samples, tol);
    std::vector<Jet> out;
    out.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        const auto& x = samples.point(i);
        std::vector<double> g(field[i].gradient);
        for (std::size_t k = 0; k < g.size(); ++k) g[k] -= (eta / p) * x[k];
        out.emplace_back(x, samples.value(i) - eta / (2.0 * p) * norm_sq(x.coords()), std::move(g));
    }
    return WhitneyField(std::move(out));
}

void check_flexsc_contract(const WhitneyField& transformed, double q, double M, double tol)
{
    for (std::size_t i = 0; i < transformed.size(); ++i)
        for (std::size_t j = i + 1; j < transformed.size(); ++j) {
            const auto c = wells_compatible(transformed[i], transformed[j], q * M, tol);
            if (!c.ok) {
                std::ostringstream os;
                os << "transformed jets " << i << " and " << j << " are not compatible at qM=" << q * M
                   << " (min residual " << c.min_residual() << ")";
                throw WellsViolationError(os.str(), i, j, c.min_residual());
            }
        }
}

ConvexPW1D scprop_extend_1d(const WhitneyField& field, const SampleSet& samples, double eta, double M, double p,
                            double tol)
{
    if (samples.dim() != 1) throw InputError("scprop_extend_1d: samples must be one-dimensional");
    if (!(eta > 0.0) || !(M >= eta)) throw InputError("scprop_extend_1d: requires M >= eta > 0");
    const double q = p / (p - 1.0);
    const auto P = flexsc_transform(field, samples, eta, p, tol);
    check_flexsc_contract(P, q, M, tol);
    const auto G = build_extension(P, tilt_samples(samples, eta / p), q * M, tol);
    return untilt_pw(G, eta / p);
}

ReducedSamples oned_sc_reduce(const SampleSet& s, double eta, double M)
{
    if (s.dim() != 1) throw InputError("oned_sc_reduce: samples must be one-dimensional");
    if (!(M > 0.0) || !(eta >= 0.0)) throw InputError("oned_sc_reduce: requires M > 0 and eta >= 0");
    if (eta == 0.0) return {s, 1.0};
    const double scale = 1.0 + eta / M;
    auto t = tilt_samples(s, eta);
    std::vector<double> v(t.values());
    for (auto& x : v) x /= scale;
    return {SampleSet(s.points(), std::move(v)), scale};
}

ConvexPW1D oned_sc_reconstruct(const ConvexPW1D& G, double eta, double M)
{
    if (!(M > 0.0) || !(eta >= 0.0)) throw InputError("oned_sc_reconstruct: requires M > 0 and eta >= 0");
    if (eta == 0.0) return G;
    const double scale = 1.0 + eta / M;
    std::vector<double> g(G.gvals());
    for (auto& v : g) v *= scale;
    ConvexPW1D scaled(G.knots(), std::move(g), G.anchor_x(), scale * G.anchor_value(), scale * G.tail_curvature());
    return untilt_pw(scaled, eta);
}

}  // namespace convexjet
