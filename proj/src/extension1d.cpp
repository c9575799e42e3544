#include "convexjet/extension1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace convexjet {

ConvexPW1D::ConvexPW1D(std::vector<double> knots, std::vector<double> gvals, double anchor_x, double anchor_value,
                       double tail_curvature)
    : knots_(std::move(knots)),
      gvals_(std::move(gvals)),
      anchor_x_(anchor_x),
      anchor_value_(anchor_value),
      tail_curvature_(tail_curvature)
{
    if (knots_.empty()) throw InputError("ConvexPW1D needs at least one knot");
    if (knots_.size() != gvals_.size()) throw InputError("ConvexPW1D: knots and gvals differ in length");
    for (std::size_t k = 0; k < knots_.size(); ++k) {
        if (!std::isfinite(knots_[k]) || !std::isfinite(gvals_[k])) throw InputError("ConvexPW1D: non-finite entry");
        if (k > 0 && !(knots_[k - 1] < knots_[k])) throw InputError("ConvexPW1D: knots must be strictly increasing");
    }
    if (!std::isfinite(anchor_x_) || !std::isfinite(anchor_value_) || !std::isfinite(tail_curvature_))
        throw InputError("ConvexPW1D: non-finite anchor or tail curvature");

    // Integrate left to right from zero, then shift to honour the anchor.
    fvals_.assign(knots_.size(), 0.0);
    for (std::size_t k = 1; k < knots_.size(); ++k)
        fvals_[k] = fvals_[k - 1] + 0.5 * (gvals_[k - 1] + gvals_[k]) * (knots_[k] - knots_[k - 1]);
    const double shift = anchor_value_ - eval(anchor_x_);
    for (auto& v : fvals_) v += shift;
}

std::size_t ConvexPW1D::segment(double x) const
{
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double ConvexPW1D::eval(double x) const
{
    if (x <= knots_.front()) {
        const double d = x - knots_.front();
        return fvals_.front() + gvals_.front() * d + 0.5 * tail_curvature_ * d * d;
    }
    if (x >= knots_.back()) {
        const double d = x - knots_.back();
        return fvals_.back() + gvals_.back() * d + 0.5 * tail_curvature_ * d * d;
    }
    const std::size_t k = segment(x);
    const double h = knots_[k + 1] - knots_[k];
    const double t = x - knots_[k];
    const double slope = (gvals_[k + 1] - gvals_[k]) / h;
    return fvals_[k] + gvals_[k] * t + 0.5 * slope * t * t;
}

double ConvexPW1D::eval_grad(double x) const
{
    if (x <= knots_.front()) return gvals_.front() + tail_curvature_ * (x - knots_.front());
    if (x >= knots_.back()) return gvals_.back() + tail_curvature_ * (x - knots_.back());
    const std::size_t k = segment(x);
    const double w = (x - knots_[k]) / (knots_[k + 1] - knots_[k]);
    return gvals_[k] + w * (gvals_[k + 1] - gvals_[k]);
}

double ConvexPW1D::lip_grad() const
{
    double lip = std::abs(tail_curvature_);
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k)
        lip = std::max(lip, std::abs(gvals_[k + 1] - gvals_[k]) / (knots_[k + 1] - knots_[k]));
    return lip;
}

bool ConvexPW1D::is_convex(double tol) const
{
    if (tail_curvature_ < -tol) return false;
    for (std::size_t k = 0; k + 1 < gvals_.size(); ++k)
        if (gvals_[k + 1] < gvals_[k] - tol) return false;
    return true;
}

bool ConvexPW1D::is_strongly_convex(double eta, double tol) const
{
    if (tail_curvature_ < eta - tol) return false;
    for (std::size_t k = 0; k + 1 < gvals_.size(); ++k)
        if (gvals_[k + 1] - eta * knots_[k + 1] < gvals_[k] - eta * knots_[k] - tol) return false;
    return true;
}

ConvexPW1D build_extension(const WhitneyField& field, const SampleSet& samples, double M, double tol)
{
    if (!(M > 0.0)) throw InputError("build_extension: M must be positive");
    if (samples.dim() != 1) throw InputError("build_extension: samples must be one-dimensional");
    field.check_anchored(samples, tol);

    const std::size_t n = samples.size();
    std::vector<double> knots{samples.x(0)};
    std::vector<double> gvals{field[0].grad1()};

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xa = samples.x(i);
        const double xb = samples.x(i + 1);
        const double ga = field[i].grad1();
        const double gb = field[i + 1].grad1();
        const auto rep = wells_compatible(field[i], field[i + 1], M, tol);
        if (!rep.ok) {
            std::ostringstream os;
            os << "build_extension: jets " << i << " and " << i + 1 << " are not compatible at M=" << M
               << " (residuals " << rep.residual_a << ", " << rep.residual_b << ")";
            throw WellsViolationError(os.str(), i, i + 1, rep.min_residual());
        }
        const double dg = gb - ga;
        if (dg > 0.0) {
            const double gap = xb - xa;
            const double ramp = std::min(dg / M, gap);
            // residual_a is the flat lead times dg; clamp into the feasible window.
            const double lead = std::clamp(rep.residual_a / dg, 0.0, gap - ramp);
            double start = xa + lead;
            double end = start + ramp;
            if (end > xb) {
                end = xb;
                start = std::max(xa, end - ramp);
            }
            // Keep the realised ramp at least `ramp` long so its slope never exceeds M.
            while (end - start < ramp && start > xa) start = std::nextafter(start, xa);
            while (end - start < ramp && end < xb) end = std::nextafter(end, xb);
            if (start > knots.back()) {
                knots.push_back(start);
                gvals.push_back(ga);
            }
            if (end < xb && end > knots.back()) {
                knots.push_back(end);
                gvals.push_back(gb);
            }
        }
        knots.push_back(xb);
        gvals.push_back(gb);
    }
    return ConvexPW1D(std::move(knots), std::move(gvals), samples.x(0), samples.value(0));
}

ExtensionReport verify_extension(const ConvexPW1D& F, const SampleSet& samples, double M, double eta, double tol,
                                 const WhitneyField* field)
{
    ExtensionReport r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        r.max_value_residual = std::max(r.max_value_residual, std::abs(F.eval(samples.x(i)) - samples.value(i)));
        if (field)
            r.max_grad_residual =
                std::max(r.max_grad_residual, std::abs(F.eval_grad(samples.x(i)) - (*field)[i].grad1()));
    }
    const auto& kn = F.knots();
    const auto& gv = F.gvals();
    for (std::size_t k = 0; k + 1 < gv.size(); ++k) {
        r.monotonicity_violation = std::max(r.monotonicity_violation, gv[k] - gv[k + 1]);
        if (eta > 0.0)
            r.strong_convexity_violation =
                std::max(r.strong_convexity_violation, (gv[k] - eta * kn[k]) - (gv[k + 1] - eta * kn[k + 1]));
    }
    r.monotonicity_violation = std::max(r.monotonicity_violation, -F.tail_curvature());
    if (eta > 0.0) r.strong_convexity_violation = std::max(r.strong_convexity_violation, eta - F.tail_curvature());
    r.lip_grad = F.lip_grad();
    r.lip_excess = std::max(0.0, r.lip_grad - M);

    r.min_wells_residual = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            const auto c = wells_compatible(F.jet_at(samples.x(i)), F.jet_at(samples.x(j)), M, tol);
            r.min_wells_residual = std::min(r.min_wells_residual, c.min_residual());
        }

    r.ok = r.max_value_residual <= tol && r.max_grad_residual <= tol && r.lip_excess <= tol + 1e-12 * M &&
           r.monotonicity_violation <= tol && r.strong_convexity_violation <= tol && r.min_wells_residual >= -tol;
    return r;
}

bool verify_jets_on_function(const ConvexPW1D& F, const std::vector<double>& probes, double M, double tol)
{
    std::vector<Jet> jets;
    jets.reserve(probes.size());
    for (double x : probes) jets.push_back(F.jet_at(x));
    for (std::size_t i = 0; i < jets.size(); ++i)
        for (std::size_t j = i + 1; j < jets.size(); ++j)
            if (!wells_compatible(jets[i], jets[j], M, tol).ok) return false;
    return true;
}

}  // namespace convexjet
