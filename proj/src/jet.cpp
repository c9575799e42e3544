#include "convexjet/jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace convexjet {

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw InputError("dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

std::vector<double> diff(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) throw InputError("dimension mismatch");
    std::vector<double> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
    return d;
}

double dist_sq(const Point& a, const Point& b) { return norm_sq(diff(a.coords(), b.coords())); }

double dist(const Point& a, const Point& b) { return std::sqrt(dist_sq(a, b)); }

namespace {

bool all_finite(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Jet::Jet(Point b, double v, std::vector<double> g) : base(std::move(b)), value(v), gradient(std::move(g))
{
    if (base.dim() == 0) throw InputError("jet base must have dimension >= 1");
    if (gradient.size() != base.dim()) throw InputError("jet gradient length differs from base dimension");
    if (!all_finite(base.coords()) || !std::isfinite(value) || !all_finite(gradient))
        throw InputError("jet has non-finite entries");
}

double eval_jet(const Jet& j, const Point& x)
{
    if (x.dim() != j.dim()) throw InputError("eval_jet: dimension mismatch");
    return j.value + dot(j.gradient, diff(x.coords(), j.base.coords()));
}

SampleSet::SampleSet(std::vector<Point> points, std::vector<double> values)
{
    if (points.size() != values.size()) throw InputError("points and values have different lengths");
    if (points.empty()) throw InputError("sample set is empty");
    const std::size_t n = points.front().dim();
    if (n == 0) throw InputError("points must have dimension >= 1");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != n) throw InputError("points have inconsistent dimensions");
        if (!all_finite(points[i].coords()) || !std::isfinite(values[i]))
            throw InputError("sample set has non-finite entries");
    }

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    if (n == 1) {
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a][0] < points[b][0]; });
        for (std::size_t k = 1; k < order.size(); ++k)
            if (!(points[order[k - 1]][0] < points[order[k]][0])) {
                std::ostringstream os;
                os << "duplicate sample point x=" << points[order[k]][0];
                throw InputError(os.str());
            }
    } else {
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (!(dist_sq(points[i], points[j]) > 0.0)) {
                    std::ostringstream os;
                    os << "duplicate sample points at indices " << i << " and " << j;
                    throw InputError(os.str());
                }
    }
    points_.reserve(points.size());
    values_.reserve(points.size());
    for (auto k : order) {
        points_.push_back(std::move(points[k]));
        values_.push_back(values[k]);
    }
}

SampleSet::SampleSet(const std::vector<double>& xs, std::vector<double> values)
    : SampleSet(
          [&] {
              std::vector<Point> p;
              p.reserve(xs.size());
              for (double x : xs) p.emplace_back(x);
              return p;
          }(),
          std::move(values))
{
}

std::optional<std::size_t> SampleSet::index_of(const Point& p) const
{
    if (dim() == 1 && p.dim() == 1) {
        auto it = std::lower_bound(points_.begin(), points_.end(), p[0],
                                   [](const Point& a, double x) { return a[0] < x; });
        if (it != points_.end() && (*it)[0] == p[0]) return static_cast<std::size_t>(it - points_.begin());
        return std::nullopt;
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i] == p) return i;
    return std::nullopt;
}

SampleSet SampleSet::subset(std::span<const std::size_t> idx) const
{
    std::vector<Point> p;
    std::vector<double> v;
    for (auto i : idx) {
        p.push_back(points_.at(i));
        v.push_back(values_.at(i));
    }
    return SampleSet(std::move(p), std::move(v));
}

WhitneyField::WhitneyField(std::vector<Jet> jets) : jets_(std::move(jets))
{
    for (const auto& j : jets_)
        if (j.dim() != jets_.front().dim()) throw InputError("Whitney field jets have inconsistent dimensions");
}

void WhitneyField::check_anchored(const SampleSet& s, std::optional<double> value_tol) const
{
    if (jets_.size() != s.size()) throw InputError("Whitney field size differs from sample count");
    for (std::size_t i = 0; i < jets_.size(); ++i) {
        if (!(jets_[i].base == s.point(i))) {
            std::ostringstream os;
            os << "jet " << i << " is not based at sample point " << i;
            throw InputError(os.str());
        }
        if (value_tol && std::abs(jets_[i].value - s.value(i)) > *value_tol) {
            std::ostringstream os;
            os << "jet " << i << " value " << jets_[i].value << " differs from sample value " << s.value(i);
            throw InputError(os.str());
        }
    }
}

Params Params::with_p(double M, double eta, double p)
{
    Params out{M, eta, p, p / (p - 1.0)};
    out.validate();
    return out;
}

void Params::validate() const
{
    if (!(M > 0.0)) throw InputError("M must be positive");
    if (!(eta >= 0.0)) throw InputError("eta must be nonnegative");
    if (!(M > eta)) throw InputError("M must exceed eta");
    if (!(p > 1.0) || !(q > 1.0)) throw InputError("p and q must exceed 1");
    if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) throw InputError("p and q must be conjugate exponents");
}

CompatReport wells_compatible(const Jet& jx, const Jet& jy, double M, double tol)
{
    if (!(M > 0.0)) throw InputError("wells_compatible: M must be positive");
    if (jx.dim() != jy.dim()) throw InputError("wells_compatible: dimension mismatch");
    const double penalty = norm_sq(diff(jx.gradient, jy.gradient)) / (2.0 * M);
    CompatReport r;
    r.residual_a = jx.value - eval_jet(jy, jx.base) - penalty;
    r.residual_b = jy.value - eval_jet(jx, jy.base) - penalty;
    r.ok = r.residual_a >= -tol && r.residual_b >= -tol;
    return r;
}

WellsConsequences wells_consequences(const Jet& jx, const Jet& jy, double M, double tol)
{
    const double d2 = dist_sq(jx.base, jy.base);
    const double g = std::sqrt(norm_sq(diff(jx.gradient, jy.gradient)));
    const double gap_x = jx.value - eval_jet(jy, jx.base);
    const double gap_y = jy.value - eval_jet(jx, jy.base);
    WellsConsequences out;
    out.grad_gap_ok = g <= M * std::sqrt(d2) + tol;
    out.value_gap_ok = gap_x <= M * d2 + tol && gap_y <= M * d2 + tol;
    return out;
}

double wells_constant(const Jet& jx, const Jet& jy)
{
    const double g2 = norm_sq(diff(jx.gradient, jy.gradient));
    const double gap = std::min(jx.value - eval_jet(jy, jx.base), jy.value - eval_jet(jx, jy.base));
    if (g2 == 0.0) return gap >= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (!(gap > 0.0)) return std::numeric_limits<double>::infinity();
    return g2 / (2.0 * gap);
}

bool gamma_membership(const Jet& j, const SampleSet& samples, double eta, double tol)
{
    auto idx = samples.index_of(j.base);
    if (!idx) throw InputError("gamma_membership: jet base is not a sample point");
    if (std::abs(j.value - samples.value(*idx)) > tol) return false;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (k == *idx) continue;
        const auto& y = samples.point(k);
        if (eval_jet(j, y) + 0.5 * eta * dist_sq(y, j.base) > samples.value(k) + tol) return false;
    }
    return true;
}

}  // namespace convexjet
