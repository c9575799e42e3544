#pragma once

// Jets (affine polynomials anchored at a base point), sample sets, Whitney
// fields and the pairwise compatibility relation used throughout the library.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace convexjet {

/// Default absolute tolerance for inequality predicates (function units).
inline constexpr double kDefaultTol = 1e-9;

/// Raised when an operation's preconditions are not met by its inputs.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a pair of jets fails the compatibility relation where it is required.
class WellsViolationError : public std::domain_error {
public:
    WellsViolationError(const std::string& what, std::size_t i, std::size_t j, double residual)
        : std::domain_error(what), first(i), second(j), residual(residual) {}
    std::size_t first;
    std::size_t second;
    double residual;
};

class Point {
public:
    Point() = default;
    Point(double x) : coords_{x} {}  // NOLINT: 1-D convenience
    Point(std::initializer_list<double> c) : coords_(c) {}
    explicit Point(std::vector<double> c) : coords_(std::move(c)) {}

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t k) const { return coords_[k]; }
    double& operator[](std::size_t k) { return coords_[k]; }
    std::span<const double> coords() const { return coords_; }
    const std::vector<double>& vec() const { return coords_; }

    bool operator==(const Point&) const = default;

private:
    std::vector<double> coords_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);
double dist(const Point& a, const Point& b);
double dist_sq(const Point& a, const Point& b);
std::vector<double> diff(std::span<const double> a, std::span<const double> b);

/// An affine polynomial y -> value + <gradient, y - base>.
struct Jet {
    Point base;
    double value = 0.0;
    std::vector<double> gradient;

    Jet() = default;
    Jet(Point b, double v, std::vector<double> g);
    /// 1-D convenience.
    Jet(double b, double v, double g) : Jet(Point{b}, v, std::vector<double>{g}) {}

    std::size_t dim() const { return base.dim(); }
    double grad1() const { return gradient.at(0); }
};

double eval_jet(const Jet& j, const Point& x);

/// Finite set of pairwise distinct points with a value at each. In dimension
/// one the points are stored in increasing order.
class SampleSet {
public:
    SampleSet() = default;
    SampleSet(std::vector<Point> points, std::vector<double> values);
    /// 1-D convenience.
    SampleSet(const std::vector<double>& xs, std::vector<double> values);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.empty() ? 0 : points_.front().dim(); }
    bool empty() const { return points_.empty(); }

    const std::vector<Point>& points() const { return points_; }
    const std::vector<double>& values() const { return values_; }
    const Point& point(std::size_t i) const { return points_[i]; }
    double value(std::size_t i) const { return values_[i]; }
    double x(std::size_t i) const { return points_[i][0]; }

    std::optional<std::size_t> index_of(const Point& p) const;
    SampleSet subset(std::span<const std::size_t> idx) const;

private:
    std::vector<Point> points_;
    std::vector<double> values_;
};

/// One jet per sample point, in sample order.
class WhitneyField {
public:
    WhitneyField() = default;
    explicit WhitneyField(std::vector<Jet> jets);

    std::size_t size() const { return jets_.size(); }
    const Jet& operator[](std::size_t i) const { return jets_[i]; }
    const std::vector<Jet>& jets() const { return jets_; }
    auto begin() const { return jets_.begin(); }
    auto end() const { return jets_.end(); }

    /// Throws InputError unless jet i is based at sample point i and, when
    /// `value_tol` is given, carries the sample value within that tolerance.
    void check_anchored(const SampleSet& s, std::optional<double> value_tol = std::nullopt) const;

private:
    std::vector<Jet> jets_;
};

struct Params {
    double M = 1.0;
    double eta = 0.0;
    double p = 2.0;
    double q = 2.0;

    static Params with_p(double M, double eta, double p);
    void validate() const;
};

/// Residuals of the two compatibility inequalities; each is nonnegative iff
/// the inequality holds.
struct CompatReport {
    bool ok = false;
    double residual_a = 0.0;
    double residual_b = 0.0;

    double min_residual() const { return residual_a < residual_b ? residual_a : residual_b; }
};

CompatReport wells_compatible(const Jet& jx, const Jet& jy, double M, double tol = kDefaultTol);

struct WellsConsequences {
    bool grad_gap_ok = false;
    bool value_gap_ok = false;
};

/// Checks |grad gap| <= M|x-y| and both value gaps <= M|x-y|^2, which hold
/// whenever the pair is compatible at M.
WellsConsequences wells_consequences(const Jet& jx, const Jet& jy, double M, double tol = kDefaultTol);

/// Smallest M' at which the pair is compatible (0 for equal gradients whose
/// value gaps are nonnegative, +inf if no M' works).
double wells_constant(const Jet& jx, const Jet& jy);

/// Membership of `j` in the strongly convex jet set of the samples at its
/// base: anchored at the sample value and, for every other sample y,
/// j(y) + eta/2 |y - base|^2 <= f(y).
bool gamma_membership(const Jet& j, const SampleSet& samples, double eta, double tol = kDefaultTol);

}  // namespace convexjet
