#include "convexjet/nd_feasibility.hpp"

#include "convexjet/interp1d.hpp"
#include "convexjet/lp.hpp"
#include "convexjet/strong_convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace convexjet {

double GammaPolyhedron::violation(const std::vector<double>& g) const
{
    double v = 0.0;
    for (const auto& r : rows) v = std::max(v, dot(r.normal, g) - r.offset);
    return v;
}

GammaPolyhedron gamma_polyhedron(const SampleSet& s, std::size_t index, double eta)
{
    if (index >= s.size()) throw InputError("gamma_polyhedron: index out of range");
    if (!(eta >= 0.0)) throw InputError("gamma_polyhedron: eta must be nonnegative");
    GammaPolyhedron P;
    P.base = s.point(index);
    const double fx = s.value(index);
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k == index) continue;
        auto n = diff(s.point(k).coords(), P.base.coords());
        const double off = s.value(k) - fx - 0.5 * eta * norm_sq(n);
        P.rows.push_back({std::move(n), off});
    }
    return P;
}

GammaPolyhedron gamma_polyhedron(const SampleSet& s, const Point& x, double eta)
{
    auto idx = s.index_of(x);
    if (!idx) throw InputError("gamma_polyhedron: point is not a sample");
    return gamma_polyhedron(s, *idx, eta);
}

PolyhedronCheck polyhedron_nonempty(const GammaPolyhedron& P, double tol)
{
    const std::size_t n = P.dim();
    PolyhedronCheck out;
    if (P.rows.empty()) {
        out.nonempty = true;
        out.witness.assign(n, 0.0);
        out.depth = 1.0;
        return out;
    }

    // Normalised rows a.g + r <= b with r the inscribed radius. Shift r by R0
    // so the origin is feasible, split g into positive parts, cap r at 1.
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const auto& row : P.rows) {
        const double nrm = std::sqrt(norm_sq(row.normal));
        if (!(nrm > 0.0)) throw InputError("polyhedron_nonempty: zero normal");
        std::vector<double> r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = row.normal[k] / nrm;
        a.push_back(std::move(r));
        b.push_back(row.offset / nrm);
    }
    const double R0 = std::max(0.0, -*std::min_element(b.begin(), b.end()));
    constexpr double cap = 1.0;

    const std::size_t nv = 2 * n + 1;
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = a[i][k];
            row[n + k] = -a[i][k];
        }
        row[2 * n] = 1.0;
        A.push_back(std::move(row));
        rhs.push_back(b[i] + R0);
    }
    std::vector<double> capped(nv, 0.0);
    capped[2 * n] = 1.0;
    A.push_back(std::move(capped));
    rhs.push_back(cap + R0);
    std::vector<double> c(nv, 0.0);
    c[2 * n] = 1.0;

    const auto sol = lp::maximize(c, A, rhs);
    if (sol.status != lp::Status::Optimal) throw std::runtime_error("polyhedron_nonempty: LP did not reach optimality");
    out.witness.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.witness[k] = sol.x[k] - sol.x[n + k];
    out.depth = sol.x[2 * n] - R0;
    out.nonempty = out.depth >= -tol;
    out.near_degenerate = std::abs(out.depth) <= tol;
    return out;
}

double WellsMatrix::min_entry() const
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < residuals.size(); ++i)
        for (std::size_t j = 0; j < residuals[i].size(); ++j)
            if (i != j) m = std::min(m, residuals[i][j]);
    return m;
}

WellsMatrix wells_matrix(const WhitneyField& field, double M)
{
    WellsMatrix W;
    W.M = M;
    const std::size_t n = field.size();
    W.residuals.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) W.residuals[i][j] = wells_compatible(field[i], field[j], M).residual_a;
    return W;
}

namespace {

struct ShrunkRows {
    std::vector<std::vector<double>> normal;  // unit normals
    std::vector<double> offset;
};

class ProjectionSolver {
public:
    ProjectionSolver(std::vector<Point> pts, std::vector<ShrunkRows> rows) : pts_(std::move(pts)), rows_(std::move(rows))
    {
        const std::size_t n = pts_.size();
        d_.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d_[i][j] = dist(pts_[i], pts_[j]);
    }

    // Cyclic projections from `g`; true if the violation drops below tol.
    bool run(std::vector<std::vector<double>>& g, double L, int max_sweeps, double tol) const
    {
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            sweep_once(g, L);
            if (violation(g, L) < tol) return true;
        }
        return false;
    }

    double ratio(const std::vector<std::vector<double>>& g) const
    {
        double L = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j)
                L = std::max(L, std::sqrt(norm_sq(diff(g[i], g[j]))) / d_[i][j]);
        return L;
    }

private:
    void sweep_once(std::vector<std::vector<double>>& g, double L) const
    {
        const std::size_t n = g.size();
        const std::size_t dim = g.empty() ? 0 : g[0].size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto delta = diff(g[j], g[i]);
                const double r = std::sqrt(norm_sq(delta));
                const double cap = L * d_[i][j];
                if (r > cap) {
                    const double move = 0.5 * (r - cap) / r;
                    for (std::size_t k = 0; k < dim; ++k) {
                        g[i][k] += move * delta[k];
                        g[j][k] -= move * delta[k];
                    }
                }
            }
        for (std::size_t i = 0; i < n; ++i) {
            const auto& R = rows_[i];
            for (std::size_t r = 0; r < R.normal.size(); ++r) {
                const double v = dot(R.normal[r], g[i]) - R.offset[r];
                if (v > 0.0)
                    for (std::size_t k = 0; k < dim; ++k) g[i][k] -= v * R.normal[r][k];
            }
        }
    }

    double violation(const std::vector<std::vector<double>>& g, double L) const
    {
        double v = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto& R = rows_[i];
            for (std::size_t r = 0; r < R.normal.size(); ++r) v = std::max(v, dot(R.normal[r], g[i]) - R.offset[r]);
            for (std::size_t j = i + 1; j < g.size(); ++j)
                v = std::max(v, std::sqrt(norm_sq(diff(g[i], g[j]))) - L * d_[i][j]);
        }
        return v;
    }

    std::vector<Point> pts_;
    std::vector<ShrunkRows> rows_;
    std::vector<std::vector<double>> d_;
};

SelectionResult select_with_polyhedra(const SampleSet& s, const std::vector<GammaPolyhedron>& polys,
                                      const std::vector<PolyhedronCheck>& checks,
                                      const std::vector<std::size_t>& subset, const SelectionOptions& opts)
{
    SelectionResult out;
    for (auto i : subset)
        if (!checks[i].nonempty) {
            out.empty_at = i;
            return out;
        }
    out.feasible = true;

    std::vector<Point> pts;
    std::vector<ShrunkRows> rows;
    std::vector<std::vector<double>> g;
    for (auto i : subset) {
        pts.push_back(s.point(i));
        // Shrink each polyhedron slightly so accepted iterates are strictly admissible.
        const double margin = std::clamp(0.5 * checks[i].depth, 0.0, opts.violation_tol);
        ShrunkRows R;
        for (const auto& h : polys[i].rows) {
            const double nrm = std::sqrt(norm_sq(h.normal));
            std::vector<double> u(h.normal);
            for (auto& v : u) v /= nrm;
            R.normal.push_back(std::move(u));
            R.offset.push_back(h.offset / nrm - margin);
        }
        rows.push_back(std::move(R));
        g.push_back(checks[i].witness);
    }
    const ProjectionSolver solver(std::move(pts), std::move(rows));

    double hi = solver.ratio(g);
    double lo = 0.0;
    auto best = g;
    if (hi > 0.0) {
        for (int it = 0; it < 200 && hi - lo > opts.bisection_rel * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            auto trial = best;
            if (solver.run(trial, mid, opts.max_sweeps, opts.violation_tol)) {
                best = std::move(trial);
                hi = std::max(mid, solver.ratio(best));
                hi = std::min(hi, mid + opts.violation_tol);
            } else {
                lo = mid;
                out.budget_exhausted = true;
            }
        }
    }
    out.gradients = std::move(best);
    out.L = solver.ratio(out.gradients);
    return out;
}

}  // namespace

SelectionResult lipschitz_selection_desk(const SampleSet& s, double eta, const std::vector<std::size_t>& subset,
                                         const SelectionOptions& opts)
{
    std::vector<GammaPolyhedron> polys;
    std::vector<PolyhedronCheck> checks;
    for (std::size_t i = 0; i < s.size(); ++i) {
        polys.push_back(gamma_polyhedron(s, i, eta));
        checks.push_back(polyhedron_nonempty(polys.back(), opts.tol));
    }
    return select_with_polyhedra(s, polys, checks, subset, opts);
}

SelectionResult lipschitz_selection_desk(const SampleSet& s, double eta, const SelectionOptions& opts)
{
    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return lipschitz_selection_desk(s, eta, all, opts);
}

CertificateReport scthm_certificate(const SampleSet& s, double eta, double M, double p, const SelectionOptions& opts)
{
    if (!(eta > 0.0)) throw InputError("scthm_certificate: eta must be positive");
    if (!(M > 0.0)) throw InputError("scthm_certificate: M must be positive");
    if (!(p > 1.0)) throw InputError("scthm_certificate: p must exceed 1");
    const double q = p / (p - 1.0);

    CertificateReport rep;
    const auto sel = lipschitz_selection_desk(s, eta, opts);
    if (!sel.feasible) {
        rep.failed_stage = "selection: empty admissible-gradient polyhedron";
        return rep;
    }
    rep.L = sel.L;
    rep.C_prime = sel.L / M;

    std::vector<Jet> jets;
    for (std::size_t i = 0; i < s.size(); ++i) jets.emplace_back(s.point(i), s.value(i), sel.gradients[i]);
    rep.field = WhitneyField(std::move(jets));

    rep.membership_ok = true;
    for (const auto& j : rep.field) rep.membership_ok = rep.membership_ok && gamma_membership(j, s, eta, opts.tol);

    auto measured = [](const WhitneyField& f) {
        double c = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) c = std::max(c, wells_constant(f[i], f[j]));
        return c;
    };
    auto all_ok = [&](const WhitneyField& f, double Mw) {
        if (!(Mw > 0.0)) return f.size() <= 1;
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j)
                if (!wells_compatible(f[i], f[j], Mw, opts.tol).ok) return false;
        return true;
    };

    rep.wells_bound = sel.L * sel.L / eta;
    rep.wells_constant = measured(rep.field);
    rep.wells_ok = s.size() <= 1 || all_ok(rep.field, rep.wells_bound);

    const auto P = flexsc_transform(rep.field, s, eta, p, opts.tol);
    rep.flexsc_bound = q * rep.wells_bound;
    rep.flexsc_wells_constant = measured(P);
    rep.flexsc_ok = s.size() <= 1 || all_ok(P, rep.flexsc_bound);

    if (!rep.membership_ok)
        rep.failed_stage = "membership";
    else if (!rep.wells_ok)
        rep.failed_stage = "compatibility at L^2/eta";
    else if (!rep.flexsc_ok)
        rep.failed_stage = "compatibility of tilted field at qL^2/eta";
    rep.ok = rep.failed_stage.empty();
    return rep;
}

bool sc_pair_feasible(const Jet& jx, const Jet& jy, double eta, double Mcap, double tol)
{
    if (!(eta >= 0.0)) throw InputError("sc_pair_feasible: eta must be nonnegative");
    if (!(Mcap > eta)) throw InputError("sc_pair_feasible: Mcap must exceed eta");
    auto tilt = [eta](const Jet& j) {
        std::vector<double> g(j.gradient);
        for (std::size_t k = 0; k < g.size(); ++k) g[k] -= eta * j.base[k];
        return Jet(j.base, j.value - 0.5 * eta * norm_sq(j.base.coords()), std::move(g));
    };
    return wells_compatible(tilt(jx), tilt(jy), Mcap - eta, tol).ok;
}

double lipschitz_convex_eval(const WhitneyField& field, const Point& x)
{
    if (field.size() == 0) throw InputError("lipschitz_convex_eval: empty field");
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& j : field) v = std::max(v, eval_jet(j, x));
    return v;
}

NdScanReport finiteness_scan_nd(const SampleSet& s, double eta, std::size_t kmax, bool allow_large,
                                const SelectionOptions& opts)
{
    if (s.size() > 30 && !allow_large) {
        std::ostringstream os;
        os << "finiteness_scan_nd: " << s.size() << " points exceeds the 30-point guard; pass the override to proceed";
        throw InputError(os.str());
    }
    std::vector<GammaPolyhedron> polys;
    std::vector<PolyhedronCheck> checks;
    for (std::size_t i = 0; i < s.size(); ++i) {
        polys.push_back(gamma_polyhedron(s, i, eta));
        checks.push_back(polyhedron_nonempty(polys.back(), opts.tol));
    }
    NdScanReport rep;
    for (auto& idx : enumerate_subsets(s.size(), kmax)) {
        NdSubsetResult r;
        r.indices = idx;
        r.polyhedra_nonempty = std::all_of(idx.begin(), idx.end(), [&](auto i) { return checks[i].nonempty; });
        if (r.polyhedra_nonempty) {
            const auto sel = select_with_polyhedra(s, polys, checks, idx, opts);
            r.pass = sel.feasible;
            r.L = sel.L;
        }
        rep.all_pass = rep.all_pass && r.pass;
        rep.subsets.push_back(std::move(r));
        const auto k = rep.subsets.size() - 1;
        if (!rep.worst)
            rep.worst = k;
        else {
            const auto& w = rep.subsets[*rep.worst];
            const auto& c = rep.subsets[k];
            if ((w.pass && !c.pass) || (w.pass == c.pass && c.L > w.L)) rep.worst = k;
        }
    }
    return rep;
}

}  // namespace convexjet
