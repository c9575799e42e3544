#include "cli.hpp"

#include "convexjet/interp1d.hpp"
#include "convexjet/nd_feasibility.hpp"
#include "convexjet/strong_convexity.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace convexjet::cli {

using nlohmann::json;

namespace {

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json number_or_null(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

json vec_json(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v) a.push_back(number_or_null(x));
    return a;
}

double real_at(const json& j, const std::string& field)
{
    if (!j.is_number()) throw InputError("field '" + field + "' must be a number");
    return j.get<double>();
}

std::vector<double> reals_at(const json& j, const std::string& field)
{
    if (!j.is_array()) throw InputError("field '" + field + "' must be an array");
    std::vector<double> v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(real_at(j[k], field + "[" + std::to_string(k) + "]"));
    return v;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    return cells;
}

bool parse_double(const std::string& s, double& out)
{
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

json failure_json(const InfeasibilityReport& r)
{
    return {{"kind", to_string(r.kind)}, {"index", r.index}, {"gap", number_or_null(r.gap)}};
}

json envelopes_json(const Envelopes& e)
{
    return {{"left", vec_json(e.left)}, {"right", vec_json(e.right)}, {"plus", vec_json(e.plus)},
            {"minus", vec_json(e.minus)}};
}

json residuals_json(const ExtensionReport& r)
{
    return {{"max_value_residual", r.max_value_residual}, {"max_grad_residual", r.max_grad_residual},
            {"lip_grad", r.lip_grad},
            {"lip_excess", r.lip_excess},
            {"monotonicity_violation", r.monotonicity_violation},
            {"strong_convexity_violation", r.strong_convexity_violation},
            {"min_wells_residual", r.min_wells_residual},
            {"ok", r.ok}};
}

std::vector<double> grid(double a, double b, int n)
{
    if (n < 0) throw InputError("grid: n must be nonnegative");
    std::vector<double> xs;
    for (int k = 0; k < n; ++k) xs.push_back(n == 1 ? a : (k == n - 1 ? b : a + (b - a) * k / (n - 1)));
    return xs;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

json read_json_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

double default_tol()
{
    const char* env = std::getenv("CONVEXJET_TOL");
    if (!env) return kDefaultTol;
    double v = 0.0;
    if (!parse_double(env, v) || !(v > 0.0)) throw InputError("CONVEXJET_TOL must be a positive number");
    return v;
}

int cmd_check(const std::string& input, double M, double eta, double tol, SelectionOptions opts, std::ostream& out)
{
    const auto s = load_dataset(input);
    if (!(M > 0.0)) throw InputError("--M must be positive");
    if (!(eta >= 0.0)) throw InputError("--eta must be nonnegative");
    json rep{{"dim", s.dim()}, {"n", s.size()}, {"M", M}, {"eta", eta}, {"tol", tol}};
    if (s.dim() == 1) {
        const auto red = oned_sc_reduce(s, eta, M);
        const auto r = select_jets(red.samples, M, tol);
        if (eta > 0.0) rep["reduction_scale"] = red.scale;
        if (!succeeded(r)) {
            const auto& f = std::get<InfeasibilityReport>(r);
            rep["feasible"] = false;
            rep["failure"] = failure_json(f);
            out << rep.dump(2) << "\n";
            return kInfeasible;
        }
        const auto& sel = std::get<JetSelection>(r);
        std::vector<double> g;
        for (const auto& j : sel.field) g.push_back(j.grad1());
        rep["feasible"] = true;
        rep["gradients"] = vec_json(g);
        rep["envelopes"] = envelopes_json(sel.envelopes);
        out << rep.dump(2) << "\n";
        return kOk;
    }

    std::vector<json> empty;
    bool all_nonempty = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto c = polyhedron_nonempty(gamma_polyhedron(s, i, eta), tol);
        if (!c.nonempty) {
            all_nonempty = false;
            empty.push_back(i + 1);
        }
    }
    rep["label"] = "necessary conditions only";
    rep["polyhedra_nonempty"] = all_nonempty;
    if (!all_nonempty) {
        rep["feasible"] = false;
        rep["empty_polyhedra"] = empty;
        out << rep.dump(2) << "\n";
        return kInfeasible;
    }
    opts.tol = tol;
    const auto sel = lipschitz_selection_desk(s, eta, opts);
    std::vector<Jet> jets;
    for (std::size_t i = 0; i < s.size(); ++i) jets.emplace_back(s.point(i), s.value(i), sel.gradients[i]);
    const WhitneyField field(std::move(jets));
    double wc = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        for (std::size_t j = i + 1; j < field.size(); ++j) wc = std::max(wc, wells_constant(field[i], field[j]));
    rep["feasible"] = true;
    rep["selection_L"] = sel.L;
    rep["selection_heuristic_upper_bound"] = sel.heuristic_upper_bound;
    rep["selected_wells_constant"] = number_or_null(wc);
    rep["selected_compatible_at_M"] = wells_matrix(field, M).ok(tol);
    out << rep.dump(2) << "\n";
    return kOk;
}

int cmd_interp1d(const std::string& input, double M, double eta, std::optional<double> p, const std::string& output,
                 double tol, std::ostream& out)
{
    const auto s = load_dataset(input);
    if (s.dim() != 1) throw InputError("interp1d requires a 1-D dataset");
    if (!(M > 0.0)) throw InputError("--M must be positive");
    if (!(eta >= 0.0)) throw InputError("--eta must be nonnegative");
    if (p && !(eta > 0.0)) throw InputError("--p requires --eta > 0");
    const auto o = interpolate_1d(s, M, eta, p, tol);
    json rep{{"M", M}, {"eta", eta}};
    if (!o.ok) {
        rep["ok"] = false;
        if (o.failure) rep["failure"] = failure_json(*o.failure);
        if (!o.wells_failure.empty()) rep["failure"] = {{"kind", "WellsViolation"}, {"message", o.wells_failure}};
        out << rep.dump(2) << "\n";
        return kInfeasible;
    }
    double vmax = 0.0;
    for (double v : s.values()) vmax = std::max(vmax, std::abs(v));
    const auto vr = verify_extension(o.F, s, o.lip_bound, o.eta_certified, tol * std::max(1.0, vmax));
    rep["ok"] = vr.ok;
    rep["route"] = o.route;
    rep["lip_grad"] = o.F.lip_grad();
    rep["lip_bound"] = o.lip_bound;
    rep["eta_certified"] = o.eta_certified;
    rep["residuals"] = residuals_json(vr);
    if (output.empty())
        rep["extension"] = extension_to_json(o.F);
    else {
        write_text(output, extension_to_json(o.F).dump(2) + "\n");
        rep["output"] = output;
    }
    out << rep.dump(2) << "\n";
    return vr.ok ? kOk : kInfeasible;
}

int cmd_minimal_m(const std::string& input, double tol, std::ostream& out)
{
    const auto s = load_dataset(input);
    if (s.dim() != 1) throw InputError("minimal-m requires a 1-D dataset");
    const double m = minimal_M(s, 1e-6, tol);
    json rep{{"minimal_M", number_or_null(m)}, {"finite", std::isfinite(m)}};
    out << rep.dump(2) << "\n";
    return std::isfinite(m) ? kOk : kInfeasible;
}

json indices_1based(const std::vector<std::size_t>& idx)
{
    json a = json::array();
    for (auto i : idx) a.push_back(i + 1);
    return a;
}

int cmd_scan(const std::string& input, std::size_t kmax, double eta, double M, bool allow_large, double tol,
             SelectionOptions opts,
             std::ostream& out)
{
    const auto s = load_dataset(input);
    json rep{{"kmax", kmax}, {"eta", eta}, {"M", M}};
    if (s.dim() == 1) {
        if (!(M > 0.0)) throw InputError("--M must be positive");
        ScanOptions opts{kmax, allow_large, tol};
        const auto r = finiteness_scan_1d(s, M, eta, opts);
        std::size_t failing = 0;
        for (const auto& sub : r.subsets) failing += sub.feasible ? 0 : 1;
        rep["subsets"] = r.subsets.size();
        rep["failing"] = failing;
        rep["all_feasible"] = r.all_feasible;
        if (r.worst) {
            const auto& w = r.subsets[*r.worst];
            rep["worst"] = {{"indices", indices_1based(w.indices)}, {"minimal_M", number_or_null(w.minimal_M)}};
        }
        for (const auto& sub : r.subsets)
            if (!sub.feasible) {
                json f{{"indices", indices_1based(sub.indices)}};
                if (sub.failure) f["failure"] = failure_json(*sub.failure);
                rep["first_failure"] = f;
                break;
            }
        out << rep.dump(2) << "\n";
        return r.all_feasible ? kOk : kInfeasible;
    }
    opts.tol = tol;
    const auto r = finiteness_scan_nd(s, eta, kmax, allow_large, opts);
    rep["label"] = r.label;
    rep["subsets"] = r.subsets.size();
    rep["all_pass"] = r.all_pass;
    if (r.worst) {
        const auto& w = r.subsets[*r.worst];
        rep["worst"] = {{"indices", indices_1based(w.indices)}, {"pass", w.pass}, {"L", w.L}};
    }
    out << rep.dump(2) << "\n";
    return r.all_pass ? kOk : kInfeasible;
}

void print_ineq(std::ostream& out, const std::string& name, double lhs, const char* rel, double rhs)
{
    out << name << ": " << fmt17(lhs) << " " << rel << " " << fmt17(rhs) << "  residual " << fmt17(lhs - rhs) << "\n";
}

int demo_sharpness5(double tol, std::ostream& out)
{
    const SampleSet s(std::vector<double>{-2, -1, 0, 1, 2}, {2, 1, 0, 1, 2});
    out << "E = {-2,-1,0,1,2}, f = |x|\n";
    double worst = 0.0;
    bool all4 = true;
    for (const auto& idx : enumerate_subsets(s.size(), 4)) {
        const double m = minimal_M(s.subset(idx), 1e-6, tol);
        all4 = all4 && std::isfinite(m);
        worst = std::max(worst, m);
    }
    out << "subsets of size <= 4: " << (all4 ? "all feasible" : "some infeasible") << ", largest minimal M "
        << fmt17(worst) << "\n";
    bool full_fails = true;
    for (double M : {1.0, 10.0, 1e6, std::ldexp(1.0, 60)}) {
        const auto r = select_jets(s, M, tol);
        if (succeeded(r)) {
            full_fails = false;
            out << "M=" << fmt17(M) << ": selection succeeded\n";
            continue;
        }
        const auto& f = std::get<InfeasibilityReport>(r);
        out << "M=" << fmt17(M) << ": " << to_string(f.kind) << " at index " << f.index << ", gap " << fmt17(f.gap)
            << "\n";
    }
    out << (all4 ? "kmax=4 feasible" : "kmax=4 infeasible") << " / "
        << (full_fails ? "kmax=5 infeasible" : "kmax=5 feasible") << "\n";
    return kOk;
}

int demo_scexample(double tol, std::ostream& out)
{
    const double eta = 0.1;
    const Jet g0(0.0, 0.0, 0.0);
    const Jet g1(1.0, eta / 2, 2 * eta);
    out << "E = {0,1}, eta = 0.1, M = 1, f(0) = 0, f(1) = eta/2\n";
    const double a = eval_jet(g0, 0.0) - eval_jet(g1, 0.0);
    const double b = eval_jet(g1, 1.0) - eval_jet(g0, 1.0);
    const double half_sq = 0.5 * (2 * eta) * (2 * eta);
    print_ineq(out, "(i1)", a, ">=", eta / 2);
    print_ineq(out, "(i2)", a, ">=", half_sq);
    print_ineq(out, "(i3)", b, "=", eta / 2);
    print_ineq(out, "(i4)", b, ">=", half_sq);
    const auto c = wells_compatible(g0, g1, 1.0, tol);
    out << "compatibility residuals at M=1: (" << fmt17(c.residual_a) << ", " << fmt17(c.residual_b) << ")\n";
    for (double Mcap : {1.0, 10.0, 1e6})
        out << "sc_pair_feasible(eta=0.1, Mcap=" << fmt17(Mcap)
            << ") = " << (sc_pair_feasible(g0, g1, eta, Mcap, tol) ? "true" : "false") << "\n";
    out << "sc_pair_feasible(eta=0.05, Mcap=3) = " << (sc_pair_feasible(g0, g1, eta / 2, 3.0, tol) ? "true" : "false")
        << "\n";
    return kOk;
}

int demo_parabola(double tol, std::ostream& out)
{
    const SampleSet s(std::vector<double>{0, 1, 2}, {0, 0.5, 2});
    out << "E = {0,1,2}, f = x^2/2, M = 1\n";
    const auto r = select_jets(s, 1.0, tol);
    if (!succeeded(r)) {
        out << "selection failed\n";
        return kInfeasible;
    }
    const auto& sel = std::get<JetSelection>(r);
    out << "gradients:";
    for (const auto& j : sel.field) out << " " << fmt17(j.grad1());
    out << "\nenvelopes at x=1: left " << fmt17(sel.envelopes.left[1]) << ", right " << fmt17(sel.envelopes.right[1])
        << ", plus " << fmt17(sel.envelopes.plus[1]) << ", minus " << fmt17(sel.envelopes.minus[1]) << "\n";
    const auto o = interpolate_1d(s, 1.0, 0.0, std::nullopt, tol);
    if (!o.ok) return kInfeasible;
    const auto& F = o.F;
    double err = 0.0;
    for (double x : grid(0.0, 2.0, 1000)) err = std::max(err, std::abs(F.eval(x) - 0.5 * x * x));
    out << "max |F - x^2/2| on [0,2]: " << fmt17(err) << "\nlip_grad: " << fmt17(F.lip_grad()) << "\n";
    return kOk;
}

int cmd_demo(const std::string& name, double tol, std::ostream& out)
{
    if (name == "sharpness5") return demo_sharpness5(tol, out);
    if (name == "scexample") return demo_scexample(tol, out);
    if (name == "parabola") return demo_parabola(tol, out);
    throw InputError("unknown demo '" + name + "' (expected sharpness5, scexample or parabola)");
}

std::vector<double> eval_points(const std::vector<double>& at, const std::vector<double>& g)
{
    if (!at.empty() && !g.empty()) throw InputError("give either --at or --grid, not both");
    if (!g.empty()) {
        const double n = g[2];
        if (n < 0 || n != std::floor(n)) throw InputError("--grid n must be a nonnegative integer");
        return grid(g[0], g[1], static_cast<int>(n));
    }
    if (at.empty()) throw InputError("one of --at or --grid is required");
    return at;
}

ConvexPW1D load_extension(const std::string& path)
{
    return extension_from_json(read_json_file(path));
}

}  // namespace

namespace {

// Smallest budget at which consecutive jets are compatible, capped at `cap`.
double tight_budget(const WhitneyField& field, double cap)
{
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < field.size(); ++i) m = std::max(m, wells_constant(field[i], field[i + 1]));
    return m > 0.0 && m < cap ? m : cap;
}

}  // namespace

Interp1dOutcome interpolate_1d(const SampleSet& s, double M, double eta, std::optional<double> p, double tol)
{
    Interp1dOutcome o;
    const double vtol = tol * std::max(1.0, [&] {
        double m = 0.0;
        for (double v : s.values()) m = std::max(m, std::abs(v));
        return m;
    }());
    try {
        if (eta == 0.0) {
            auto r = select_jets(s, M, tol);
            if (!succeeded(r)) {
                o.failure = std::get<InfeasibilityReport>(r);
                return o;
            }
            const auto& field = std::get<JetSelection>(r).field;
            o.F = build_extension(field, s, tight_budget(field, 2 * M), vtol);
            o.lip_bound = 2 * M;
            o.route = "select+build";
        } else if (!p) {
            auto red = oned_sc_reduce(s, eta, M);
            auto r = select_jets(red.samples, M, tol);
            if (!succeeded(r)) {
                o.failure = std::get<InfeasibilityReport>(r);
                return o;
            }
            const auto& field = std::get<JetSelection>(r).field;
            const auto G = build_extension(field, red.samples, tight_budget(field, 2 * M), vtol);
            o.F = oned_sc_reconstruct(G, eta, M);
            o.lip_bound = 2 * M + 3 * eta;
            o.eta_certified = eta;
            o.route = "reduce+select+build+reconstruct";
        } else {
            if (!(*p > 1.0)) throw InputError("--p must exceed 1");
            const double q = *p / (*p - 1.0);
            auto tilted = tilt_samples(s, eta);
            auto r = select_jets(tilted, M, tol);
            if (!succeeded(r)) {
                o.failure = std::get<InfeasibilityReport>(r);
                return o;
            }
            const auto G = build_extension(std::get<JetSelection>(r).field, tilted, 2 * M, vtol);
            const auto H = untilt_pw(G, eta);
            std::vector<Jet> jets;
            for (std::size_t i = 0; i < s.size(); ++i) jets.push_back(Jet(s.x(i), s.value(i), H.eval_grad(s.x(i))));
            const double Mp = 2 * M + eta;
            o.F = scprop_extend_1d(WhitneyField(std::move(jets)), s, eta, Mp, *p, vtol);
            o.lip_bound = q * Mp + eta / *p;
            o.eta_certified = eta / *p;
            o.route = "tilt+select+build, then flexsc transform at q(2M+eta)";
        }
    } catch (const WellsViolationError& e) {
        o.wells_failure = e.what();
        return o;
    }
    o.ok = true;
    return o;
}


SampleSet dataset_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("dataset must be a JSON object");
    for (const char* k : {"dim", "points", "values"})
        if (!j.contains(k)) throw InputError(std::string("dataset is missing field '") + k + "'");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        throw InputError("field 'dim' must be an integer >= 1");
    const auto dim = static_cast<std::size_t>(j["dim"].get<long long>());
    if (!j["points"].is_array()) throw InputError("field 'points' must be an array");
    if (j["points"].empty()) throw InputError("field 'points' must not be empty");
    const auto values = reals_at(j["values"], "values");
    if (values.size() != j["points"].size()) throw InputError("fields 'points' and 'values' differ in length");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const std::string name = "points[" + std::to_string(i) + "]";
        const auto& pj = j["points"][i];
        std::vector<double> c = pj.is_number() && dim == 1 ? std::vector<double>{real_at(pj, name)} : reals_at(pj, name);
        if (c.size() != dim) throw InputError("field '" + name + "' must have length dim");
        pts.emplace_back(std::move(c));
    }
    return SampleSet(std::move(pts), values);
}

SampleSet dataset_from_csv(std::istream& in)
{
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(split_csv(line));
    }
    if (rows.empty()) throw InputError("CSV: header row required");
    const auto& header = rows.front();
    if (header.size() < 2) throw InputError("CSV: need at least one coordinate column and a value column");
    double tmp = 0.0;
    if (std::all_of(header.begin(), header.end(), [&](const std::string& c) { return parse_double(c, tmp); }))
        throw InputError("CSV: header row required");
    if (rows.size() == 1) throw InputError("CSV: no data rows");
    const std::size_t dim = header.size() - 1;
    std::vector<Point> pts;
    std::vector<double> values;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw InputError("CSV: row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                             " columns, expected " + std::to_string(header.size()));
        std::vector<double> c(dim);
        for (std::size_t k = 0; k <= dim; ++k) {
            double v = 0.0;
            if (!parse_double(rows[r][k], v))
                throw InputError("CSV: row " + std::to_string(r + 1) + " column '" + header[k] + "' is not a number");
            if (k < dim)
                c[k] = v;
            else
                values.push_back(v);
        }
        pts.emplace_back(std::move(c));
    }
    return SampleSet(std::move(pts), std::move(values));
}

SampleSet load_dataset(const std::string& path)
{
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
        std::ifstream f(path);
        if (!f) throw InputError("cannot open '" + path + "'");
        return dataset_from_csv(f);
    }
    return dataset_from_json(read_json_file(path));
}

json extension_to_json(const ConvexPW1D& F)
{
    return {{"v", 1},
            {"type", "convex_pw1d"},
            {"anchor", {F.anchor_x(), F.anchor_value()}},
            {"knots", F.knots()},
            {"gvals", F.gvals()},
            {"lip_grad", F.lip_grad()},
            {"eta", F.tail_curvature()}};
}

ConvexPW1D extension_from_json(const json& j)
{
    if (!j.is_object()) throw InputError("extension file must be a JSON object");
    for (const char* k : {"type", "anchor", "knots", "gvals"})
        if (!j.contains(k)) throw InputError(std::string("extension file is missing field '") + k + "'");
    if (j["type"] != "convex_pw1d") throw InputError("field 'type' must be \"convex_pw1d\"");
    if (j.contains("v") && j["v"] != 1) throw InputError("field 'v' must be 1");
    const auto anchor = reals_at(j["anchor"], "anchor");
    if (anchor.size() != 2) throw InputError("field 'anchor' must be [x0, F0]");
    const double eta = j.contains("eta") ? real_at(j["eta"], "eta") : 0.0;
    return ConvexPW1D(reals_at(j["knots"], "knots"), reals_at(j["gvals"], "gvals"), anchor[0], anchor[1], eta);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Convex and strongly convex C^{1,1} interpolation of scattered data", "convexjet"};
    app.require_subcommand(1);
    std::optional<double> tol_flag;
    app.add_option("--tol", tol_flag, "Absolute tolerance (overrides CONVEXJET_TOL)");

    std::string input, output, ext, demo_name;
    double M = 1.0, eta = 0.0;
    std::optional<double> p;
    std::size_t kmax = 5;
    bool allow_large = false;
    std::vector<double> at, grid_spec;
    SelectionOptions proj;

    auto* check = app.add_subcommand("check", "Decide feasibility of a dataset at budget M");
    check->add_option("input", input, "Dataset (JSON or CSV)")->required();
    check->add_option("--M", M, "Gradient Lipschitz budget");
    check->add_option("--eta", eta, "Strong convexity modulus");
    check->add_option("--tol", tol_flag);
    check->add_option("--max-sweeps", proj.max_sweeps, "Projection sweep budget (n-D)")->check(CLI::PositiveNumber);
    check->add_option("--violation-tol", proj.violation_tol, "Projection violation tolerance (n-D)")
        ->check(CLI::PositiveNumber);

    auto* interp = app.add_subcommand("interp1d", "Build a 1-D extension");
    interp->add_option("input", input, "Dataset (JSON or CSV)")->required();
    interp->add_option("--M", M, "Gradient Lipschitz budget");
    interp->add_option("--eta", eta, "Strong convexity modulus");
    interp->add_option("--p", p, "Route through the flexible tilt with exponent p > 1");
    interp->add_option("-o,--output", output, "Extension file to write");
    interp->add_option("--tol", tol_flag);

    auto* eval = app.add_subcommand("eval", "Evaluate an extension file");
    eval->add_option("extension", ext, "Extension file")->required();
    eval->add_option("--at", at, "Evaluation points");
    eval->add_option("--grid", grid_spec, "a b n")->expected(3);

    auto* minm = app.add_subcommand("minimal-m", "Smallest feasible budget of a 1-D dataset");
    minm->add_option("input", input, "Dataset (JSON or CSV)")->required();
    minm->add_option("--tol", tol_flag);

    auto* scan = app.add_subcommand("scan", "Run the subset scan");
    scan->add_option("input", input, "Dataset (JSON or CSV)")->required();
    scan->add_option("--kmax", kmax, "Largest subset size");
    scan->add_option("--eta", eta, "Strong convexity modulus");
    scan->add_option("--M", M, "Gradient Lipschitz budget");
    scan->add_flag("--allow-large", allow_large, "Lift the 30-point guard");
    scan->add_option("--tol", tol_flag);
    scan->add_option("--max-sweeps", proj.max_sweeps, "Projection sweep budget (n-D)")->check(CLI::PositiveNumber);
    scan->add_option("--violation-tol", proj.violation_tol, "Projection violation tolerance (n-D)")
        ->check(CLI::PositiveNumber);

    auto* demo = app.add_subcommand("demo", "Replay a worked example");
    demo->add_option("name", demo_name, "sharpness5, scexample or parabola")->required();

    auto* plot = app.add_subcommand("plot-data", "Write x,F,dF samples of an extension as CSV");
    plot->add_option("extension", ext, "Extension file")->required();
    plot->add_option("--grid", grid_spec, "a b n")->expected(3)->required();
    plot->add_option("-o,--output", output, "CSV file to write (default stdout)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        const double tol = tol_flag ? *tol_flag : default_tol();
        if (!(tol > 0.0)) throw InputError("--tol must be positive");
        if (*check) return cmd_check(input, M, eta, tol, proj, out);
        if (*interp) return cmd_interp1d(input, M, eta, p, output, tol, out);
        if (*minm) return cmd_minimal_m(input, tol, out);
        if (*scan) return cmd_scan(input, kmax, eta, M, allow_large, tol, proj, out);
        if (*demo) return cmd_demo(demo_name, tol, out);
        if (*eval) {
            const auto F = load_extension(ext);
            for (double x : eval_points(at, grid_spec))
                out << fmt17(x) << "\t" << fmt17(F.eval(x)) << "\t" << fmt17(F.eval_grad(x)) << "\n";
            return kOk;
        }
        if (*plot) {
            const auto F = load_extension(ext);
            std::ostringstream csv;
            csv << "x,F,dF\n";
            for (double x : eval_points({}, grid_spec))
                csv << fmt17(x) << "," << fmt17(F.eval(x)) << "," << fmt17(F.eval_grad(x)) << "\n";
            if (output.empty())
                out << csv.str();
            else
                write_text(output, csv.str());
            return kOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const WellsViolationError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace convexjet::cli
