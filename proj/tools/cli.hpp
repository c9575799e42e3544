#pragma once

#include "convexjet/extension1d.hpp"
#include "convexjet/interp1d.hpp"
#include "convexjet/jet.hpp"

#include <iosfwd>
#include <optional>
#include <json.hpp>
#include <string>
#include <vector>

namespace convexjet::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInfeasible = 2 };

SampleSet dataset_from_json(const nlohmann::json& j);
SampleSet dataset_from_csv(std::istream& in);
/// Reads JSON, or CSV when the path ends in ".csv".
SampleSet load_dataset(const std::string& path);

struct Interp1dOutcome {
    bool ok = false;
    std::optional<InfeasibilityReport> failure;
    std::string wells_failure;
    ConvexPW1D F;
    double lip_bound = 0.0;      ///< guaranteed Lip(F') for this route
    double eta_certified = 0.0;  ///< strong convexity modulus of F
    std::string route;
};

/// The 1-D pipeline: eta = 0 selects and builds; eta > 0 reduces, selects,
/// builds and reconstructs; with p it tilts and then applies the flexible
/// transform. The build uses the tightest budget up to 2M the jets allow.
Interp1dOutcome interpolate_1d(const SampleSet& s, double M, double eta, std::optional<double> p,
                               double tol = kDefaultTol);

nlohmann::json extension_to_json(const ConvexPW1D& F);
ConvexPW1D extension_from_json(const nlohmann::json& j);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convexjet::cli
