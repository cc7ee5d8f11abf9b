#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ma_radial/problem.hpp"
#include "ma_radial/regularity.hpp"
#include "ma_radial/solver.hpp"
#include "ma_radial/verify.hpp"

namespace ma_radial {

/// Malformed config file; `key()` names the offending key when there is one.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::string key = {}) : Error(message), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct Config {
    Problem problem;
    std::string f_source;
    double residual_tol = 1e-6;  ///< exit 3 when residual_max exceeds it
};

/// key=value lines, '#' starts a comment, values may be double quoted.
/// Required: n, f, boundary_value. Unknown or repeated keys are rejected.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

/// Shortest decimal string that reads back to the same binary64.
std::string format_double(double v);

/// One row per node: t,r,g,g1,g2,g3,phi,kappa,residual. g2, g3 are empty
/// at t = 0 and residual is empty at the first and last node.
void write_csv(std::ostream& out, const Solution& sol);
std::vector<double> node_residuals(const Solution& sol);

/// Reads the CSV back into a Solution for `p` on the grid given by the t column.
Solution read_csv(std::istream& in, const Problem& p);

struct CatalogEntry {
    std::string name;
    int n = 2;
    int m = 0;
    double exponent = 2.0;  ///< 2 + 2m/n
    Verdict verdict = Verdict::Smooth;
};

/// f = (2t)^m for n in {2, 3}, m in {0, ..., 4}.
std::vector<CatalogEntry> homogeneous_catalog();

struct CatalogProblem {
    std::string name;
    Problem problem;
    bool smooth_positive = false;  ///< kappa > 0 and smooth: used for grid refinement checks
};

/// Homogeneous family plus flat, coupled and smooth positive problems.
std::vector<CatalogProblem> problem_catalog();

/// u = c r^p solves det D^2 u = r^{2m} in R^n when c^n p^n (p - 1) = 1.
double homogeneous_coefficient(int n, int m);

struct HomogeneousFit {
    double coefficient = 0.0;
    double exponent = 0.0;
    double oracle_coefficient = 0.0;
    double oracle_exponent = 0.0;
    double max_rel_error = 0.0;  ///< of u - u(0) against the oracle over r in [0.05, 1]
    Verdict verdict = Verdict::Smooth;
};

/// Solves f = (2t)^m with u = 0 on the unit sphere and fits
/// u(r) - u(0) = c r^p by log-log regression over r in [0.05, 1].
HomogeneousFit fit_homogeneous(int n, int m, Execution exec = Execution::Parallel);

/// Exit codes: 0 ok, 1 invalid input, 2 solver failure, 3 verification
/// failure, 4 indeterminate verdict.
int run_solve(const std::string& config_path, const std::string& out_path, std::ostream& out, std::ostream& err);
int run_analyze(const std::string& config_path, std::ostream& out, std::ostream& err);
int run_verify(const std::string& config_path, const std::string& solution_path, std::ostream& out,
               std::ostream& err);
int run_demo_homogeneous(int n, int m, std::ostream& out, std::ostream& err);

}  // namespace ma_radial
