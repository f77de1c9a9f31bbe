#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "motm/model_spec.hpp"
#include "motm_cli/csv.hpp"

namespace motm::cli {

/// Invalid command-line arguments.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Geometric grid of n points from lo to hi (ascending).
std::vector<double> geometric_grid(double lo, double hi, int n);

/// Columns t, k_t, iv_exact, iv_approx, abs_diff.
CsvTable cmd_smile(const ModelSpec& m, double theta, double beta, double t_min, double t_max, int n);

/// Columns lam2, lam3, lam4, gamma0, sigma0, skew, curvature.
CsvTable cmd_derivs(const ModelSpec& m);

/// Columns t, k, log_c_exact, log_c_first, log_c_second, log_c_refined, residual_refined
/// on t = t_max, t_max/10, ... (`decades` points).
CsvTable cmd_converge(const ModelSpec& m, double theta, double beta, int decades, double t_max = 0.1);

/// Columns p, beta, t, rescaled_value, target, rel_err.
CsvTable cmd_mgf_limit(const ModelSpec& m, const std::vector<double>& p_list, const std::vector<double>& betas,
                       const std::vector<double>& t_list);

struct DigitalMC {
    std::uint64_t paths;
    std::uint64_t seed;
    unsigned threads;
};

/// Columns t, k, scaled_log_call, scaled_log_digital, md_limit, difference, digital
/// (+ mc_digital, mc_stderr, mc_log_digital with Monte Carlo).
CsvTable cmd_digital(const ModelSpec& m, double theta, double beta, const std::vector<double>& t_list,
                     std::optional<DigitalMC> mc = std::nullopt);

}  // namespace motm::cli
