#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "motm/energy.hpp"

namespace motm {

/// Log-strike curve k_t = theta * l(t) * t^beta with 0 < beta < 1/2.
class MOTMSchedule {
public:
    MOTMSchedule(double theta, double beta, std::function<double(double)> slowly_varying = {});

    double theta() const noexcept { return theta_; }
    double beta() const noexcept { return beta_; }

    /// Effective slowly varying factor theta * l(t).
    double ell(double t) const;
    double k(double t) const;

private:
    double theta_;
    double beta_;
    std::function<double(double)> slowly_varying_;
};

enum class ExpansionOrder { first, second, refined };

/// One evaluated expansion. Signs follow the assembly
///   log_price = -rate_term - cubic_term - sum(higher_terms) + log_term + const_term.
struct ExpansionReport {
    double t = 0.0;
    double k = 0.0;
    ExpansionOrder order = ExpansionOrder::first;
    double rate_term = 0.0;            // lam2 k^2 / (2t)
    double cubic_term = 0.0;           // lam3 k^3 / (6t)
    std::vector<double> higher_terms;  // lam_m k^m / (m! t), m = 4 .. floor(1/beta)
    double log_term = 0.0;             // (2 beta - 3/2) log(1/t) - 2 log l(t)
    double const_term = 0.0;           // log(gamma0 v0^2)
    double log_price = 0.0;
    /// Second order only: -(k^2 / 2 sigma0^2 t)(1 - (S / sigma0^2) k).
    std::optional<double> skew_form_log_price;

    double assemble() const noexcept;
};

/// Number of Taylor terms of the energy used by the refined expansion.
int refined_term_count(double beta);

ExpansionReport log_price_first_order(const EnergyData& e, const MOTMSchedule& s, double t);

/// Throws RegimeError unless beta < 1/3.
ExpansionReport log_price_second_order(const EnergyData& e, const MOTMSchedule& s, double t);

/// Needs gamma0 and every energy derivative up to floor(1/beta) (at most 4).
ExpansionReport log_price_refined(const EnergyData& e, const MOTMSchedule& s, double t);

/// sigma0 - sigma0^3 lam3 k_t / 6. Throws RegimeError unless beta < 1/3.
double implied_vol_expansion(const EnergyData& e, const MOTMSchedule& s, double t);

}  // namespace motm
