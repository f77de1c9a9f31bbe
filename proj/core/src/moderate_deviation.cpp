#include "motm/moderate_deviation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "motm/errors.hpp"

namespace motm {

double rescaled_cgf(const RealLogMgf& log_mgf, double p, double beta, double t) {
    if (!(t > 0.0)) {
        throw DomainError("rescaled cgf needs t > 0");
    }
    if (!(beta > 0.0 && beta < 0.5)) {
        throw RegimeError("beta must lie in (0, 1/2)");
    }
    if (p == 0.0) {
        return 0.0;
    }
    const double lm = log_mgf(std::pow(t, beta - 1.0) * p, t);
    if (lm == std::numeric_limits<double>::infinity()) {
        return lm;
    }
    return std::pow(t, 1.0 - 2.0 * beta) * lm;
}

RescaledCgfProbe probe_rescaled_cgf(const RealLogMgf& log_mgf, double p, double beta,
                                    const std::vector<double>& t_grid) {
    RescaledCgfProbe probe{p, beta, t_grid, {}};
    probe.values.reserve(t_grid.size());
    for (double t : t_grid) {
        probe.values.push_back(rescaled_cgf(log_mgf, p, beta, t));
    }
    return probe;
}

MDRate::MDRate(double v0_) : v0(v0_) {
    if (!(v0 > 0.0) || !std::isfinite(v0)) {
        throw DomainError("v0 must be positive");
    }
}

double md_rate(const MDRate& r, double x) noexcept { return x * x / (2.0 * r.v0); }

double digital_md_estimate(const MDRate& r, const MOTMSchedule& s, double t) {
    if (!(t > 0.0)) {
        throw DomainError("digital estimate needs t > 0");
    }
    const double k = s.k(t);
    return -k * k / (2.0 * r.v0 * t);
}

bool TransferTable::converging() const noexcept {
    if (rows.size() < 2) return false;
    return std::abs(rows.back().difference) < 0.5 * std::abs(rows.front().difference);
}

TransferTable transfer_check(const LogPricer& log_call, const LogPricer& log_digital, const MOTMSchedule& s,
                             const std::vector<double>& t_grid, const MDRate& rate,
                             const std::function<double(double)>& explosion_time) {
    if (t_grid.empty()) {
        throw DomainError("transfer check needs a non-empty time grid");
    }
    if (explosion_time) {
        for (double p = 1.0; p <= 1048576.0; p *= 2.0) {
            if (!(explosion_time(p) > 0.0)) {
                throw DomainError("moment of order " + std::to_string(p) + " explodes immediately");
            }
        }
    }
    const double t_last = t_grid.back();
    if (!(t_last > 0.0) || s.k(t_last) / std::sqrt(t_last) < 1.0) {
        throw RegimeError("k_t / sqrt(t) = " + std::to_string(s.k(t_last) / std::sqrt(t_last)) +
                          " at the last grid point; the schedule is not moderately out of the money");
    }
    TransferTable table{-1.0 / (2.0 * rate.v0), {}};
    for (double t : t_grid) {
        const double k = s.k(t);
        const double scale = t / (k * k);
        TransferRow row{t, k, scale * log_call(k, t), scale * log_digital(k, t), 0.0};
        row.difference = row.scaled_log_call - row.scaled_log_digital;
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace motm
