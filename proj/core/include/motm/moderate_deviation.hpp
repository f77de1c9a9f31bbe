#pragma once

#include <functional>
#include <vector>

#include "motm/expansion.hpp"

namespace motm {

/// (s, t) -> log E[exp(s X_t)], +infinity once the moment has exploded.
using RealLogMgf = std::function<double(double s, double t)>;

/// t^{1-2 beta} log M(t^{beta-1} p, t); +infinity is passed through.
double rescaled_cgf(const RealLogMgf& log_mgf, double p, double beta, double t);

struct RescaledCgfProbe {
    double p;
    double beta;
    std::vector<double> t_grid;
    std::vector<double> values;
};

RescaledCgfProbe probe_rescaled_cgf(const RealLogMgf& log_mgf, double p, double beta,
                                    const std::vector<double>& t_grid);

/// Quadratic moderate-deviation rate x^2 / (2 v0).
struct MDRate {
    double v0;
    explicit MDRate(double v0);
};

double md_rate(const MDRate& r, double x) noexcept;

/// -k_t^2 / (2 v0 t).
double digital_md_estimate(const MDRate& r, const MOTMSchedule& s, double t);

struct TransferRow {
    double t;
    double k;
    double scaled_log_call;     // (t / k^2) log c(k, t)
    double scaled_log_digital;  // (t / k^2) log P[X_t >= k]
    double difference;          // call column minus digital column
};

struct TransferTable {
    double md_limit;  // -1 / (2 v0)
    std::vector<TransferRow> rows;

    /// Last |difference| below half of the first.
    bool converging() const noexcept;
};

/// (k, t) -> log price.
using LogPricer = std::function<double(double k, double t)>;

/// Tabulates both sides of the call/digital moderate-deviation equivalence.
/// When `explosion_time` is given, every moment p >= 1 must stay finite for a
/// positive time. Throws RegimeError unless k_t / sqrt(t) >= 1 at the last grid point.
TransferTable transfer_check(const LogPricer& log_call, const LogPricer& log_digital, const MOTMSchedule& s,
                             const std::vector<double>& t_grid, const MDRate& rate,
                             const std::function<double(double)>& explosion_time = {});

}  // namespace motm
