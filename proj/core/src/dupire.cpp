#include "motm/dupire.hpp"

#include <cmath>
#include <string>

#include "motm/errors.hpp"

namespace motm {

namespace {

double local_vol(const PriceSurface& c, double K, double t, double dK, double dt) {
    const double c0 = c(K, t);
    const double c_t = (c(K, t + dt) - c(K, t - dt)) / (2.0 * dt);
    const double c_kk = (c(K + dK, t) - 2.0 * c0 + c(K - dK, t)) / (dK * dK);
    if (!(c_kk > 0.0)) {
        throw NumericError("negative or zero d2C/dK2 estimate at K = " + std::to_string(K) +
                           ", t = " + std::to_string(t) + "; step too large or pricer too noisy");
    }
    if (!(c_t >= 0.0)) {
        throw NumericError("negative dC/dt estimate at K = " + std::to_string(K) + ", t = " + std::to_string(t));
    }
    return std::sqrt(c_t / (0.5 * K * K * c_kk));
}

}  // namespace

OracleResult dupire_local_vol(const PriceSurface& pricer, double strike, double t, const DupireSteps& steps) {
    if (!(strike > 0.0) || !(t > 0.0) || !std::isfinite(strike) || !std::isfinite(t)) {
        throw DomainError("Dupire needs positive strike and maturity");
    }
    if (!(steps.dK_rel > 0.0) || !(steps.dt_rel > 0.0) || !(steps.dt_rel < 1.0)) {
        throw DomainError("Dupire steps must be positive (and dt below t)");
    }
    const double dK = steps.dK_rel * strike;
    const double dt = steps.dt_rel * t;
    OracleResult r;
    r.value = local_vol(pricer, strike, t, dK, dt);
    const double half = local_vol(pricer, strike, t, 0.5 * dK, 0.5 * dt);
    r.error_estimate = std::abs(r.value - half);
    r.meta["dK"] = dK;
    r.meta["dt"] = dt;
    r.meta["half_step_value"] = half;
    return r;
}

}  // namespace motm
