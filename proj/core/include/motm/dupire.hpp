#pragma once

#include <functional>

#include "motm/oracle_result.hpp"

namespace motm {

/// (K, t) -> call price.
using PriceSurface = std::function<double(double strike, double t)>;

/// Finite-difference steps relative to K and t.
struct DupireSteps {
    double dK_rel = 1e-3;
    double dt_rel = 1e-2;
};

/// sigma_loc(K, t) = sqrt(dC/dt / (K^2/2 d2C/dK2)) by central differences.
/// The error estimate is the change when both steps are halved.
OracleResult dupire_local_vol(const PriceSurface& pricer, double strike, double t, const DupireSteps& steps = {});

}  // namespace motm
