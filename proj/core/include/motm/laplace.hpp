#pragma once

#include <functional>

#include "motm/black_scholes.hpp"
#include "motm/energy.hpp"
#include "motm/oracle_result.hpp"

namespace motm {

/// Call price from the time-integral representation
///   C ~ (sigma0^2 gamma0 / 2) int_0^t exp(-Lambda(k) / s) s^{-1/2} ds,
/// evaluated by adaptive quadrature with exp(-Lambda(k)/t) factored out.
/// meta["log_value"] carries the log price; a warning is attached when
/// Lambda(k)/t < 2, where the Laplace concentration has not set in.
OracleResult laplace_integral_price(const EnergyData& e, const std::function<double(double)>& energy,
                                    const OptionQuery& q);

}  // namespace motm
