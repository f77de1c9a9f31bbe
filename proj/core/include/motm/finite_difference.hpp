#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace motm {

struct FDDerivative {
    int order;
    double value;
    double error_estimate;  // gap between the extrapolated and the half-step estimate
};

/// Central-difference derivatives of orders 1..4 with one Richardson step
/// (h, h/2). Default steps scale with max(1, |x0|): 1e-3 for orders 1 and 2,
/// 1e-2 for order 3, 2e-2 for order 4. Throws NumericError on non-finite samples.
std::vector<FDDerivative> fd_derivatives(const std::function<double(double)>& f, double x0,
                                         const std::vector<int>& orders,
                                         std::optional<double> step = std::nullopt);

}  // namespace motm
