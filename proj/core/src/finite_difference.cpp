#include "motm/finite_difference.hpp"

#include <cmath>
#include <string>

#include "motm/errors.hpp"

namespace motm {

namespace {

double sample(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw NumericError("non-finite function value at x = " + std::to_string(x));
    }
    return v;
}

double central(const std::function<double(double)>& f, double x0, int order, double h) {
    auto at = [&](double j) { return sample(f, x0 + j * h); };
    switch (order) {
        case 1:
            return (at(1) - at(-1)) / (2.0 * h);
        case 2:
            return (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
        case 3:
            return (at(2) - 2.0 * at(1) + 2.0 * at(-1) - at(-2)) / (2.0 * h * h * h);
        case 4:
            return (at(2) - 4.0 * at(1) + 6.0 * at(0) - 4.0 * at(-1) + at(-2)) / (h * h * h * h);
        default:
            throw DomainError("derivative order must be 1..4");
    }
}

constexpr double kDefaultStep[] = {1e-3, 1e-3, 1e-2, 2e-2};

}  // namespace

std::vector<FDDerivative> fd_derivatives(const std::function<double(double)>& f, double x0,
                                         const std::vector<int>& orders, std::optional<double> step) {
    if (!std::isfinite(x0)) {
        throw DomainError("x0 must be finite");
    }
    if (step && !(*step > 0.0)) {
        throw DomainError("step must be positive");
    }
    std::vector<FDDerivative> out;
    out.reserve(orders.size());
    for (int order : orders) {
        if (order < 1 || order > 4) {
            throw DomainError("derivative order must be 1..4");
        }
        const double h = step ? *step : kDefaultStep[order - 1] * std::max(1.0, std::abs(x0));
        const double coarse = central(f, x0, order, h);
        const double fine = central(f, x0, order, 0.5 * h);
        const double extrapolated = (4.0 * fine - coarse) / 3.0;
        out.push_back({order, extrapolated, std::abs(extrapolated - fine)});
    }
    return out;
}

}  // namespace motm
