#include "motm/laplace.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "motm/errors.hpp"

namespace motm {

OracleResult laplace_integral_price(const EnergyData& e, const std::function<double(double)>& energy,
                                    const OptionQuery& q) {
    if (!e.gamma0) {
        throw DomainError("the Laplace oracle needs gamma0");
    }
    const double t = q.maturity();
    if (!(t > 0.0)) {
        throw DomainError("the Laplace oracle needs t > 0");
    }
    const double lambda = energy(q.log_moneyness());
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("energy must be positive at the strike");
    }
    const double L = lambda / t;
    // x = u^2 removes the x^{-1/2} endpoint singularity:
    //   int_0^1 e^{-L(1/x - 1)} x^{-1/2} dx = 2 int_0^1 e^{-L(1/u^2 - 1)} du.
    auto integrand = [L](double u) {
        if (u <= 0.0) return 0.0;
        return 2.0 * std::exp(-L * (1.0 / (u * u) - 1.0));
    };
    double err = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 25, 1e-13, &err);
    if (!(integral > 0.0) || !(err <= 1e-10 * integral)) {
        throw NumericError("Laplace time integral did not converge");
    }
    const double v0 = e.spot_variance();
    const double log_value =
        std::log(0.5 * v0 * *e.gamma0) + 0.5 * std::log(t) - L + std::log(integral) + std::log(q.spot());
    OracleResult r;
    r.value = std::exp(log_value);
    r.error_estimate = r.value * err / integral;
    r.meta["log_value"] = log_value;
    r.meta["energy_over_t"] = L;
    if (L < 2.0) {
        r.warnings.push_back("Lambda(k)/t < 2: Laplace concentration not yet active");
    }
    return r;
}

}  // namespace motm
