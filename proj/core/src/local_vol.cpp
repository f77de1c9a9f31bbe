#include "motm/local_vol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "motm/errors.hpp"

namespace motm {

namespace {

constexpr double kDerivTol = 1e-6;

void check_derivative(const LocalVolModel::Fn& f, const LocalVolModel::Fn& df, const char* what) {
    // Richardson-extrapolated central difference at s = 1.
    auto central = [&](double h) { return (f(1.0 + h) - f(1.0 - h)) / (2.0 * h); };
    const double h = 1e-3;
    const double fd = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    const double exact = df(1.0);
    if (!std::isfinite(exact) || std::abs(fd - exact) > kDerivTol * std::max(1.0, std::abs(exact))) {
        throw DomainError(std::string(what) + " disagrees with finite differences at s = 1 (given " +
                          std::to_string(exact) + ", numerical " + std::to_string(fd) + ")");
    }
}

}  // namespace

LocalVolModel::LocalVolModel(Fn sigma, Fn sigma_d1, std::optional<Fn> sigma_d2)
    : sigma_(std::move(sigma)), sigma_d1_(std::move(sigma_d1)), sigma_d2_(std::move(sigma_d2)) {
    if (!sigma_ || !sigma_d1_) {
        throw DomainError("local volatility needs sigma and its derivative");
    }
    const double s1 = sigma_(1.0);
    if (!(s1 > 0.0) || !std::isfinite(s1)) {
        throw DomainError("sigma(1) must be positive");
    }
    check_derivative(sigma_, sigma_d1_, "sigma'");
    if (sigma_d2_) {
        check_derivative(sigma_d1_, *sigma_d2_, "sigma''");
    }
}

LocalVolModel LocalVolModel::power(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("power local vol needs a > 0 and finite b");
    }
    return LocalVolModel([a, b](double s) { return a * std::pow(s, b); },
                         [a, b](double s) { return a * b * std::pow(s, b - 1.0); },
                         [a, b](double s) { return a * b * (b - 1.0) * std::pow(s, b - 2.0); });
}

LocalVolModel LocalVolModel::constant(double sigma) {
    return power(sigma, 0.0);
}

double LocalVolModel::sigma_d2(double s) const {
    if (!sigma_d2_) {
        throw UnsupportedOrderError("sigma'' not supplied");
    }
    return (*sigma_d2_)(s);
}

double localvol_energy(const LocalVolModel& m, double k) {
    if (!std::isfinite(k)) {
        throw DomainError("log-moneyness must be finite");
    }
    if (k == 0.0) {
        return 0.0;
    }
    auto inv_sigma = [&m](double x) {
        const double sig = m.sigma(std::exp(x));
        if (!(sig > 0.0)) {
            throw DomainError("local volatility not positive at x = " + std::to_string(x));
        }
        return 1.0 / sig;
    };
    // Panelled Gauss-Legendre; the 20- and 30-point rules are compared for the error.
    using boost::math::quadrature::gauss;
    double integral = 0.0;
    double err = 0.0;
    for (int panels = std::max(1, static_cast<int>(std::ceil(std::abs(k) / 0.25))); panels <= 4096; panels *= 2) {
        const double h = k / panels;
        double coarse = 0.0;
        integral = 0.0;
        for (int j = 0; j < panels; ++j) {
            integral += gauss<double, 30>::integrate(inv_sigma, j * h, (j + 1) * h);
            coarse += gauss<double, 20>::integrate(inv_sigma, j * h, (j + 1) * h);
        }
        err = std::abs(integral - coarse);
        if (err <= 1e-13 * std::max(1.0, std::abs(integral))) {
            break;
        }
    }
    if (!(err <= 1e-12 * std::max(1.0, std::abs(integral))) || !std::isfinite(integral)) {
        throw NumericError("local-vol energy quadrature did not reach 1e-12");
    }
    return 0.5 * integral * integral;
}

EnergyData localvol_energy_derivs(const LocalVolModel& m) {
    const double s = m.sigma(1.0);
    const double ds = m.sigma_d1(1.0);
    const double lam2 = 1.0 / (s * s);
    const double lam3 = -3.0 * ds / (s * s * s);
    const double gamma0 = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * s);
    return EnergyData(lam2, lam3, std::nullopt, gamma0);
}

}  // namespace motm
