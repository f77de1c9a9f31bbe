#pragma once

#include <functional>
#include <optional>

#include "motm/energy.hpp"

namespace motm {

/// Time-homogeneous local volatility dS = sigma(S) S dW with S_0 = 1.
/// The derivative functions are checked against finite differences at s = 1
/// on construction; the callables must be safe to invoke concurrently.
class LocalVolModel {
public:
    using Fn = std::function<double(double)>;

    LocalVolModel(Fn sigma, Fn sigma_d1, std::optional<Fn> sigma_d2 = std::nullopt);

    /// sigma(s) = a * s^b.
    static LocalVolModel power(double a, double b);
    static LocalVolModel constant(double sigma);

    double sigma(double s) const { return sigma_(s); }
    double sigma_d1(double s) const { return sigma_d1_(s); }
    bool has_sigma_d2() const noexcept { return sigma_d2_.has_value(); }
    double sigma_d2(double s) const;

private:
    Fn sigma_;
    Fn sigma_d1_;
    std::optional<Fn> sigma_d2_;
};

/// Lambda(k) = (1/2) (int_0^k dx / sigma(e^x))^2.
double localvol_energy(const LocalVolModel& m, double k);

/// lam2, lam3 and gamma0 from sigma(1), sigma'(1); lam4 is left absent.
EnergyData localvol_energy_derivs(const LocalVolModel& m);

}  // namespace motm
