#pragma once

#include <functional>
#include <optional>

#include "motm/energy.hpp"

namespace motm {

/// dX = -V/2 dt + sqrt(V) dW,  dV = (...) dt + eta sqrt(V) nu(V) dZ,  d<W,Z> = rho dt.
/// The variance drift does not enter the small-time energy and is not modelled.
class TwoFactorSVModel {
public:
    using Fn = std::function<double(double)>;

    TwoFactorSVModel(double v0, double eta, double rho, Fn nu, Fn nu_d1);

    static TwoFactorSVModel heston(double v0, double eta, double rho);
    /// nu(v) = v.
    static TwoFactorSVModel three_halves(double v0, double eta, double rho);

    double v0() const noexcept { return v0_; }
    double eta() const noexcept { return eta_; }
    double rho() const noexcept { return rho_; }
    double nu(double v) const { return nu_(v); }
    double nu_d1(double v) const { return nu_d1_(v); }

    /// True when nu(v0) = 0, in which case the small-time skew vanishes.
    bool degenerate_skew() const;

private:
    double v0_;
    double eta_;
    double rho_;
    Fn nu_;
    Fn nu_d1_;
};

struct OsajimaCoefficients {
    double b1;
    double b2;
    double b3;
};

/// b1, b2, b3 evaluated from the time-integrated generator functionals V, V^2
/// and Gamma(a11, a11) for the diffusion matrix
///   a11 = v,  a12 = rho eta v nu(v),  a22 = eta^2 v nu(v)^2.
OsajimaCoefficients osajima_two_factor(const TwoFactorSVModel& m);

/// Taylor coefficients of the energy at 0 implied by (b1, b2, b3).
EnergyData energy_from_osajima(const OsajimaCoefficients& c,
                               std::optional<double> gamma0 = std::nullopt);

}  // namespace motm
