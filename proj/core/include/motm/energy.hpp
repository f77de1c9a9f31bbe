#pragma once

#include <functional>
#include <optional>

namespace motm {

/// Derivatives of the energy function at k = 0 together with the density
/// prefactor limit gamma(0). Only lam2 is mandatory.
struct EnergyData {
    double lam2;
    double lam3;
    std::optional<double> lam4;
    std::optional<double> gamma0;

    EnergyData(double lam2, double lam3, std::optional<double> lam4 = std::nullopt,
               std::optional<double> gamma0 = std::nullopt);

    double spot_variance() const noexcept { return 1.0 / lam2; }
    double sigma0() const noexcept;
};

/// Throws DomainError unless 1/lam2 matches the model's spot variance to `rel_tol`.
void check_spot_variance(const EnergyData& e, double v0, double rel_tol = 1e-12);

struct SmileShape {
    double skew;       // d/dk of the short-time implied variance at k = 0
    double curvature;  // d^2/dk^2 of the same
};

/// Derivatives of a limiting cumulant generating function at 0.
struct CgfDerivatives {
    double g2;
    double g3;
    std::optional<double> g4;

    CgfDerivatives(double g2, double g3, std::optional<double> g4 = std::nullopt);
};

double skew_from_energy(const EnergyData& e) noexcept;

/// Needs lam4; throws UnsupportedOrderError otherwise.
double curvature_from_energy(const EnergyData& e);

SmileShape smile_shape(const EnergyData& e);

/// Berestycki-Busca-Florent short-time implied variance k^2 / (2 Lambda(k)),
/// extended continuously by 1/lam2 at k = 0.
double bbf_smile(const std::function<double(double)>& energy, const EnergyData& e, double k);

/// Energy derivatives at 0 from the derivatives of its Legendre dual.
EnergyData legendre_derivatives(const CgfDerivatives& g);

}  // namespace motm
