#include "motm/energy.hpp"

#include <cmath>
#include <string>

#include "motm/errors.hpp"

namespace motm {

EnergyData::EnergyData(double lam2_, double lam3_, std::optional<double> lam4_,
                       std::optional<double> gamma0_)
    : lam2(lam2_), lam3(lam3_), lam4(lam4_), gamma0(gamma0_) {
    if (!(lam2 > 0.0) || !std::isfinite(lam2)) {
        throw DomainError("lam2 must be positive and finite");
    }
    if (!std::isfinite(lam3)) {
        throw DomainError("lam3 must be finite");
    }
    if (lam4 && !std::isfinite(*lam4)) {
        throw DomainError("lam4 must be finite");
    }
    if (gamma0 && !(*gamma0 > 0.0 && std::isfinite(*gamma0))) {
        throw DomainError("gamma0 must be positive");
    }
}

double EnergyData::sigma0() const noexcept { return 1.0 / std::sqrt(lam2); }

void check_spot_variance(const EnergyData& e, double v0, double rel_tol) {
    if (std::abs(e.spot_variance() - v0) > rel_tol * std::abs(v0)) {
        throw DomainError("energy data inconsistent with spot variance " + std::to_string(v0));
    }
}

CgfDerivatives::CgfDerivatives(double g2_, double g3_, std::optional<double> g4_)
    : g2(g2_), g3(g3_), g4(g4_) {
    if (!(g2 > 0.0) || !std::isfinite(g2)) {
        throw DomainError("g2 must be positive");
    }
}

double skew_from_energy(const EnergyData& e) noexcept {
    return -e.lam3 / (3.0 * e.lam2 * e.lam2);
}

double curvature_from_energy(const EnergyData& e) {
    if (!e.lam4) {
        throw UnsupportedOrderError("curvature needs the fourth energy derivative");
    }
    const double l2 = e.lam2;
    return (2.0 / 3.0 * e.lam3 * e.lam3 - 0.5 * *e.lam4 * l2) / (3.0 * l2 * l2 * l2);
}

SmileShape smile_shape(const EnergyData& e) {
    return {skew_from_energy(e), curvature_from_energy(e)};
}

double bbf_smile(const std::function<double(double)>& energy, const EnergyData& e, double k) {
    if (k == 0.0) {
        return 1.0 / e.lam2;
    }
    const double lambda = energy(k);
    if (!(lambda > 0.0)) {
        throw DomainError("energy must be positive away from k = 0");
    }
    return k * k / (2.0 * lambda);
}

EnergyData legendre_derivatives(const CgfDerivatives& g) {
    const double g2 = g.g2;
    const double g2_3 = g2 * g2 * g2;
    const double lam2 = 1.0 / g2;
    const double lam3 = -g.g3 / g2_3;
    std::optional<double> lam4;
    if (g.g4) {
        lam4 = 3.0 * g.g3 * g.g3 / (g2_3 * g2 * g2) - *g.g4 / (g2_3 * g2);
    }
    return EnergyData(lam2, lam3, lam4);
}

}  // namespace motm
