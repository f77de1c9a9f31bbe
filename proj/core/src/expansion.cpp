#include "motm/expansion.hpp"

#include <cmath>
#include <string>

#include "motm/errors.hpp"

namespace motm {

namespace {

void check_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("expansion needs finite t > 0");
    }
}

void require_second_order_regime(const MOTMSchedule& s) {
    if (!(s.beta() < 1.0 / 3.0)) {
        throw RegimeError("beta = " + std::to_string(s.beta()) +
                          " outside the second-order regime; need beta in (0, 1/3)");
    }
}

ExpansionReport base_report(const MOTMSchedule& s, double t, ExpansionOrder order) {
    check_time(t);
    ExpansionReport r;
    r.t = t;
    r.k = s.k(t);
    r.order = order;
    return r;
}

}  // namespace

MOTMSchedule::MOTMSchedule(double theta, double beta, std::function<double(double)> slowly_varying)
    : theta_(theta), beta_(beta), slowly_varying_(std::move(slowly_varying)) {
    if (!(theta_ > 0.0) || !std::isfinite(theta_)) {
        throw DomainError("theta must be positive");
    }
    if (!(beta_ > 0.0 && beta_ < 0.5)) {
        throw RegimeError("beta = " + std::to_string(beta_) + " outside the MOTM regime (0, 1/2)");
    }
}

double MOTMSchedule::ell(double t) const {
    double l = theta_;
    if (slowly_varying_) {
        const double f = slowly_varying_(t);
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw DomainError("slowly varying factor must be positive at t = " + std::to_string(t));
        }
        l *= f;
    }
    return l;
}

double MOTMSchedule::k(double t) const {
    if (!(t > 0.0)) {
        throw DomainError("schedule needs t > 0");
    }
    return ell(t) * std::pow(t, beta_);
}

double ExpansionReport::assemble() const noexcept {
    double out = -rate_term - cubic_term;
    for (double h : higher_terms) out -= h;
    out += log_term;
    out += const_term;
    return out;
}

int refined_term_count(double beta) {
    if (!(beta > 0.0)) {
        throw RegimeError("beta must be positive");
    }
    return static_cast<int>(std::floor(1.0 / beta));
}

ExpansionReport log_price_first_order(const EnergyData& e, const MOTMSchedule& s, double t) {
    ExpansionReport r = base_report(s, t, ExpansionOrder::first);
    r.rate_term = e.lam2 * r.k * r.k / (2.0 * t);
    r.log_price = r.assemble();
    return r;
}

ExpansionReport log_price_second_order(const EnergyData& e, const MOTMSchedule& s, double t) {
    require_second_order_regime(s);
    ExpansionReport r = base_report(s, t, ExpansionOrder::second);
    const double k = r.k;
    r.rate_term = e.lam2 * k * k / (2.0 * t);
    r.cubic_term = e.lam3 * k * k * k / (6.0 * t);
    r.log_price = r.assemble();
    const double v0 = e.spot_variance();
    r.skew_form_log_price = -(k * k / (2.0 * v0 * t)) * (1.0 - skew_from_energy(e) / v0 * k);
    return r;
}

ExpansionReport log_price_refined(const EnergyData& e, const MOTMSchedule& s, double t) {
    const int n = refined_term_count(s.beta());
    if (n > 4 || (n == 4 && !e.lam4)) {
        throw UnsupportedOrderError("refined expansion at beta = " + std::to_string(s.beta()) +
                                    " needs energy derivatives up to order floor(1/beta) = " + std::to_string(n) +
                                    "; available up to " + std::to_string(e.lam4 ? 4 : 3));
    }
    if (!e.gamma0) {
        throw UnsupportedOrderError("refined expansion needs the density prefactor gamma0");
    }
    ExpansionReport r = base_report(s, t, ExpansionOrder::refined);
    const double k = r.k;
    r.rate_term = e.lam2 * k * k / (2.0 * t);
    if (n >= 3) {
        r.cubic_term = e.lam3 * k * k * k / (6.0 * t);
    }
    if (n >= 4) {
        r.higher_terms.push_back(*e.lam4 * k * k * k * k / (24.0 * t));
    }
    r.log_term = (2.0 * s.beta() - 1.5) * std::log(1.0 / t) - 2.0 * std::log(s.ell(t));
    const double v0 = e.spot_variance();
    r.const_term = std::log(*e.gamma0 * v0 * v0);
    r.log_price = r.assemble();
    return r;
}

double implied_vol_expansion(const EnergyData& e, const MOTMSchedule& s, double t) {
    require_second_order_regime(s);
    check_time(t);
    const double sigma0 = e.sigma0();
    return sigma0 - sigma0 * sigma0 * sigma0 * e.lam3 * s.k(t) / 6.0;
}

}  // namespace motm
