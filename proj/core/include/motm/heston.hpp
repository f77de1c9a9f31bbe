#pragma once

#include <complex>

#include "motm/black_scholes.hpp"
#include "motm/energy.hpp"
#include "motm/fourier.hpp"
#include "motm/oracle_result.hpp"

namespace motm {

/// dX = -V/2 dt + sqrt(V) dW,  dV = -kappa (V - vbar) dt + eta sqrt(V) dZ,  d<W,Z> = rho dt.
struct HestonParams {
    double v0;
    double vbar;
    double kappa;
    double eta;
    double rho;

    HestonParams(double v0, double vbar, double kappa, double eta, double rho);

    double rho_bar() const noexcept;
    double sigma0() const noexcept;
};

/// log E[exp(s X_t)] for complex s with Re s inside the moment strip at t.
/// The logarithm is continued along the Riccati path, so it is free of branch jumps.
std::complex<double> heston_log_mgf(const HestonParams& p, std::complex<double> s, double t);

/// E[exp(i u X_t)].
std::complex<double> heston_cf(const HestonParams& p, std::complex<double> u, double t);

/// E[exp(s X_t)] for real s; +infinity once t reaches the explosion time of s.
double heston_mgf_real(const HestonParams& p, double s, double t);

/// log E[exp(s X_t)] for real s; +infinity once t reaches the explosion time of s.
double heston_log_mgf_real(const HestonParams& p, double s, double t);

/// Moment explosion time T*(s); +infinity when the moment never explodes.
double heston_explosion_time(const HestonParams& p, double s);

/// Strip of finite real moments (p-(t), p+(t)); infinite ends are reported as
/// +-infinity.
MomentStrip heston_moment_strip(const HestonParams& p, double t);

/// The Heston law of X_t packaged for transform pricing.
TransformModel heston_transform_model(const HestonParams& p, double t);

OracleResult heston_call(const HestonParams& p, const OptionQuery& q, const FourierGrid& g = {});
OracleResult heston_put(const HestonParams& p, const OptionQuery& q, const FourierGrid& g = {});

/// log of the normalized call c(k, t); stays finite far below double underflow.
double heston_log_call(const HestonParams& p, double k, double t, const FourierGrid& g = {});

/// P[X_t >= k].
OracleResult heston_digital(const HestonParams& p, double k, double t, const FourierGrid& g = {});
double heston_log_digital(const HestonParams& p, double k, double t, const FourierGrid& g = {});

/// Domain (p-, p+) of the limiting cgf.
struct CgfDomain {
    double lower;
    double upper;
};
CgfDomain heston_cgf_domain(const HestonParams& p);

/// Gamma(x) = v0 x / (eta (rho_bar cot(eta rho_bar x / 2) - rho)).
double heston_limiting_cgf(const HestonParams& p, double x);
double heston_limiting_cgf_d1(const HestonParams& p, double x);
double heston_limiting_cgf_d2(const HestonParams& p, double x);

/// Gamma''(0), Gamma'''(0), Gamma''''(0).
CgfDerivatives heston_cgf_derivatives(const HestonParams& p);

/// Legendre transform sup_x (k x - Gamma(x)).
double heston_energy(const HestonParams& p, double k);

/// Maximizer x*(k) of the Legendre transform.
double heston_energy_argmax(const HestonParams& p, double k);

/// Analytic lam2, lam3, lam4 and gamma0.
EnergyData heston_energy_derivs(const HestonParams& p);

/// Short-time slope a(0) of the at-the-money implied variance.
double heston_atm_variance_slope(const HestonParams& p) noexcept;

}  // namespace motm
