#include "motm/heston.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "motm/errors.hpp"

namespace motm {

namespace {

using cd = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - e^{-z}) / z, by series near 0.
cd one_minus_exp_over(cd z) {
    if (std::abs(z) < 0.5) {
        cd term(1.0, 0.0);
        cd sum(1.0, 0.0);
        for (int j = 1; j < 24; ++j) {
            term *= -z / static_cast<double>(j + 1);
            sum += term;
        }
        return sum;
    }
    return (1.0 - std::exp(-z)) / z;
}

// log(1 + y) / y with the principal branch, accurate for small |y|.
cd log1p_over(cd y) {
    if (std::abs(y) < 1e-2) {
        cd sum(0.0, 0.0);
        cd power(1.0, 0.0);
        for (int j = 0; j < 12; ++j) {
            sum += power / static_cast<double>(j + 1);
            power *= -y;
        }
        return sum;
    }
    return std::log(1.0 + y) / y;
}

struct Riccati {
    cd xi, d, r;
    double eta2;
    cd h(double tau) const { return tau * one_minus_exp_over(d * tau); }
    cd y(double tau) const { return 0.5 * eta2 * r * h(tau); }
};

// Number of 2 pi i windings picked up by log(1 + y(tau)) on tau in [0, t].
double winding(const Riccati& ric, double t) {
    if (std::abs(ric.eta2 * ric.r / ric.d) < 0.9 && ric.d.real() >= 0.0) {
        return 0.0;  // |y| < 1 along the whole path
    }
    int n = 4 + static_cast<int>(std::ceil(std::abs(ric.d.imag()) * t * 4.0 / std::numbers::pi));
    for (; n <= (1 << 16); n *= 2) {
        double phase = 0.0;
        bool fine = true;
        cd prev(1.0, 0.0);
        for (int j = 1; j <= n; ++j) {
            const cd cur = 1.0 + ric.y(t * j / n);
            const double step = std::arg(cur / prev);
            if (std::abs(step) > 1.0) {
                fine = false;
                break;
            }
            phase += step;
            prev = cur;
        }
        if (fine) {
            const double principal = std::arg(prev);
            return std::round((phase - principal) / (2.0 * std::numbers::pi));
        }
    }
    throw NumericError("could not resolve the branch of the Heston log-mgf");
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("maturity must be finite and non-negative");
    }
}

// Integrated expected variance, used as the transform frequency scale.
double mean_total_variance(const HestonParams& p, double t) {
    const double kt = p.kappa * t;
    const double weight = kt < 1e-8 ? t * (1.0 - 0.5 * kt) : -std::expm1(-kt) / p.kappa;
    return p.vbar * t + (p.v0 - p.vbar) * weight;
}

// Series coefficients of Gamma(x) = (v0/2) sum_n c_n x^{n+2}, n = 0..4.
std::array<double, 5> cgf_series(const HestonParams& p) {
    const double rb2 = 1.0 - p.rho * p.rho;
    const double a1 = 0.5 * p.eta * p.rho;
    const double a2 = p.eta * p.eta * rb2 / 12.0;
    const double a4 = std::pow(p.eta, 4) * rb2 * rb2 / 720.0;
    return {1.0, a1, a2 + a1 * a1, 2.0 * a1 * a2 + a1 * a1 * a1, a4 + a2 * a2 + 3.0 * a1 * a1 * a2 + std::pow(a1, 4)};
}

void check_cgf_domain(const HestonParams& p, double x) {
    const CgfDomain dom = heston_cgf_domain(p);
    if (!(x > dom.lower && x < dom.upper)) {
        throw DomainError("x = " + std::to_string(x) + " outside the domain of the limiting cgf");
    }
}

// D(x) = rho_bar cot(c x) - rho and its first two derivatives.
struct DenomJet {
    double d0, d1, d2;
};

DenomJet denom(const HestonParams& p, double x) {
    const double rb = p.rho_bar();
    const double c = 0.5 * p.eta * rb;
    const double y = c * x;
    const double cot = std::cos(y) / std::sin(y);
    const double csc2 = 1.0 + cot * cot;
    return {rb * cot - p.rho, -rb * c * csc2, 2.0 * rb * c * c * csc2 * cot};
}

}  // namespace

HestonParams::HestonParams(double v0_, double vbar_, double kappa_, double eta_, double rho_)
    : v0(v0_), vbar(vbar_), kappa(kappa_), eta(eta_), rho(rho_) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string(name) + " must be positive and finite");
        }
    };
    positive(v0, "v0");
    positive(vbar, "vbar");
    positive(kappa, "kappa");
    positive(eta, "eta");
    if (!(std::abs(rho) < 1.0)) {
        throw DomainError("rho must lie in (-1, 1)");
    }
}

double HestonParams::rho_bar() const noexcept { return std::sqrt((1.0 - rho) * (1.0 + rho)); }
double HestonParams::sigma0() const noexcept { return std::sqrt(v0); }

std::complex<double> heston_log_mgf(const HestonParams& p, std::complex<double> s, double t) {
    check_time(t);
    const cd q = s * (s - 1.0);
    if (t == 0.0 || q == cd(0.0, 0.0)) {
        return {0.0, 0.0};
    }
    Riccati ric;
    ric.eta2 = p.eta * p.eta;
    ric.xi = p.kappa - p.rho * p.eta * s;
    ric.d = std::sqrt(ric.xi * ric.xi - ric.eta2 * q);
    if (std::abs(ric.xi + ric.d) < std::abs(ric.xi - ric.d) * 1e-8) {
        ric.d = -ric.d;
    }
    ric.r = q / (ric.xi + ric.d);

    const cd h = ric.h(t);
    const cd y = ric.y(t);
    const cd big_d = ric.r * h * (ric.xi + ric.d) / (2.0 * (1.0 + y));
    cd lp_over = log1p_over(y);
    const double wind = winding(ric, t);
    if (wind != 0.0) {
        lp_over += cd(0.0, 2.0 * std::numbers::pi * wind) / y;
    }
    const cd big_c = p.kappa * p.vbar * (ric.r * t - ric.r * h * lp_over);
    const cd out = big_c + p.v0 * big_d;
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
        throw NumericError("Heston log-mgf overflow");
    }
    return out;
}

std::complex<double> heston_cf(const HestonParams& p, std::complex<double> u, double t) {
    return std::exp(heston_log_mgf(p, cd(0.0, 1.0) * u, t));
}

double heston_explosion_time(const HestonParams& p, double s) {
    if (std::isnan(s)) {
        throw DomainError("moment order is NaN");
    }
    if (s >= 0.0 && s <= 1.0) {
        return kInf;
    }
    const double chi = p.rho * p.eta * s - p.kappa;
    const double q = p.eta * p.eta * s * (s - 1.0);
    const double disc = chi * chi - q;
    if (disc >= 0.0) {
        if (chi <= 0.0) {
            return kInf;
        }
        const double sq = std::sqrt(disc);
        if (sq == 0.0) {
            return 2.0 / chi;
        }
        // chi - sq = q / (chi + sq) avoids cancellation.
        return std::log1p(2.0 * sq * (chi + sq) / q) / sq;
    }
    const double sq = std::sqrt(-disc);
    return 2.0 / sq * std::atan2(sq, chi);
}

double heston_log_mgf_real(const HestonParams& p, double s, double t) {
    check_time(t);
    if (std::isnan(s)) {
        throw DomainError("moment order is NaN");
    }
    if (!(t < heston_explosion_time(p, s))) {
        return kInf;
    }
    return heston_log_mgf(p, cd(s, 0.0), t).real();
}

double heston_mgf_real(const HestonParams& p, double s, double t) {
    return std::exp(heston_log_mgf_real(p, s, t));
}

MomentStrip heston_moment_strip(const HestonParams& p, double t) {
    check_time(t);
    MomentStrip strip;
    if (t == 0.0) {
        return strip;
    }
    auto edge = [&](double sign) {
        // First moment beyond [0, 1] on this side that has exploded by t.
        double inside = sign > 0 ? 1.0 : 0.0;
        double s = sign > 0 ? 2.0 : -1.0;
        while (heston_explosion_time(p, s) > t) {
            inside = s;
            s *= 2.0;
            if (std::abs(s) > 1e12) {
                return sign * kInf;
            }
        }
        double outside = s;
        for (int i = 0; i < 200 && std::abs(outside - inside) > 1e-14 * std::abs(outside); ++i) {
            const double mid = 0.5 * (inside + outside);
            (heston_explosion_time(p, mid) > t ? inside : outside) = mid;
        }
        return inside;
    };
    strip.upper = edge(1.0);
    strip.lower = edge(-1.0);
    return strip;
}

TransformModel heston_transform_model(const HestonParams& p, double t) {
    check_time(t);
    if (t == 0.0) {
        throw DomainError("transform pricing needs t > 0");
    }
    TransformModel m;
    m.log_mgf = [p, t](cd s) { return heston_log_mgf(p, s, t); };
    m.strip = heston_moment_strip(p, t);
    m.scale = std::sqrt(mean_total_variance(p, t));
    return m;
}

namespace {

OracleResult to_oracle(const TransformPrice& tp, double spot) {
    OracleResult r;
    r.value = spot * tp.value;
    r.error_estimate = spot * tp.error_estimate;
    r.meta["log_value"] = tp.log_value + std::log(spot);
    r.meta["damping"] = tp.damping;
    r.meta["truncation"] = tp.truncation;
    return r;
}

void clamp_to_bounds(OracleResult& r, double lower, double upper) {
    if (r.value < lower || r.value > upper) {
        r.warnings.push_back("price clamped to no-arbitrage bounds");
        r.value = std::clamp(r.value, lower, upper);
    }
}

}  // namespace

OracleResult heston_call(const HestonParams& p, const OptionQuery& q, const FourierGrid& g) {
    if (q.maturity() == 0.0) {
        OracleResult r;
        r.value = q.intrinsic();
        return r;
    }
    OracleResult r =
        to_oracle(transform_call(heston_transform_model(p, q.maturity()), q.log_moneyness(), g), q.spot());
    clamp_to_bounds(r, q.intrinsic(), q.spot());
    return r;
}

OracleResult heston_put(const HestonParams& p, const OptionQuery& q, const FourierGrid& g) {
    const double put_intrinsic = std::max(q.strike() - q.spot(), 0.0);
    if (q.maturity() == 0.0) {
        OracleResult r;
        r.value = put_intrinsic;
        return r;
    }
    OracleResult r =
        to_oracle(transform_put(heston_transform_model(p, q.maturity()), q.log_moneyness(), g), q.spot());
    clamp_to_bounds(r, put_intrinsic, q.strike());
    return r;
}

double heston_log_call(const HestonParams& p, double k, double t, const FourierGrid& g) {
    if (!(t > 0.0)) {
        throw DomainError("heston_log_call needs t > 0");
    }
    return transform_call(heston_transform_model(p, t), k, g).log_value;
}

OracleResult heston_digital(const HestonParams& p, double k, double t, const FourierGrid& g) {
    if (!(t > 0.0)) {
        throw DomainError("heston_digital needs t > 0");
    }
    OracleResult r = to_oracle(transform_digital(heston_transform_model(p, t), k, g), 1.0);
    clamp_to_bounds(r, 0.0, 1.0);
    return r;
}

double heston_log_digital(const HestonParams& p, double k, double t, const FourierGrid& g) {
    if (!(t > 0.0)) {
        throw DomainError("heston_log_digital needs t > 0");
    }
    return transform_digital(heston_transform_model(p, t), k, g).log_value;
}

CgfDomain heston_cgf_domain(const HestonParams& p) {
    const double rb = p.rho_bar();
    const double c = 0.5 * p.eta * rb;
    const double y0 = 0.5 * std::numbers::pi - std::atan(p.rho / rb);
    return {(y0 - std::numbers::pi) / c, y0 / c};
}

double heston_limiting_cgf(const HestonParams& p, double x) {
    check_cgf_domain(p, x);
    if (std::abs(x) < 1e-4) {
        const auto c = cgf_series(p);
        return 0.5 * p.v0 * x * x * (c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4]))));
    }
    return p.v0 * x / (p.eta * denom(p, x).d0);
}

double heston_limiting_cgf_d1(const HestonParams& p, double x) {
    check_cgf_domain(p, x);
    if (std::abs(x) < 1e-3) {
        const auto c = cgf_series(p);
        return 0.5 * p.v0 * x * (2.0 * c[0] + x * (3.0 * c[1] + x * (4.0 * c[2] + x * (5.0 * c[3] + x * 6.0 * c[4]))));
    }
    const DenomJet d = denom(p, x);
    return p.v0 / p.eta * (1.0 / d.d0 - x * d.d1 / (d.d0 * d.d0));
}

double heston_limiting_cgf_d2(const HestonParams& p, double x) {
    check_cgf_domain(p, x);
    if (std::abs(x) < 1e-3) {
        const auto c = cgf_series(p);
        return 0.5 * p.v0 *
               (2.0 * c[0] + x * (6.0 * c[1] + x * (12.0 * c[2] + x * (20.0 * c[3] + x * 30.0 * c[4]))));
    }
    const DenomJet d = denom(p, x);
    const double d0_2 = d.d0 * d.d0;
    return p.v0 / p.eta * (-2.0 * d.d1 / d0_2 - x * d.d2 / d0_2 + 2.0 * x * d.d1 * d.d1 / (d0_2 * d.d0));
}

CgfDerivatives heston_cgf_derivatives(const HestonParams& p) {
    const double g2 = p.v0;
    const double g3 = 1.5 * p.v0 * p.eta * p.rho;
    const double g4 = p.v0 * p.eta * p.eta * (2.0 * p.rho * p.rho + 1.0);
    return CgfDerivatives(g2, g3, g4);
}

double heston_energy_argmax(const HestonParams& p, double k) {
    if (!std::isfinite(k)) {
        throw DomainError("log-moneyness must be finite");
    }
    if (k == 0.0) {
        return 0.0;
    }
    // Gamma' is increasing and unbounded at both ends of the domain, so every
    // real k is attained exactly once.
    const CgfDomain dom = heston_cgf_domain(p);
    double lo = k > 0.0 ? 0.0 : dom.lower;
    double hi = k > 0.0 ? dom.upper : 0.0;
    double x = std::clamp(k / p.v0, lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
    for (int iter = 0; iter < 300; ++iter) {
        const double f = heston_limiting_cgf_d1(p, x) - k;
        if (std::abs(f) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(k)) {
            return x;
        }
        (f < 0.0 ? lo : hi) = x;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
            return x;
        }
        double next = x - f / heston_limiting_cgf_d2(p, x);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    throw NumericError("Legendre solver did not converge at k = " + std::to_string(k));
}

double heston_energy(const HestonParams& p, double k) {
    const double x = heston_energy_argmax(p, k);
    if (x == 0.0) {
        return 0.0;
    }
    return k * x - heston_limiting_cgf(p, x);
}

EnergyData heston_energy_derivs(const HestonParams& p) {
    const EnergyData e = legendre_derivatives(heston_cgf_derivatives(p));
    const double gamma0 = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * p.sigma0());
    return EnergyData(e.lam2, e.lam3, e.lam4, gamma0);
}

double heston_atm_variance_slope(const HestonParams& p) noexcept {
    return -(p.eta * p.eta / 12.0) * (1.0 - 0.25 * p.rho * p.rho) + 0.25 * p.v0 * p.rho * p.eta +
           0.5 * p.kappa * (p.vbar - p.v0);
}

}  // namespace motm
