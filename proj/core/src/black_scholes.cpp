#include "motm/black_scholes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "motm/errors.hpp"

namespace motm {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

// From this argument on the continued fraction is used.
constexpr double kMillsFractionThreshold = 6.0;

// Tail of the continued fraction M(x) = 1 / (x + 1/(x + 2/(x + ...))), starting at
// coefficient `first`, evaluated backwards. 8 + 800/x^2 terms reach 1e-17 for x >= 6
// (21 are needed at x = 6, 4 at x = 100).
double mills_fraction_tail(double x, int first) {
    const int terms = 8 + static_cast<int>(std::ceil(800.0 / (x * x)));
    double tail = x;
    for (int n = terms; n >= first; --n) {
        tail = x + n / tail;
    }
    return tail;
}

double mills_continued_fraction(double x) { return 1.0 / mills_fraction_tail(x, 1); }

}  // namespace

BSParams::BSParams(double sigma_) : sigma(sigma_) {
    require_finite(sigma, "sigma");
    if (sigma <= 0.0) {
        throw DomainError("sigma must be positive");
    }
}

OptionQuery OptionQuery::from_strike(double spot, double strike, double maturity) {
    require_finite(spot, "spot");
    require_finite(strike, "strike");
    require_finite(maturity, "maturity");
    if (spot <= 0.0 || strike <= 0.0) {
        throw DomainError("spot and strike must be positive");
    }
    if (maturity < 0.0) {
        throw DomainError("maturity must be non-negative");
    }
    return OptionQuery(spot, strike, maturity, std::log(strike / spot));
}

OptionQuery OptionQuery::from_log_moneyness(double log_moneyness, double maturity, double spot) {
    require_finite(log_moneyness, "log-moneyness");
    require_finite(spot, "spot");
    require_finite(maturity, "maturity");
    if (spot <= 0.0) {
        throw DomainError("spot must be positive");
    }
    if (maturity < 0.0) {
        throw DomainError("maturity must be non-negative");
    }
    return OptionQuery(spot, spot * std::exp(log_moneyness), maturity, log_moneyness);
}

double OptionQuery::intrinsic() const noexcept {
    return spot_ > strike_ ? spot_ - strike_ : 0.0;
}

double normal_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double normal_cdf(double x) noexcept {
    if (!(x < 0.0)) {
        return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
    }
    // In the left tail the rounding of z = -x/sqrt(2) costs about x^2 ulps, so the
    // argument error is carried separately and corrected to first order.
    constexpr double kInvSqrt2Hi = 0.70710678118654757;   // nearest double to 1/sqrt(2)
    constexpr double kInvSqrt2Lo = -4.8336466567264567e-17;
    constexpr double kTwoOverSqrtPi = 1.1283791670955126;
    const double y = -x;
    const double z = y * kInvSqrt2Hi;
    const double dz = std::fma(y, kInvSqrt2Hi, -z) + y * kInvSqrt2Lo;
    const double zz = z * z;
    const double zz_lo = std::fma(z, z, -zz);
    const double density = std::exp(-zz) * (1.0 - zz_lo);
    return 0.5 * (std::erfc(z) - dz * kTwoOverSqrtPi * density);
}

double mills_ratio(double x) {
    if (std::isnan(x)) {
        throw DomainError("mills_ratio of NaN");
    }
    if (x >= kMillsFractionThreshold) {
        return mills_continued_fraction(x);
    }
    if (x >= 0.0) {
        // erfcx-style evaluation; exp(x^2/2) stays far from overflow here.
        return std::sqrt(std::numbers::pi / 2.0) * std::exp(0.5 * x * x) *
               std::erfc(x * std::numbers::sqrt2 / 2.0);
    }
    return normal_cdf(-x) / normal_pdf(x);
}

namespace {

// -M'(z) = 1 - z M(z), without cancellation for large z.
double mills_slope(double z) {
    if (z >= kMillsFractionThreshold) {
        const double inner = 1.0 / mills_fraction_tail(z, 2);  // 1/(z + 2/(z + ...))
        return inner / (z + inner);
    }
    return 1.0 - z * mills_ratio(z);
}

// M(a) - M(a + s) for a > 0. When s is small against a the difference is taken
// as the integral of -M' to avoid losing it to cancellation.
double mills_spread(double a, double s) {
    if (s > std::max(a, 1.0)) {
        return mills_ratio(a) - mills_ratio(a + s);
    }
    // Integrate over the unit interval so that the width survives even when a + s rounds to a.
    auto slope = [a, s](double u) { return mills_slope(a + s * u); };
    return s * boost::math::quadrature::gauss<double, 20>::integrate(slope, 0.0, 1.0);
}

}  // namespace

namespace detail {

double log_normalized_call(double x, double s) {
    if (!(s > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_normalized_call needs s > 0 and finite x");
    }
    if (x < 0.0) {
        // c(x) = 1 - e^x + e^x c(-x): in-the-money value as intrinsic plus an OTM put.
        const double otm = std::exp(x + log_normalized_call(-x, s));
        return std::log(-std::expm1(x) + otm);
    }
    if (x == 0.0) {
        return std::log(std::erf(s / (2.0 * std::numbers::sqrt2)));
    }
    const double a1 = x / s - 0.5 * s;
    if (a1 <= 0.0) {
        return std::log(normal_cdf(-a1) - std::exp(x) * normal_cdf(-a1 - s));
    }
    // c = phi(a1) [M(a1) - M(a2)], using e^x phi(a2) = phi(a1).
    const double spread = mills_spread(a1, s);
    if (!(spread > 0.0)) {
        throw NumericError("call value underflows at x=" + std::to_string(x) + ", s=" + std::to_string(s));
    }
    return -0.5 * a1 * a1 - kLogSqrt2Pi + std::log(spread);
}

double dlog_normalized_call_ds(double x, double s) {
    if (!(s > 0.0)) {
        throw DomainError("dlog_normalized_call_ds needs s > 0");
    }
    const double a1 = x / s - 0.5 * s;
    if (x > 0.0 && a1 > 0.0) {
        return 1.0 / mills_spread(a1, s);
    }
    return normal_pdf(a1) / std::exp(log_normalized_call(x, s));
}

}  // namespace detail

double bs_log_call(const OptionQuery& q, const BSParams& p) {
    if (q.maturity() == 0.0) {
        return std::log(q.intrinsic());
    }
    const double s = p.sigma * std::sqrt(q.maturity());
    if (!std::isfinite(s)) {
        throw DomainError("total volatility overflow");
    }
    return std::log(q.spot()) + detail::log_normalized_call(q.log_moneyness(), s);
}

double bs_log_otm_price(const OptionQuery& q, const BSParams& p) {
    const double k = q.log_moneyness();
    if (q.maturity() == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double s = p.sigma * std::sqrt(q.maturity());
    if (!std::isfinite(s)) {
        throw DomainError("total volatility overflow");
    }
    // put(k) = e^k c(-k) in normalized units
    return std::log(q.spot()) + std::min(k, 0.0) + detail::log_normalized_call(std::abs(k), s);
}

double bs_call(const OptionQuery& q, const BSParams& p) {
    if (q.maturity() == 0.0) {
        return q.intrinsic();
    }
    const double price = std::exp(bs_log_call(q, p));
    // Guard the last ulp so the no-arbitrage bounds hold exactly.
    if (price < q.intrinsic()) return q.intrinsic();
    if (price > q.spot()) return q.spot();
    return price;
}

double bs_vega(const OptionQuery& q, const BSParams& p) {
    if (q.maturity() == 0.0) {
        return 0.0;
    }
    const double sqrt_t = std::sqrt(q.maturity());
    const double s = p.sigma * sqrt_t;
    return q.spot() * sqrt_t * normal_pdf(q.log_moneyness() / s - 0.5 * s);
}

double bs_digital(const OptionQuery& q, const BSParams& p) {
    const double k = q.log_moneyness();
    if (q.maturity() == 0.0) {
        return k <= 0.0 ? 1.0 : 0.0;
    }
    const double s = p.sigma * std::sqrt(q.maturity());
    return normal_cdf(-k / s - 0.5 * s);
}

double bs_energy(double k, const BSParams& p) noexcept {
    return 0.5 * k * k / (p.sigma * p.sigma);
}

namespace {

// Solves log c(x, sigma sqrt(t)) = target for x >= 0 with a bracketed Newton
// iteration in sigma, falling back to bisection whenever Newton leaves the bracket.
double solve_implied_vol(double x, double t, double target) {
    const double sqrt_t = std::sqrt(t);
    auto residual = [&](double sigma) {
        return detail::log_normalized_call(x, sigma * sqrt_t) - target;
    };

    double lo = 1e-8;
    double hi = 10.0;
    while (residual(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e8) {
            throw RangeError("price above every attainable Black-Scholes value");
        }
    }
    while (residual(lo) > 0.0) {
        lo *= 1e-2;
        if (lo < 1e-300) {
            throw RangeError("price below every attainable Black-Scholes value");
        }
    }

    const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(target));
    double sigma = std::clamp(std::sqrt(2.0 * std::abs(x) / t) + 0.1, lo, hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double r = residual(sigma);
        if (std::abs(r) <= tol) {
            return sigma;
        }
        (r < 0.0 ? lo : hi) = sigma;
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) {
            return 0.5 * (lo + hi);
        }
        const double slope = sqrt_t * detail::dlog_normalized_call_ds(x, sigma * sqrt_t);
        // log c is steep for small sigma, so an unlimited step from above overshoots by decades
        double next = std::clamp(sigma - r / slope, 0.25 * sigma, 4.0 * sigma);
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        } else if (std::abs(next - sigma) <= 1e-15 * sigma) {
            return next;
        }
        sigma = next;
    }
    throw NumericError("implied volatility did not converge");
}

}  // namespace

double bs_implied_vol_from_log_price(const OptionQuery& q, double log_price) {
    if (!(q.maturity() > 0.0)) {
        throw DomainError("implied volatility needs maturity > 0");
    }
    if (std::isnan(log_price)) {
        throw DomainError("log price is NaN");
    }
    const double k = q.log_moneyness();
    const double log_c = log_price - std::log(q.spot());
    if (!(log_c < 0.0) || !std::isfinite(log_c)) {
        throw RangeError("call price must lie strictly between intrinsic value and spot");
    }
    if (k >= 0.0) {
        return solve_implied_vol(k, q.maturity(), log_c);
    }
    // Invert the out-of-the-money put: c(-k) = (c - (1 - e^k)) e^{-k}.
    const double put = std::exp(log_c) + std::expm1(k);
    if (!(put > 0.0)) {
        throw RangeError("call price must lie strictly between intrinsic value and spot");
    }
    return solve_implied_vol(-k, q.maturity(), std::log(put) - k);
}

double bs_implied_vol_from_log_otm_price(const OptionQuery& q, double log_price) {
    if (!(q.maturity() > 0.0)) {
        throw DomainError("implied volatility needs maturity > 0");
    }
    if (std::isnan(log_price)) {
        throw DomainError("log price is NaN");
    }
    const double k = q.log_moneyness();
    const double log_c = log_price - std::log(q.spot()) - std::min(k, 0.0);
    if (!(log_c < 0.0) || !std::isfinite(log_c)) {
        throw RangeError("out-of-the-money price must lie strictly between zero and its upper bound");
    }
    return solve_implied_vol(std::abs(k), q.maturity(), log_c);
}

double bs_implied_vol(const OptionQuery& q, double price) {
    if (!std::isfinite(price)) {
        throw DomainError("price must be finite");
    }
    if (!(q.maturity() > 0.0)) {
        throw DomainError("implied volatility needs maturity > 0");
    }
    if (!(price > q.intrinsic()) || !(price < q.spot())) {
        throw RangeError("call price must lie strictly between intrinsic value and spot");
    }
    double sigma;
    const double k = q.log_moneyness();
    if (k >= 0.0) {
        sigma = solve_implied_vol(k, q.maturity(), std::log(price / q.spot()));
    } else {
        const double put = price - q.intrinsic();  // put value by parity
        sigma = solve_implied_vol(-k, q.maturity(), std::log(put / q.strike()));
    }
    const double repriced = bs_call(q, BSParams(sigma));
    if (std::abs(repriced - price) > 1e-12) {
        throw NumericError("implied volatility reprices outside tolerance");
    }
    return sigma;
}

}  // namespace motm
