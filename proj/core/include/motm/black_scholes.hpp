#pragma once

// Black-Scholes pricing with zero rates, written for deep out-of-the-money
// accuracy: prices are assembled from the Mills ratio so that values far below
// double-precision cancellation thresholds keep full relative accuracy, and a
// log-price entry point never underflows.

namespace motm {

struct BSParams {
    double sigma;  // annualized volatility

    explicit BSParams(double sigma);
};

/// A European call query. Spot, strike and log-moneyness are kept consistent
/// by construction.
class OptionQuery {
public:
    static OptionQuery from_strike(double spot, double strike, double maturity);
    static OptionQuery from_log_moneyness(double log_moneyness, double maturity, double spot = 1.0);

    double spot() const noexcept { return spot_; }
    double strike() const noexcept { return strike_; }
    double maturity() const noexcept { return maturity_; }
    double log_moneyness() const noexcept { return k_; }
    double intrinsic() const noexcept;

private:
    OptionQuery(double spot, double strike, double maturity, double k) noexcept
        : spot_(spot), strike_(strike), maturity_(maturity), k_(k) {}

    double spot_;
    double strike_;
    double maturity_;
    double k_;
};

double normal_pdf(double x) noexcept;

/// Standard normal cdf, accurate to full relative precision in the lower tail.
double normal_cdf(double x) noexcept;

/// Mills ratio Phi(-x)/phi(x); finite for every real x where it does not overflow.
double mills_ratio(double x);

/// Undiscounted call value. At maturity 0 returns the intrinsic value.
double bs_call(const OptionQuery& q, const BSParams& p);

/// log of bs_call; finite even where the price underflows.
double bs_log_call(const OptionQuery& q, const BSParams& p);

/// d(price)/d(sigma).
double bs_vega(const OptionQuery& q, const BSParams& p);

/// Digital call P[log(S_t/S_0) >= k] under Black-Scholes.
double bs_digital(const OptionQuery& q, const BSParams& p);

/// Implied volatility of a call price. Throws RangeError if the price is not
/// strictly inside (intrinsic, spot) and NumericError if the solver stalls.
double bs_implied_vol(const OptionQuery& q, double price);

/// Implied volatility from the log of the call price; for out-of-the-money
/// prices too small to represent directly.
double bs_implied_vol_from_log_price(const OptionQuery& q, double log_price);

/// log of the out-of-the-money price: the call for k >= 0, the put for k < 0.
/// Deep in-the-money calls carry their time value below double resolution; the
/// put side keeps it.
double bs_log_otm_price(const OptionQuery& q, const BSParams& p);

/// Inverse of bs_log_otm_price.
double bs_implied_vol_from_log_otm_price(const OptionQuery& q, double log_price);

/// Black-Scholes energy function k^2 / (2 sigma^2).
double bs_energy(double k, const BSParams& p) noexcept;

namespace detail {

/// log of the normalized call c(x, s) = C / S for log-moneyness x and total
/// standard deviation s = sigma * sqrt(t) > 0.
double log_normalized_call(double x, double s);

/// d log c / d s for the normalized call.
double dlog_normalized_call_ds(double x, double s);

}  // namespace detail

}  // namespace motm
