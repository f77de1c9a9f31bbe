#include "motm/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "motm/errors.hpp"

namespace motm {

namespace {

using cd = std::complex<double>;

enum class Kind { call, digital };

struct RawTransform {
    double log_scale;  // the raw value is exp(log_scale) * integral
    double integral;   // (1/pi) int_0^U of the rescaled integrand
    double error;      // same units as integral
    double truncation;
    double value() const { return std::exp(log_scale) * integral; }
};

// Moment at which the transform is evaluated for a given damping.
double moment_of(Kind kind, double alpha) { return kind == Kind::call ? alpha + 1.0 : alpha; }

cd denominator(Kind kind, double alpha, double u) {
    const cd a(alpha, u);
    return kind == Kind::call ? a * (a + 1.0) : a;
}

double real_log_mgf(const TransformModel& m, double s) {
    if (!(s > m.strip.lower && s < m.strip.upper)) {
        return std::numeric_limits<double>::infinity();
    }
    const double v = m.log_mgf(cd(s, 0.0)).real();
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

void check_damping(const TransformModel& m, Kind kind, double alpha) {
    const double s = moment_of(kind, alpha);
    if (!std::isfinite(alpha) || alpha == 0.0 || (kind == Kind::call && alpha == -1.0)) {
        throw DomainError("damping sits on a pole of the transform");
    }
    if (!(s > m.strip.lower && s < m.strip.upper)) {
        throw DomainError("damping " + std::to_string(alpha) + " outside the strip of finite moments");
    }
}

double find_truncation(const TransformModel& m, Kind kind, double alpha, double k_unused) {
    (void)k_unused;
    const double s0 = moment_of(kind, alpha);
    const double l0 = real_log_mgf(m, s0);
    const double d0 = std::abs(denominator(kind, alpha, 0.0));
    auto log_envelope = [&](double u) {
        return m.log_mgf(cd(s0, u)).real() - l0 - std::log(std::abs(denominator(kind, alpha, u)) / d0);
    };
    const double target = std::log(1e-17);
    const double start = 1.0 / m.scale;
    const double cap = 1e10 / m.scale;
    int below = 0;
    for (double u = start; u < cap; u *= 1.25) {
        const double e = log_envelope(u);
        if (std::isnan(e)) {
            throw NumericError("transform integrand is NaN at u = " + std::to_string(u));
        }
        below = e < target ? below + 1 : 0;
        if (below == 2) {
            return u;
        }
    }
    throw NumericError("transform integrand does not decay");
}

RawTransform raw_transform(const TransformModel& m, Kind kind, double k, double alpha,
                           std::optional<double> truncation) {
    check_damping(m, kind, alpha);
    const double s0 = moment_of(kind, alpha);
    const double l0 = real_log_mgf(m, s0);
    if (!std::isfinite(l0)) {
        throw DomainError("mgf is infinite at the requested damping");
    }
    const double upper = truncation ? *truncation : find_truncation(m, kind, alpha, k);
    if (!(upper > 0.0)) {
        throw DomainError("truncation must be positive");
    }

    auto integrand = [&](double u) {
        const cd z = std::exp(m.log_mgf(cd(s0, u)) - l0 - cd(0.0, u * k));
        return (z / denominator(kind, alpha, u)).real();
    };

    // Panels of a few oscillation/decay scales keep the adaptive rule shallow.
    const double width = std::max(2.0 / m.scale, std::abs(k) > 0 ? 4.0 * std::numbers::pi / std::abs(k) : 0.0);
    const int panels = std::clamp(static_cast<int>(std::ceil(upper / width)), 1, 4000);
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = upper * i / panels;
        const double b = upper * (i + 1) / panels;
        double e = 0.0;
        const double piece =
            boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 12, 1e-15, &e);
        // Neumaier summation.
        const double t = sum + piece;
        comp += std::abs(sum) >= std::abs(piece) ? (sum - t) + piece : (piece - t) + sum;
        sum = t;
        err += e;
    }
    RawTransform r;
    r.log_scale = l0 - alpha * k;
    r.integral = (sum + comp) / std::numbers::pi;
    r.error = err / std::numbers::pi;
    r.truncation = upper;
    return r;
}

// Damping minimizing the log of the integrand at u = 0 over (lo, hi).
double optimal_damping(const TransformModel& m, Kind kind, double k, double lo, double hi) {
    auto objective = [&](double alpha) {
        const double lm = real_log_mgf(m, moment_of(kind, alpha));
        const double den = std::abs(denominator(kind, alpha, 0.0));
        return -alpha * k + lm - std::log(den);
    };
    return boost::math::tools::brent_find_minima(objective, lo, hi, 40).first;
}

double damping_cap(const TransformModel& m, double k) {
    const double var = m.scale * m.scale;
    return 10.0 + 4.0 * std::abs(k) / var + 20.0 / m.scale;
}

// Search interval strictly inside (lo, hi), capped in magnitude.
std::pair<double, double> interior(double lo, double hi, double cap) {
    lo = std::max(lo, -cap);
    hi = std::min(hi, cap);
    const double margin = 1e-7 * (hi - lo);
    return {lo + margin, hi - margin};
}

TransformPrice finish(const RawTransform& r, double value, bool direct, const FourierGrid& g,
                      double alpha) {
    const double err = std::exp(r.log_scale) * r.error;
    TransformPrice p{};
    p.value = value;
    p.error_estimate = err;
    p.damping = alpha;
    p.truncation = r.truncation;
    if (direct) {
        if (!(r.integral > 0.0)) {
            throw NumericError("transform returned a non-positive price (damping " + std::to_string(alpha) +
                               ")");
        }
        p.log_value = r.log_scale + std::log(r.integral);
        if (!(r.error <= std::max(g.tolerance * std::exp(-r.log_scale), 1e-12 * r.integral))) {
            throw NumericError("transform error estimate " + std::to_string(err) + " above tolerance");
        }
    } else {
        if (!(value > 0.0)) {
            throw NumericError("parity-converted price is not positive");
        }
        p.log_value = std::log(value);
        if (!(err <= std::max(g.tolerance, 1e-12 * std::abs(value)))) {
            throw NumericError("transform error estimate " + std::to_string(err) + " above tolerance");
        }
    }
    return p;
}

void check_model(const TransformModel& m, double k) {
    if (!m.log_mgf || !(m.scale > 0.0) || !std::isfinite(m.scale)) {
        throw DomainError("transform model needs a log-mgf and a positive scale");
    }
    if (!std::isfinite(k)) {
        throw DomainError("log-strike must be finite");
    }
}

// Raw call-kind transform at a given damping, mapped to the call or the put.
TransformPrice call_or_put(const TransformModel& m, double k, double alpha, const FourierGrid& g,
                           bool want_put) {
    const RawTransform r = raw_transform(m, Kind::call, k, alpha, g.truncation);
    const double raw = r.value();
    const double parity = -std::expm1(k);  // call - put = 1 - e^k
    if (alpha > 0.0) {
        return want_put ? finish(r, raw - parity, false, g, alpha) : finish(r, raw, true, g, alpha);
    }
    if (alpha < -1.0) {
        return want_put ? finish(r, raw, true, g, alpha) : finish(r, raw + parity, false, g, alpha);
    }
    const double call = raw + 1.0;
    return want_put ? finish(r, call - parity, false, g, alpha) : finish(r, call, false, g, alpha);
}

}  // namespace

TransformPrice transform_call(const TransformModel& m, double k, const FourierGrid& g) {
    check_model(m, k);
    if (g.damping) {
        return call_or_put(m, k, *g.damping, g, false);
    }
    const double cap = damping_cap(m, k);
    if (k >= 0.0 || m.strip.lower >= 0.0) {
        const auto [lo, hi] = interior(0.0, m.strip.upper - 1.0, cap);
        return call_or_put(m, k, optimal_damping(m, Kind::call, k, lo, hi), g, false);
    }
    const auto [lo, hi] = interior(m.strip.lower - 1.0, -1.0, cap);
    return call_or_put(m, k, optimal_damping(m, Kind::call, k, lo, hi), g, false);
}

TransformPrice transform_put(const TransformModel& m, double k, const FourierGrid& g) {
    check_model(m, k);
    if (g.damping) {
        return call_or_put(m, k, *g.damping, g, true);
    }
    const double cap = damping_cap(m, k);
    if (k <= 0.0 && m.strip.lower < 0.0) {
        const auto [lo, hi] = interior(m.strip.lower - 1.0, -1.0, cap);
        return call_or_put(m, k, optimal_damping(m, Kind::call, k, lo, hi), g, true);
    }
    const auto [lo, hi] = interior(0.0, m.strip.upper - 1.0, cap);
    return call_or_put(m, k, optimal_damping(m, Kind::call, k, lo, hi), g, true);
}

TransformPrice transform_digital(const TransformModel& m, double k, const FourierGrid& g) {
    check_model(m, k);
    double alpha;
    if (g.damping) {
        alpha = *g.damping;
    } else {
        const double cap = damping_cap(m, k);
        if (k >= 0.0 || m.strip.lower >= 0.0) {
            const auto [lo, hi] = interior(0.0, m.strip.upper, cap);
            alpha = optimal_damping(m, Kind::digital, k, lo, hi);
        } else {
            const auto [lo, hi] = interior(m.strip.lower, 0.0, cap);
            alpha = optimal_damping(m, Kind::digital, k, lo, hi);
        }
    }
    const RawTransform r = raw_transform(m, Kind::digital, k, alpha, g.truncation);
    if (alpha > 0.0) {
        return finish(r, r.value(), true, g, alpha);
    }
    return finish(r, 1.0 + r.value(), false, g, alpha);
}

}  // namespace motm
