#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>

namespace motm {

/// Quadrature controls for transform pricing. Unset damping and truncation are
/// chosen per strike: the damping at the saddle point of the damped integrand,
/// the truncation where the integrand envelope has decayed below 1e-17 of its peak.
struct FourierGrid {
    std::optional<double> damping;
    std::optional<double> truncation;
    double tolerance = 1e-18;  // absolute; floored at 1e-12 relative to the value
};

/// Open interval of real s on which E[exp(s X)] is finite; always contains [0, 1].
struct MomentStrip {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

/// The law of a log price X (with E[e^X] = 1) seen through its complex log-mgf.
struct TransformModel {
    std::function<std::complex<double>(std::complex<double>)> log_mgf;
    MomentStrip strip;
    double scale;  // rough standard deviation of X, sets the frequency scale
};

struct TransformPrice {
    double value;           // normalized price (spot = 1)
    double log_value;       // finite even when value underflows
    double error_estimate;  // absolute
    double damping;
    double truncation;
};

/// Normalized call E[(e^X - e^k)^+]. A damping in (-1, 0) or below -1 is
/// accepted and converted through put-call parity.
TransformPrice transform_call(const TransformModel& m, double k, const FourierGrid& g = {});

/// Normalized put E[(e^k - e^X)^+], priced directly when no damping is given.
TransformPrice transform_put(const TransformModel& m, double k, const FourierGrid& g = {});

/// P[X >= k]. Damping in (0, upper) prices the tail, in (lower, 0) its complement.
TransformPrice transform_digital(const TransformModel& m, double k, const FourierGrid& g = {});

}  // namespace motm
