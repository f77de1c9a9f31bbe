#include "motm/two_factor.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "motm/errors.hpp"

namespace motm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Value and first two derivatives in v at v0. Unknown derivatives are NaN so
// that any result depending on them is visibly poisoned.
struct Jet {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

Jet operator*(const Jet& a, const Jet& b) {
    return {a.f * b.f, a.d1 * b.f + a.f * b.d1, a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
}

Jet derivative(const Jet& a) { return {a.d1, a.d2, kNaN}; }

// A coefficient field written as sum_m c_m tau^m in tau = 1 - t.
using Field = std::vector<Jet>;

Jet scaled(const Jet& a, double s) { return {a.f * s, a.d1 * s, a.d2 * s}; }

// tau -> int_t^1 d/dv f(s) ds, term by term: c_m tau^m -> c_m' tau^{m+1}/(m+1).
Field integrated_derivative(const Field& f) {
    Field out(f.size() + 1);
    for (std::size_t m = 0; m < f.size(); ++m) {
        out[m + 1] = scaled(derivative(f[m]), 1.0 / static_cast<double>(m + 1));
    }
    return out;
}

Field multiply(const Jet& a, const Field& f) {
    Field out(f.size());
    for (std::size_t m = 0; m < f.size(); ++m) out[m] = a * f[m];
    return out;
}

Field multiply(const Field& f, const Field& g) {
    if (f.empty() || g.empty()) return {};
    Field out(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            const Jet p = f[i] * g[j];
            out[i + j].f += p.f;
            out[i + j].d1 += p.d1;
            out[i + j].d2 += p.d2;
        }
    }
    return out;
}

// int_0^1 of the field value at v0.
double time_average(const Field& f) {
    double s = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m) s += f[m].f / static_cast<double>(m + 1);
    return s;
}

void check_derivative(const TwoFactorSVModel::Fn& f, const TwoFactorSVModel::Fn& df, double v0) {
    const double h = 1e-4 * v0;
    auto central = [&](double step) { return (f(v0 + step) - f(v0 - step)) / (2.0 * step); };
    const double fd = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    const double exact = df(v0);
    const double scale = std::max(std::abs(exact), 1e-8 * std::max(1.0, std::abs(f(v0)) / v0));
    if (!std::isfinite(exact) || std::abs(fd - exact) >= 1e-4 * scale) {
        throw DomainError("nu' disagrees with finite differences at v0 (given " + std::to_string(exact) +
                          ", numerical " + std::to_string(fd) + ")");
    }
}

}  // namespace

TwoFactorSVModel::TwoFactorSVModel(double v0, double eta, double rho, Fn nu, Fn nu_d1)
    : v0_(v0), eta_(eta), rho_(rho), nu_(std::move(nu)), nu_d1_(std::move(nu_d1)) {
    if (!(v0_ > 0.0) || !std::isfinite(v0_)) throw DomainError("v0 must be positive");
    if (!(eta_ > 0.0) || !std::isfinite(eta_)) throw DomainError("eta must be positive");
    if (!(std::abs(rho_) < 1.0)) throw DomainError("rho must lie in (-1, 1)");
    if (!nu_ || !nu_d1_) throw DomainError("nu and nu' must be supplied");
    check_derivative(nu_, nu_d1_, v0_);
}

TwoFactorSVModel TwoFactorSVModel::heston(double v0, double eta, double rho) {
    return TwoFactorSVModel(v0, eta, rho, [](double) { return 1.0; }, [](double) { return 0.0; });
}

TwoFactorSVModel TwoFactorSVModel::three_halves(double v0, double eta, double rho) {
    return TwoFactorSVModel(v0, eta, rho, [](double v) { return v; }, [](double) { return 1.0; });
}

bool TwoFactorSVModel::degenerate_skew() const { return nu_(v0_) == 0.0; }

OsajimaCoefficients osajima_two_factor(const TwoFactorSVModel& m) {
    const double v0 = m.v0();
    const double eta = m.eta();
    const double rho = m.rho();
    const double n0 = m.nu(v0);
    const double n1 = m.nu_d1(v0);
    // nu'' is never needed below: b3 uses at most one derivative of a12.
    const double n2 = kNaN;

    const Jet a11{v0, 1.0, 0.0};
    const Jet a12 = Jet{rho * eta, 0.0, 0.0} * Jet{v0, 1.0, 0.0} * Jet{n0, n1, n2};
    const Jet nu{n0, n1, n2};
    const Jet a22 = Jet{eta * eta, 0.0, 0.0} * Jet{v0, 1.0, 0.0} * nu * nu;

    const Field f11{a11};
    const Field i11 = integrated_derivative(f11);
    const Field v_a11 = multiply(a12, i11);
    const Field v2_a11 = multiply(a12, integrated_derivative(v_a11));
    const Field gamma_11 = multiply(a22, multiply(i11, i11));

    OsajimaCoefficients c{};
    c.b1 = time_average(f11);
    c.b2 = 1.5 * time_average(v_a11);
    c.b3 = 2.0 * time_average(v2_a11) + 0.5 * time_average(gamma_11);
    if (!std::isfinite(c.b3)) {
        throw NumericError("b3 depends on an unavailable derivative");
    }
    return c;
}

EnergyData energy_from_osajima(const OsajimaCoefficients& c, std::optional<double> gamma0) {
    if (!(c.b1 > 0.0)) {
        throw DomainError("b1 must be positive");
    }
    const double b1 = c.b1;
    const double b1_3 = b1 * b1 * b1;
    const double lam2 = 1.0 / b1;
    const double lam3 = -2.0 * c.b2 / b1_3;
    const double lam4 = -6.0 * c.b3 / (b1_3 * b1) + 12.0 * c.b2 * c.b2 / (b1_3 * b1 * b1);
    return EnergyData(lam2, lam3, lam4, gamma0);
}

}  // namespace motm
