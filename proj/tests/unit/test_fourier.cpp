#include <gtest/gtest.h>

#include <cmath>

#include "motm/black_scholes.hpp"
#include "motm/errors.hpp"
#include "motm/fourier.hpp"

using namespace motm;

namespace {

TransformModel bs_model(double sigma, double t) {
    const double v = sigma * sigma * t;
    return TransformModel{[v](std::complex<double> s) { return 0.5 * v * (s * s - s); }, MomentStrip{},
                          sigma * std::sqrt(t)};
}

}  // namespace

TEST(Fourier, BlackScholesCallAcrossStrikes) {
    for (double t : {0.01, 0.25, 2.0}) {
        for (double k : {-0.5, -0.1, 0.0, 0.1, 0.5}) {
            const auto r = transform_call(bs_model(0.2, t), k);
            const double exact = bs_call(OptionQuery::from_log_moneyness(k, t), BSParams(0.2));
            EXPECT_NEAR(r.value, exact, 1e-12) << t << " " << k;
            EXPECT_LE(r.error_estimate, 1e-12 * exact + 1e-18);
        }
    }
}

TEST(Fourier, TinyPricesInLogSpace) {
    const double t = 1e-3, k = 0.2;
    const auto r = transform_call(bs_model(0.2, t), k);
    const double exact = bs_log_call(OptionQuery::from_log_moneyness(k, t), BSParams(0.2));
    ASSERT_LT(exact, std::log(1e-15));
    EXPECT_NEAR(r.log_value, exact, 1e-2);
}

TEST(Fourier, PutCallParity) {
    const auto m = bs_model(0.3, 0.5);
    for (double k : {-0.3, 0.0, 0.2}) {
        const auto c = transform_call(m, k);
        const auto p = transform_put(m, k);
        EXPECT_NEAR(c.value - p.value, 1.0 - std::exp(k), 1e-13);
    }
}

TEST(Fourier, DampingChoicesAgree) {
    const auto m = bs_model(0.2, 0.5);
    const double ref = transform_call(m, 0.1).value;
    for (double a : {-2.5, -0.5, 1.5, 3.5}) {
        FourierGrid g;
        g.damping = a;
        g.tolerance = 1e-13;
        EXPECT_NEAR(transform_call(m, 0.1, g).value, ref, 1e-12) << a;
    }
}

TEST(Fourier, DigitalMatchesClosedForm) {
    for (double k : {-0.2, 0.0, 0.15, 0.4}) {
        const auto r = transform_digital(bs_model(0.2, 0.5), k);
        EXPECT_NEAR(r.value, bs_digital(OptionQuery::from_log_moneyness(k, 0.5), BSParams(0.2)), 1e-10) << k;
    }
}

TEST(Fourier, RejectsDampingOutsideStrip) {
    auto m = bs_model(0.2, 0.5);
    m.strip = MomentStrip{-1.0, 2.0};
    FourierGrid g;
    g.damping = 3.0;
    EXPECT_THROW(transform_call(m, 0.1, g), DomainError);
    g.damping = 0.0;
    EXPECT_THROW(transform_call(m, 0.1, g), DomainError);
}

TEST(Fourier, RejectsBadModel) {
    TransformModel m;
    m.scale = 0.1;
    EXPECT_THROW(transform_call(m, 0.0), DomainError);
    EXPECT_THROW(transform_call(bs_model(0.2, 1.0), NAN), DomainError);
}
