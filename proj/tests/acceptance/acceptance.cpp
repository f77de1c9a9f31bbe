// Acceptance gates. Usage: motm_acceptance <AC1..AC10|all> [path to motm binary] [config dir]
// Prints one PASS/FAIL line per gate; exit status is the number of failed gates (capped).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "motm/black_scholes.hpp"
#include "motm/dupire.hpp"
#include "motm/energy.hpp"
#include "motm/expansion.hpp"
#include "motm/finite_difference.hpp"
#include "motm/heston.hpp"
#include "motm/local_vol.hpp"
#include "motm/moderate_deviation.hpp"
#include "motm/monte_carlo.hpp"
#include "motm/two_factor.hpp"

using namespace motm;

namespace {

const HestonParams kHeston(0.0654, 0.0707, 0.6067, 0.2928, -0.7571);

int g_failed = 0;
std::string g_binary;
std::string g_configs;

void gate(const std::string& id, bool pass, const char* fmt, ...) __attribute__((format(printf, 3, 4)));

void gate(const std::string& id, bool pass, const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), buf);
    std::fflush(stdout);
    if (!pass) ++g_failed;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

double heston_iv(double k, double t) {
    return bs_implied_vol_from_log_price(OptionQuery::from_log_moneyness(k, t), heston_log_call(kHeston, k, t));
}

void ac1() {
    const MOTMSchedule s(0.4, 0.3);
    const double sigma0 = kHeston.sigma0();
    const double slope = kHeston.eta * kHeston.rho / (4.0 * sigma0);
    std::vector<double> diffs;
    for (double t : {1.0, 0.1, 0.01}) {
        const double k = s.k(t);
        diffs.push_back(std::abs(heston_iv(k, t) - (sigma0 + slope * k)));
    }
    gate("AC1.abs_diff_decreasing", diffs[0] > diffs[1] && diffs[1] > diffs[2], "|exact-approx| = %.6g, %.6g, %.6g at t = 1, 0.1, 0.01",
         diffs[0], diffs[1], diffs[2]);
    const double t = 0.005, k = s.k(t);
    const double emp = (heston_iv(k, t) - sigma0) / k;
    gate("AC1.slope_t0.005", rel(emp, -0.21671) <= 0.10, "empirical slope %.6f vs -0.21671 (rel %.4f, gate 0.10)", emp,
         rel(emp, -0.21671));
}

void ac2() {
    auto f = [](double k) { return heston_energy(kHeston, k); };
    const auto d = fd_derivatives(f, 0.0, {2, 3, 4});
    const double lam2_ref = 1.0 / kHeston.v0;
    const double lam3_ref = -1.5 * kHeston.eta * kHeston.rho / (kHeston.v0 * kHeston.v0);
    const auto osa = energy_from_osajima(osajima_two_factor(TwoFactorSVModel::heston(kHeston.v0, kHeston.eta, kHeston.rho)));
    gate("AC2.lam2", rel(d[0].value, lam2_ref) <= 1e-4, "fd %.8f vs 1/v0 %.8f (rel %.2e, gate 1e-4)", d[0].value, lam2_ref,
         rel(d[0].value, lam2_ref));
    gate("AC2.lam3", rel(d[1].value, lam3_ref) <= 1e-3, "fd %.6f vs %.6f (rel %.2e, gate 1e-3)", d[1].value, lam3_ref,
         rel(d[1].value, lam3_ref));
    gate("AC2.lam4", rel(d[2].value, *osa.lam4) <= 1e-2 && rel(*osa.lam4, 527.98) <= 1e-2,
         "fd %.4f vs Osajima %.4f (rel %.2e, gate 1e-2)", d[2].value, *osa.lam4, rel(d[2].value, *osa.lam4));
}

void ac3() {
    for (double beta : {0.4, 0.3}) {
        const MOTMSchedule s(0.4, beta);
        const auto e = heston_energy_derivs(kHeston);
        auto residual = [&](double t) {
            return std::abs(heston_log_call(kHeston, s.k(t), t) - log_price_refined(e, s, t).log_price);
        };
        const double r1 = residual(1e-1), r3 = residual(1e-3);
        char id[64];
        std::snprintf(id, sizeof id, "AC3.beta%.1f.residual_le_0.15", beta);
        gate(id, r3 <= 0.15, "|log c_exact - log c_refined| = %.4f at t=1e-3 (gate 0.15; %d terms)", r3,
             refined_term_count(beta));
        std::snprintf(id, sizeof id, "AC3.beta%.1f.shrinking", beta);
        gate(id, r3 < r1, "residual %.4f at t=1e-3 vs %.4f at t=1e-1", r3, r1);
    }
}

void ac4() {
    const auto c = LocalVolModel::constant(0.2);
    double worst = 0.0;
    for (int i = -40; i <= 40; ++i) {
        const double k = i / 40.0;
        worst = std::max(worst, std::abs(localvol_energy(c, k) - bs_energy(k, BSParams(0.2))));
    }
    gate("AC4.constant_is_bs", worst <= 1e-12, "max |Lambda_LV - Lambda_BS| over |k|<=1 = %.3e (gate 1e-12)", worst);
    const auto e = localvol_energy_derivs(LocalVolModel::power(0.2, -0.5));
    gate("AC4.power_lam2_lam3", std::abs(e.lam2 - 25.0) <= 1e-12 && std::abs(e.lam3 - 37.5) <= 1e-12,
         "(lam2, lam3) = (%.17g, %.17g)", e.lam2, e.lam3);
}

void ac5() {
    const auto he = heston_energy_derivs(kHeston);
    const double s_he = skew_from_energy(he), id_he = 0.5 * kHeston.rho * kHeston.eta;
    gate("AC5.heston", std::abs(s_he - id_he) <= 1e-12, "skew %.15f vs rho eta / 2 %.15f", s_he, id_he);
    const auto m = TwoFactorSVModel::three_halves(0.04, 1.0, -0.5);
    const double s_th = skew_from_energy(energy_from_osajima(osajima_two_factor(m)));
    const double id_th = 0.5 * m.rho() * m.eta() * m.nu(m.v0());
    gate("AC5.three_halves", std::abs(s_th - id_th) <= 1e-12, "skew %.15f vs rho eta nu(v0) / 2 %.15f", s_th, id_th);
    const auto lv = LocalVolModel::power(0.2, -0.5);
    const double s_lv = skew_from_energy(localvol_energy_derivs(lv));
    const double d1 = 2.0 * (s_lv / (2.0 * lv.sigma(1.0)));
    gate("AC5.localvol", std::abs(d1 - lv.sigma_d1(1.0)) <= 1e-12, "2 S / (2 sigma) = %.15f vs sigma'(1) = %.15f", d1,
         lv.sigma_d1(1.0));
}

void ac6() {
    RealLogMgf mgf = [](double s, double t) { return heston_log_mgf_real(kHeston, s, t); };
    for (double beta : {0.25, 0.4}) {
        for (double p : {0.5, 1.0, 2.0}) {
            const double v = rescaled_cgf(mgf, p, beta, 1e-5);
            const double target = 0.5 * kHeston.v0 * p * p;
            char id[64];
            std::snprintf(id, sizeof id, "AC6.p%.1f.beta%.2f", p, beta);
            gate(id, rel(v, target) <= 0.05, "%.6g vs %.6g (rel %.4f, gate 0.05)", v, target, rel(v, target));
        }
    }
}

void ac7() {
    auto call = [](double k, double t) { return heston_log_call(kHeston, k, t); };
    auto digital = [](double k, double t) { return heston_log_digital(kHeston, k, t); };
    auto explode = [](double p) { return heston_explosion_time(kHeston, p); };
    const auto tab = transfer_check(call, digital, MOTMSchedule(0.4, 0.3), {0.1, 0.01, 0.001}, MDRate(kHeston.v0), explode);
    const auto& last = tab.rows.back();
    gate("AC7.call_within_20pct", rel(last.scaled_log_call, tab.md_limit) <= 0.2, "%.4f vs %.4f (rel %.3f, gate 0.2)",
         last.scaled_log_call, tab.md_limit, rel(last.scaled_log_call, tab.md_limit));
    gate("AC7.digital_within_20pct", rel(last.scaled_log_digital, tab.md_limit) <= 0.2,
         "%.4f vs %.4f (rel %.3f, gate 0.2)", last.scaled_log_digital, tab.md_limit,
         rel(last.scaled_log_digital, tab.md_limit));
    const double d0 = std::abs(tab.rows.front().difference), d2 = std::abs(last.difference);
    gate("AC7.difference_halving", d2 <= 0.5 * d0, "|difference| %.4f at t=0.1, %.4f at t=1e-3", d0, d2);
}

void ac8() {
    const double t = 0.25;
    const auto q = OptionQuery::from_strike(1.0, 1.0, t);
    MCConfig c;
    c.paths = 1000000;
    c.steps = 400;  // per unit time, 100 steps to t = 0.25
    c.threads = 0;
    const auto mc = mc_price(kHeston, q, c);
    const double fourier = heston_call(kHeston, q).value;
    gate("AC8.mc_vs_fourier", std::abs(mc.value - fourier) <= 3.0 * mc.error_estimate,
         "MC %.7f +- %.2e vs Fourier %.7f (%.2f standard errors)", mc.value, mc.error_estimate, fourier,
         std::abs(mc.value - fourier) / mc.error_estimate);

    const MOTMSchedule s(0.4, 0.3);
    const double td = 1e-3, K = std::exp(s.k(td));
    auto surface = [](double strike, double tt) {
        return heston_call(kHeston, OptionQuery::from_strike(1.0, strike, tt)).value;
    };
    const auto loc = dupire_local_vol(surface, K, td);
    gate("AC8.dupire", std::abs(loc.value - kHeston.sigma0()) <= 0.02, "local vol %.5f vs sigma0 %.5f (gate 0.02)", loc.value,
         kHeston.sigma0());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 10;
    for (int i = 0; i < n; ++i) {
        const double tt = 0.01 + 0.09 * i / (n - 1);
        const double iv = heston_iv(0.0, tt);
        sx += tt;
        sy += iv * iv;
        sxx += tt * tt;
        sxy += tt * iv * iv;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double a0 = heston_atm_variance_slope(kHeston);
    gate("AC8.atm_slope", rel(slope, a0) <= 0.15, "regression slope %.6g vs a(0) %.6g (rel %.3f, gate 0.15)", slope, a0,
         rel(slope, a0));
}

void ac9() {
    double worst = 0.0;
    for (double sigma : {0.01, 0.03, 0.1, 0.2, 0.5, 1.0, 2.0, 3.0}) {
        for (double t : {1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0}) {
            for (double k : {-1.0, -0.5, -0.1, -0.01, 0.0, 0.01, 0.1, 0.5, 1.0}) {
                const auto q = OptionQuery::from_log_moneyness(k, t);
                const double back = bs_implied_vol_from_log_otm_price(q, bs_log_otm_price(q, BSParams(sigma)));
                worst = std::max(worst, std::abs(back - sigma));
            }
        }
    }
    gate("AC9.roundtrip", worst <= 1e-8, "max |sigma_back - sigma| = %.3e over 432 points (gate 1e-8)", worst);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad_bounds = 0, bad_mono = 0;
    for (int i = 0; i < 10000; ++i) {
        const double spot = std::exp(4.0 * u(rng) - 2.0);
        const double strike = spot * std::exp(3.0 * u(rng) - 1.5);
        const double t = std::pow(10.0, 5.0 * u(rng) - 4.0);
        const double sigma = std::pow(10.0, 2.5 * u(rng) - 2.0);
        const auto q = OptionQuery::from_strike(spot, strike, t);
        const double c = bs_call(q, BSParams(sigma));
        if (!(c >= q.intrinsic() && c <= spot)) ++bad_bounds;
        const double c_sig = bs_call(q, BSParams(sigma * 1.01));
        const auto q_k = OptionQuery::from_strike(spot, strike * 1.01, t);
        const auto q_t = OptionQuery::from_strike(spot, strike, t * 1.01);
        if (c_sig < c || bs_call(q_k, BSParams(sigma)) > c || bs_call(q_t, BSParams(sigma)) < c) ++bad_mono;
    }
    gate("AC9.bounds", bad_bounds == 0, "%d of 10000 random inputs violate intrinsic <= C <= S", bad_bounds);
    gate("AC9.monotonicity", bad_mono == 0, "%d of 10000 random inputs violate monotonicity in sigma, K or t", bad_mono);
}

std::string capture(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

void ac10() {
    if (g_binary.empty()) {
        gate("AC10.binary", false, "no motm binary given");
        return;
    }
    const std::string heston = "--config " + g_configs + "/heston.json";
    const std::vector<std::string> commands = {
        "smile " + heston,
        "derivs " + heston,
        "derivs --config " + g_configs + "/localvol_power.json",
        "converge " + heston,
        "mgf-limit " + heston,
        "digital " + heston,
        "digital " + heston + " --mc 100000 --threads 1",
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const std::string& c = commands[i];
        const std::string a = capture(c), b = capture(c);
        gate("AC10.rerun" + std::to_string(i + 1) + "." + c.substr(0, c.find(' ')), a == b && !a.empty(), "%zu bytes, identical=%d (%s)",
             a.size(), a == b, c.c_str());
    }
    const std::string one = capture("digital " + heston + " --mc 100000 --threads 1");
    for (const char* th : {"2", "4", "0"}) {
        const std::string other = capture("digital " + heston + " --mc 100000 --threads " + th);
        gate(std::string("AC10.threads1_vs_") + th, one == other, "%zu vs %zu bytes", one.size(), other.size());
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::string which = argc > 1 ? argv[1] : "all";
    g_binary = argc > 2 ? argv[2] : "";
    g_configs = argc > 3 ? argv[3] : "configs";
    const std::map<std::string, std::function<void()>> table = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
    };
    auto run = [&](const std::string& id) {
        const auto start = std::chrono::steady_clock::now();
        try {
            table.at(id)();
        } catch (const std::exception& e) {
            gate(id + ".exception", false, "%s", e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("     %s finished in %.2f s\n", id.c_str(), secs);
    };
    if (which == "all") {
        for (const char* id : {"AC1", "AC2", "AC3", "AC4", "AC5", "AC6", "AC7", "AC8", "AC9", "AC10"}) run(id);
    } else if (table.count(which)) {
        run(which);
    } else {
        std::fprintf(stderr, "unknown criterion %s\n", which.c_str());
        return 2;
    }
    return std::min(g_failed, 100);
}
