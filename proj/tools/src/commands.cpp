#include "motm_cli/commands.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "motm/errors.hpp"
#include "motm/expansion.hpp"
#include "motm/moderate_deviation.hpp"
#include "motm/monte_carlo.hpp"

namespace motm::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_exact_pricer(const ModelSpec& m) {
    if (!has_exact_pricer(m)) {
        throw UsageError("model " + model_name(m) + " has no exact pricer; use bs or heston");
    }
}

void require_schedule_args(double theta, double beta) {
    if (!(theta > 0.0)) throw UsageError("--theta must be positive");
    if (!(beta > 0.0 && beta < 0.5)) throw UsageError("--beta must lie in (0, 1/2)");
}

std::string error_status(const std::exception& e) { return std::string("error:") + e.what(); }

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
        throw UsageError("grid needs 0 < tmin <= tmax and n >= 1");
    }
    std::vector<double> out;
    if (n == 1) return {lo};
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        out.push_back(i == n - 1 ? hi : lo * std::exp(step * i));
    }
    return out;
}

CsvTable cmd_smile(const ModelSpec& m, double theta, double beta, double t_min, double t_max, int n) {
    require_schedule_args(theta, beta);
    require_exact_pricer(m);
    const MOTMSchedule schedule(theta, beta);
    const EnergyData e = model_energy_data(m);
    CsvTable table({"t", "k_t", "iv_exact", "iv_approx", "abs_diff"});
    for (double t : geometric_grid(t_min, t_max, n)) {
        const double k = schedule.k(t);
        const double approx = implied_vol_expansion(e, schedule, t);  // regime errors propagate
        try {
            const double lc = exact_log_call(m, k, t);
            const double iv = bs_implied_vol_from_log_price(OptionQuery::from_log_moneyness(k, t), lc);
            table.add_row({t, k, iv, approx, std::abs(iv - approx)});
        } catch (const std::exception& ex) {
            table.add_row({t, k, kNaN, approx, kNaN}, error_status(ex));
        }
    }
    return table;
}

CsvTable cmd_derivs(const ModelSpec& m) {
    const EnergyData e = model_energy_data(m);
    CsvTable table({"lam2", "lam3", "lam4", "gamma0", "sigma0", "skew", "curvature"});
    const bool full = e.lam4.has_value() && e.gamma0.has_value();
    table.add_row({e.lam2, e.lam3, e.lam4.value_or(kNaN), e.gamma0.value_or(kNaN), e.sigma0(), skew_from_energy(e),
                   e.lam4 ? curvature_from_energy(e) : kNaN},
                  full ? "ok" : "partial");
    return table;
}

CsvTable cmd_converge(const ModelSpec& m, double theta, double beta, int decades, double t_max) {
    require_schedule_args(theta, beta);
    require_exact_pricer(m);
    if (decades < 1) throw UsageError("--decades must be at least 1");
    const MOTMSchedule schedule(theta, beta);
    const EnergyData e = model_energy_data(m);
    CsvTable table({"t", "k", "log_c_exact", "log_c_first", "log_c_second", "log_c_refined", "residual_refined"});
    for (int j = 0; j < decades; ++j) {
        const double t = t_max * std::pow(10.0, -j);
        const double k = schedule.k(t);
        std::string status = "ok";
        double exact = kNaN, second = kNaN, refined = kNaN;
        const double first = log_price_first_order(e, schedule, t).log_price;
        try {
            second = log_price_second_order(e, schedule, t).log_price;
        } catch (const RegimeError&) {
            status = "out-of-regime";
        }
        try {
            refined = log_price_refined(e, schedule, t).log_price;
        } catch (const UnsupportedOrderError&) {
            status = "out-of-regime";
        }
        try {
            exact = exact_log_call(m, k, t);
        } catch (const std::exception& ex) {
            status = error_status(ex);
        }
        table.add_row({t, k, exact, first, second, refined, exact - refined}, status);
    }
    return table;
}

CsvTable cmd_mgf_limit(const ModelSpec& m, const std::vector<double>& p_list, const std::vector<double>& betas,
                       const std::vector<double>& t_list) {
    const double v0 = model_spot_variance(m);
    auto log_mgf = [&m](double s, double t) { return exact_log_mgf(m, s, t); };
    CsvTable table({"p", "beta", "t", "rescaled_value", "target", "rel_err"});
    for (double beta : betas) {
        if (!(beta > 0.0 && beta < 0.5)) throw UsageError("--beta must lie in (0, 1/2)");
        for (double p : p_list) {
            const double target = 0.5 * v0 * p * p;
            for (double t : t_list) {
                try {
                    const double v = rescaled_cgf(log_mgf, p, beta, t);
                    if (std::isinf(v)) {
                        table.add_row({p, beta, t, v, target, kNaN}, "exploded");
                        continue;
                    }
                    const double rel = target == 0.0 ? std::abs(v) : std::abs(v - target) / target;
                    table.add_row({p, beta, t, v, target, rel});
                } catch (const std::exception& ex) {
                    table.add_row({p, beta, t, kNaN, target, kNaN}, error_status(ex));
                }
            }
        }
    }
    return table;
}

CsvTable cmd_digital(const ModelSpec& m, double theta, double beta, const std::vector<double>& t_list,
                     std::optional<DigitalMC> mc) {
    require_schedule_args(theta, beta);
    require_exact_pricer(m);
    const MOTMSchedule schedule(theta, beta);
    const MDRate rate(model_spot_variance(m));
    std::function<double(double)> explosion;
    if (const auto* h = std::get_if<HestonParams>(&m)) {
        explosion = [h](double p) { return heston_explosion_time(*h, p); };
    }
    const TransferTable transfer = transfer_check([&m](double k, double t) { return exact_log_call(m, k, t); },
                                                  [&m](double k, double t) { return exact_log_digital(m, k, t); },
                                                  schedule, t_list, rate, explosion);

    std::vector<std::string> cols{"t", "k", "scaled_log_call", "scaled_log_digital", "md_limit", "difference",
                                  "digital"};
    if (mc) {
        cols.insert(cols.end(), {"mc_digital", "mc_stderr", "mc_log_digital"});
    }
    CsvTable table(cols);
    for (const auto& row : transfer.rows) {
        const double digital = std::exp(row.scaled_log_digital * row.k * row.k / row.t);
        std::vector<CsvTable::Cell> cells{row.t,           row.k,          row.scaled_log_call, row.scaled_log_digital,
                                          transfer.md_limit, row.difference, digital};
        if (mc) {
            MCConfig cfg;
            cfg.paths = mc->paths;
            cfg.seed = mc->seed;
            cfg.threads = mc->threads;
            cfg.payoff = MCPayoff::digital;
            // 100 Euler steps per path, whatever the maturity
            cfg.steps = static_cast<std::uint64_t>(std::ceil(100.0 / row.t));
            const OracleResult r = mc_price(m, OptionQuery::from_log_moneyness(row.k, row.t), cfg);
            cells.insert(cells.end(), {r.value, r.error_estimate, std::log(r.value)});
            if (r.value == 0.0) {
                table.add_row(std::move(cells), "mc-no-hits");
                continue;
            }
        }
        table.add_row(std::move(cells));
    }
    return table;
}

}  // namespace motm::cli
