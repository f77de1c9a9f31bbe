#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motm/errors.hpp"
#include "motm_cli/commands.hpp"
#include "motm_cli/config.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    double theta = 0.4;
    double beta = 0.3;
    double t_min = 0.01;
    double t_max = 2.0;
    int n = 50;
    int decades = 3;
    std::string p_list = "0.5,1,2";
    std::string beta_list;
    std::string t_list;
    std::uint64_t mc = 0;
    std::uint64_t seed = 20240101;
    unsigned threads = 1;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw motm::cli::UsageError(std::string(flag) + ": cannot parse \"" + item + "\"");
        }
    }
    if (out.empty()) throw motm::cli::UsageError(std::string(flag) + " needs at least one value");
    return out;
}

int emit(const motm::cli::CsvTable& table, const std::string& path) {
    if (path.empty()) {
        table.write(std::cout);
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "motm: cannot write " << path << "\n";
            return 2;
        }
        table.write(f);
    }
    return table.has_error() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moderately out-of-the-money small-time expansions and their numerical oracles"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "model config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "CSV output file (default: stdout)");
    };
    auto schedule = [&o](CLI::App* sub) {
        sub->add_option("--theta", o.theta, "schedule scale theta > 0")->capture_default_str();
        sub->add_option("--beta", o.beta, "schedule exponent in (0, 1/2)")->capture_default_str();
    };

    auto* smile = app.add_subcommand("smile", "exact vs expanded implied volatility along k_t = theta t^beta");
    common(smile);
    schedule(smile);
    smile->add_option("--tmin", o.t_min, "smallest maturity")->capture_default_str();
    smile->add_option("--tmax", o.t_max, "largest maturity")->capture_default_str();
    smile->add_option("--n", o.n, "grid points")->capture_default_str();

    auto* derivs = app.add_subcommand("derivs", "energy derivatives, skew and curvature");
    common(derivs);

    auto* converge = app.add_subcommand("converge", "exact log price against the expansions");
    common(converge);
    schedule(converge);
    converge->add_option("--tmax", o.t_max, "largest maturity (default 0.1)");
    converge->add_option("--decades", o.decades, "number of decades below tmax")->capture_default_str();

    auto* mgf = app.add_subcommand("mgf-limit", "rescaled cumulant generating function against its limit");
    common(mgf);
    mgf->add_option("--p", o.p_list, "comma-separated arguments p")->capture_default_str();
    mgf->add_option("--beta", o.beta_list, "comma-separated exponents (default 0.25,0.4)");
    mgf->add_option("--t", o.t_list, "comma-separated maturities (default 1e-3,1e-4,1e-5)");

    auto* digital = app.add_subcommand("digital", "call and digital moderate-deviation columns");
    common(digital);
    schedule(digital);
    digital->add_option("--t", o.t_list, "comma-separated maturities (default 0.1,0.01,0.001)");
    digital->add_option("--mc", o.mc, "Monte Carlo paths for the digital (0 = off)")->capture_default_str();
    digital->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    digital->add_option("--threads", o.threads, "Monte Carlo threads (0 = all cores)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    using namespace motm::cli;
    try {
        const motm::ModelSpec model = load_model_config(o.config);
        if (smile->parsed()) {
            return emit(cmd_smile(model, o.theta, o.beta, o.t_min, o.t_max, o.n), o.out);
        }
        if (derivs->parsed()) {
            return emit(cmd_derivs(model), o.out);
        }
        if (converge->parsed()) {
            const double t_max = converge->count("--tmax") ? o.t_max : 0.1;
            return emit(cmd_converge(model, o.theta, o.beta, o.decades, t_max), o.out);
        }
        if (mgf->parsed()) {
            const auto betas = o.beta_list.empty() ? std::vector<double>{0.25, 0.4} : parse_list(o.beta_list, "--beta");
            const auto ts = o.t_list.empty() ? std::vector<double>{1e-3, 1e-4, 1e-5} : parse_list(o.t_list, "--t");
            return emit(cmd_mgf_limit(model, parse_list(o.p_list, "--p"), betas, ts), o.out);
        }
        if (digital->parsed()) {
            const auto ts = o.t_list.empty() ? std::vector<double>{0.1, 0.01, 0.001} : parse_list(o.t_list, "--t");
            std::optional<DigitalMC> mc;
            if (o.mc > 0) mc = DigitalMC{o.mc, o.seed, o.threads};
            return emit(cmd_digital(model, o.theta, o.beta, ts, mc), o.out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "motm: config error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "motm: usage error: " << e.what() << "\n";
        return 2;
    } catch (const motm::RegimeError& e) {
        std::cerr << "motm: regime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "motm: error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
