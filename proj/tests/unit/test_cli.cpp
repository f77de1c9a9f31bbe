#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "motm/errors.hpp"
#include "motm_cli/commands.hpp"
#include "motm_cli/config.hpp"
#include "motm_cli/csv.hpp"

using namespace motm;
using namespace motm::cli;

namespace {

std::string config_path(const std::string& name) { return std::string(MOTM_CONFIG_DIR) + "/" + name; }

int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string cmd = std::string(MOTM_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string buf;
    char chunk[4096];
    std::size_t n;
    while ((n = fread(chunk, 1, sizeof chunk, pipe)) > 0) buf.append(chunk, n);
    const int status = pclose(pipe);
    if (out) *out = buf;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, BundledFiles) {
    const auto h = load_model_config(config_path("heston.json"));
    const auto& p = std::get<HestonParams>(h);
    EXPECT_EQ(p.v0, 0.0654);
    EXPECT_EQ(p.vbar, 0.0707);
    EXPECT_EQ(p.kappa, 0.6067);
    EXPECT_EQ(p.eta, 0.2928);
    EXPECT_EQ(p.rho, -0.7571);
    EXPECT_EQ(std::get<BSParams>(load_model_config(config_path("bs.json"))).sigma, 0.2);
    EXPECT_NO_THROW(load_model_config(config_path("localvol_power.json")));
    EXPECT_NO_THROW(load_model_config(config_path("three_halves.json")));
}

TEST(Config, Rejections) {
    EXPECT_THROW(parse_model_config_text("{"), ConfigError);
    EXPECT_THROW(parse_model_config_text(R"({"model":"sabr","params":{}})"), ConfigError);
    EXPECT_THROW(parse_model_config_text(R"({"model":"bs","params":{"sigma":0.2,"extra":1}})"), ConfigError);
    EXPECT_THROW(parse_model_config_text(R"({"model":"bs","params":{}})"), ConfigError);
    EXPECT_THROW(parse_model_config_text(R"({"model":"bs","params":{"sigma":-0.2}})"), ConfigError);
    EXPECT_THROW(parse_model_config_text(R"({"model":"bs","params":{"sigma":"x"}})"), ConfigError);
    EXPECT_THROW(parse_model_config_text(R"({"model":"bs","params":{"sigma":0.2},"x":1})"), ConfigError);
    EXPECT_THROW(load_model_config("/nonexistent/file.json"), ConfigError);
}

TEST(Csv, FormatAndRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(NAN), "nan");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
    CsvTable t({"a", "b"});
    t.add_row({1.5, std::string("x")});
    t.add_row({NAN, 2.0}, "error: boom");
    EXPECT_EQ(t.str(), "a,b,status\n1.5,x,ok\nnan,2,error: boom\n");
    EXPECT_TRUE(t.has_error());
    EXPECT_EQ(t.number(0, "a"), 1.5);
    EXPECT_THROW(t.add_row({1.0}), std::logic_error);
    EXPECT_THROW(t.add_row({NAN, 1.0}), std::logic_error);
}

TEST(Commands, GeometricGrid) {
    const auto g = geometric_grid(0.01, 2.0, 5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g.front(), 0.01);
    EXPECT_DOUBLE_EQ(g.back(), 2.0);
    EXPECT_THROW(geometric_grid(0.0, 1.0, 3), UsageError);
}

TEST(Commands, SmileHeston) {
    const auto m = load_model_config(config_path("heston.json"));
    const auto t = cmd_smile(m, 0.4, 0.3, 0.01, 2.0, 50);
    ASSERT_EQ(t.size(), 50u);
    EXPECT_FALSE(t.has_error());
    // the grid contains t = 0.1 exactly only approximately; interpolate by nearest row
    std::size_t best = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs(std::log(t.number(i, "t") / 0.1)) < std::abs(std::log(t.number(best, "t") / 0.1))) best = i;
    }
    EXPECT_NEAR(t.number(best, "t"), 0.1, 0.01);
    EXPECT_LT(t.number(0, "abs_diff"), t.number(t.size() - 1, "abs_diff"));
    EXPECT_THROW(cmd_smile(m, 0.0, 0.3, 0.01, 2.0, 50), UsageError);
}

TEST(Commands, SmileBlackScholesFlat) {
    const auto t = cmd_smile(BSParams(0.2), 0.4, 0.3, 0.01, 2.0, 20);
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_NEAR(t.number(i, "iv_exact"), 0.2, 1e-8);
        EXPECT_NEAR(t.number(i, "iv_approx"), 0.2, 1e-8);
    }
}

TEST(Commands, Derivs) {
    const auto h = cmd_derivs(load_model_config(config_path("heston.json")));
    EXPECT_NEAR(h.number(0, "lam2"), 15.2905, 1e-4);
    EXPECT_NEAR(h.number(0, "lam3"), 77.743, 1e-3);
    EXPECT_NEAR(h.number(0, "skew"), -0.11084, 1e-5);
    EXPECT_NEAR(h.number(0, "curvature"), -6.77e-4, 1e-5);
    const auto b = cmd_derivs(BSParams(0.2));
    EXPECT_EQ(b.number(0, "skew"), 0.0);
    EXPECT_EQ(b.number(0, "curvature"), 0.0);
    const auto l = cmd_derivs(LocalVolPowerParams(0.2, -0.5));
    EXPECT_NEAR(l.number(0, "lam2"), 25.0, 1e-12);
    EXPECT_NEAR(l.number(0, "lam3"), 37.5, 1e-12);
    EXPECT_EQ(l.status(0), "partial");
}

TEST(Commands, ConvergeRegimeColumns) {
    const auto m = load_model_config(config_path("heston.json"));
    const auto t = cmd_converge(m, 0.4, 0.45, 2);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_TRUE(std::isnan(t.number(0, "log_c_second")));
    EXPECT_TRUE(std::isfinite(t.number(0, "log_c_first")));
    EXPECT_TRUE(std::isfinite(t.number(0, "log_c_refined")));
    EXPECT_NE(t.status(0).find("out-of-regime"), std::string::npos);
}

TEST(Commands, MgfLimit) {
    const auto m = load_model_config(config_path("heston.json"));
    const auto t = cmd_mgf_limit(m, {0.0, 1.0}, {0.25}, {1e-5});
    EXPECT_EQ(t.number(0, "rescaled_value"), 0.0);
    EXPECT_EQ(t.number(0, "target"), 0.0);
    EXPECT_NEAR(t.number(1, "target"), 0.0327, 1e-12);
    EXPECT_LE(std::abs(t.number(1, "rel_err")), 0.05);
    const auto big = cmd_mgf_limit(m, {40.0}, {0.45}, {5.0});
    EXPECT_EQ(big.status(0), "exploded");
}

TEST(Commands, DigitalBlackScholesClosedForm) {
    const auto t = cmd_digital(BSParams(0.2), 0.4, 0.3, {0.1, 0.01});
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = t.number(i, "k"), tt = t.number(i, "t");
        const double closed = bs_digital(OptionQuery::from_log_moneyness(k, tt), BSParams(0.2));
        EXPECT_NEAR(t.number(i, "digital"), closed, 1e-10);
    }
}

TEST(Commands, DigitalMonteCarloAgrees) {
    const auto m = load_model_config(config_path("heston.json"));
    const auto t = cmd_digital(m, 0.4, 0.3, {0.1, 0.01}, DigitalMC{200000, 7, 2});
    const double diff = std::abs(t.number(0, "mc_digital") - t.number(0, "digital"));
    EXPECT_LT(diff, 3.0 * t.number(0, "mc_stderr"));
}

TEST(Commands, DeterministicOutput) {
    const auto m = load_model_config(config_path("heston.json"));
    EXPECT_EQ(cmd_converge(m, 0.4, 0.3, 3).str(), cmd_converge(m, 0.4, 0.3, 3).str());
    EXPECT_EQ(cmd_digital(m, 0.4, 0.3, {0.1, 0.01}, DigitalMC{20000, 3, 1}).str(),
              cmd_digital(m, 0.4, 0.3, {0.1, 0.01}, DigitalMC{20000, 3, 4}).str());
}

TEST(Binary, ExitCodes) {
    std::string out;
    EXPECT_EQ(run_cli("derivs --config " + config_path("heston.json"), &out), 0);
    EXPECT_EQ(out.rfind("lam2,", 0), 0u);
    EXPECT_EQ(run_cli("smile --config " + config_path("bs.json") + " --theta 0"), 2);
    EXPECT_EQ(run_cli("nonsense"), 2);
    const std::string bad = ::testing::TempDir() + "motm_bad.json";
    std::ofstream(bad) << R"({"model":"bs","params":{"sigma":0.2,"oops":1}})";
    EXPECT_EQ(run_cli("derivs --config " + bad), 2);
}
