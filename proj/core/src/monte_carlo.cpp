#include "motm/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "motm/errors.hpp"
#include "motm/local_vol.hpp"

namespace motm {

namespace {

constexpr std::uint64_t kBlock = 4096;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// splitmix64 stream; one per path, keyed by (seed, path index).
class PathRng {
public:
    using result_type = std::uint64_t;
    PathRng(std::uint64_t seed, std::uint64_t path) : state_(mix64(seed ^ mix64(path + 0x9e3779b97f4a7c15ULL))) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

private:
    std::uint64_t state_;
};

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct BlockSums {
    Neumaier s1;
    Neumaier s2;
};

// Terminal log return for one path given its normals (two per step).
class Simulator {
public:
    Simulator(const ModelSpec& model, double t, std::uint64_t steps_per_unit) : model_(model), t_(t) {
        if (std::holds_alternative<BSParams>(model)) {
            n_ = 1;
        } else if (std::holds_alternative<ThreeHalvesParams>(model)) {
            throw DomainError("Monte Carlo needs a variance drift; the 3/2 model leaves it unspecified");
        } else {
            n_ = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(steps_per_unit * t)));
        }
        if (const auto* lv = std::get_if<LocalVolPowerParams>(&model)) {
            a_ = lv->a;
            b_ = lv->b;
        }
    }

    std::uint64_t steps() const { return n_; }
    std::size_t normals_per_path() const { return 2 * n_; }

    double log_return(const double* z) const {
        const double dt = t_ / static_cast<double>(n_);
        const double sq = std::sqrt(dt);
        if (const auto* bs = std::get_if<BSParams>(&model_)) {
            const double s = bs->sigma * std::sqrt(t_);
            return -0.5 * s * s + s * z[0];
        }
        if (std::holds_alternative<LocalVolPowerParams>(model_)) {
            double x = 0.0;
            for (std::uint64_t i = 0; i < n_; ++i) {
                const double sig = a_ * std::exp(b_ * x);  // sigma(S) with S = e^x
                x += -0.5 * sig * sig * dt + sig * sq * z[2 * i];
            }
            return x;
        }
        const auto& h = std::get<HestonParams>(model_);
        const double rb = h.rho_bar();
        double x = 0.0;
        double v = h.v0;
        for (std::uint64_t i = 0; i < n_; ++i) {
            const double vp = std::max(v, 0.0);
            const double sv = std::sqrt(vp) * sq;
            const double z1 = z[2 * i];
            const double z2 = h.rho * z1 + rb * z[2 * i + 1];
            x += -0.5 * vp * dt + sv * z1;
            v += h.kappa * (h.vbar - vp) * dt + h.eta * sv * z2;
        }
        return x;
    }

private:
    const ModelSpec& model_;
    double t_;
    std::uint64_t n_ = 1;
    double a_ = 0.0;
    double b_ = 0.0;
};

}  // namespace

void MCConfig::validate() const {
    if (paths < 1) throw DomainError("paths must be at least 1");
    if (steps < 1) throw DomainError("steps must be at least 1");
    if (antithetic && paths < 2) throw DomainError("antithetic sampling needs at least 2 paths");
}

OracleResult mc_price(const ModelSpec& model, const OptionQuery& q, const MCConfig& c) {
    c.validate();
    if (!(q.maturity() > 0.0)) {
        throw DomainError("Monte Carlo needs maturity > 0");
    }
    const Simulator sim(model, q.maturity(), c.steps);
    const double k = q.log_moneyness();
    const double strike_ratio = std::exp(k);
    auto payoff = [&](double x) {
        if (c.payoff == MCPayoff::digital) return x >= k ? 1.0 : 0.0;
        return std::max(std::exp(x) - strike_ratio, 0.0);
    };

    // One sample is a path, or an antithetic pair averaged.
    const std::uint64_t samples = c.antithetic ? c.paths / 2 : c.paths;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<BlockSums> sums(blocks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        std::vector<double> z(sim.normals_per_path());
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            BlockSums acc;
            const std::uint64_t end = std::min(samples, (b + 1) * kBlock);
            for (std::uint64_t i = b * kBlock; i < end; ++i) {
                PathRng rng(c.seed, i);
                std::normal_distribution<double> normal;
                for (double& zi : z) zi = normal(rng);
                double y = payoff(sim.log_return(z.data()));
                if (c.antithetic) {
                    for (double& zi : z) zi = -zi;
                    y = 0.5 * (y + payoff(sim.log_return(z.data())));
                }
                acc.s1.add(y);
                acc.s2.add(y * y);
            }
            sums[b] = acc;
        }
    };

    unsigned threads = c.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(blocks, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Neumaier s1, s2;
    for (const auto& b : sums) {
        s1.add(b.s1.value());
        s2.add(b.s2.value());
    }
    const double n = static_cast<double>(samples);
    const double mean = s1.value() / n;
    const double var = samples > 1 ? std::max(0.0, (s2.value() - n * mean * mean) / (n - 1.0)) : 0.0;

    const double scale = c.payoff == MCPayoff::call ? q.spot() : 1.0;
    OracleResult r;
    r.value = scale * mean;
    r.error_estimate = scale * std::sqrt(var / n);
    r.meta["paths"] = static_cast<double>(c.antithetic ? 2 * samples : samples);
    r.meta["steps"] = static_cast<double>(sim.steps());
    r.meta["seed"] = static_cast<double>(c.seed);
    r.meta["antithetic"] = c.antithetic ? 1.0 : 0.0;
    return r;
}

}  // namespace motm
