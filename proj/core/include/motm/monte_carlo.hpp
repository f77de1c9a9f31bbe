#pragma once

#include <cstdint>

#include "motm/black_scholes.hpp"
#include "motm/model_spec.hpp"
#include "motm/oracle_result.hpp"

namespace motm {

enum class MCScheme { full_truncation_euler };
enum class MCPayoff { call, digital };

struct MCConfig {
    std::uint64_t paths = 100000;
    std::uint64_t steps = 100;  // per unit of time; at least one step is taken
    std::uint64_t seed = 20240101;
    MCScheme scheme = MCScheme::full_truncation_euler;
    bool antithetic = false;
    MCPayoff payoff = MCPayoff::call;
    unsigned threads = 1;  // 0 uses the hardware concurrency

    void validate() const;
};

/// Monte Carlo call (or digital P[log(S_t/S_0) >= k]) price with its standard error.
///   Black-Scholes: exact log-normal draw.
///   Local vol: log-Euler.
///   Heston: full-truncation Euler for the variance, log-Euler for the price.
/// Paths draw from per-path counter-seeded streams and are summed in fixed
/// blocks, so the result is bit-identical for any thread count.
OracleResult mc_price(const ModelSpec& model, const OptionQuery& q, const MCConfig& c);

}  // namespace motm
