#pragma once

#include <map>
#include <string>
#include <vector>

namespace motm {

/// A reference value from an independent numerical method.
struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;          // standard error, quadrature bound or step-halving gap
    std::map<std::string, double> meta;   // paths, steps, damping, truncation, ...
    std::vector<std::string> warnings;
};

}  // namespace motm
