#include "motm_cli/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace motm::cli {

namespace {

using nlohmann::json;

std::map<std::string, double> read_params(const json& params, const std::vector<std::string>& keys,
                                          const std::string& model) {
    if (!params.is_object()) {
        throw ConfigError("\"params\" must be an object");
    }
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : params.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("unknown parameter \"" + key + "\" for model " + model);
        }
    }
    std::map<std::string, double> out;
    for (const auto& key : keys) {
        if (!params.contains(key)) {
            throw ConfigError("missing parameter \"" + key + "\" for model " + model);
        }
        const json& v = params.at(key);
        if (!v.is_number()) {
            throw ConfigError("parameter \"" + key + "\" must be a number");
        }
        out[key] = v.get<double>();
    }
    return out;
}

}  // namespace

ModelSpec parse_model_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "model" && key != "params") {
            throw ConfigError("unknown top-level key \"" + key + "\"");
        }
    }
    if (!doc.contains("model") || !doc.at("model").is_string()) {
        throw ConfigError("config needs a string \"model\"");
    }
    if (!doc.contains("params")) {
        throw ConfigError("config needs \"params\"");
    }
    const std::string model = doc.at("model").get<std::string>();
    const json& params = doc.at("params");
    try {
        if (model == "bs") {
            auto p = read_params(params, {"sigma"}, model);
            return BSParams(p["sigma"]);
        }
        if (model == "localvol_power") {
            auto p = read_params(params, {"a", "b"}, model);
            return LocalVolPowerParams(p["a"], p["b"]);
        }
        if (model == "heston") {
            auto p = read_params(params, {"v0", "vbar", "kappa", "eta", "rho"}, model);
            return HestonParams(p["v0"], p["vbar"], p["kappa"], p["eta"], p["rho"]);
        }
        if (model == "three_halves") {
            auto p = read_params(params, {"v0", "eta", "rho"}, model);
            return ThreeHalvesParams(p["v0"], p["eta"], p["rho"]);
        }
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
    throw ConfigError("unknown model \"" + model + "\"");
}

ModelSpec parse_model_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_model_config(doc);
}

ModelSpec load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_config_text(buf.str());
}

}  // namespace motm::cli
