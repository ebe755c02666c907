#include "ktori/report.hpp"

namespace kt {

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["factor"] = cfg.factor_spec;
    j["band"] = cfg.band;
    j["arith"] = cfg.arith;
    j["seed"] = cfg.seed;
    nlohmann::json tol;
    tol["svd_tol"] = cfg.svd_tol;
    tol["drift_tol"] = cfg.drift_tol;
    tol["drift_floor"] = cfg.drift_floor;
    j["tolerances"] = std::move(tol);
    if (cfg.command == "geodesic") {
        j["dt"] = cfg.dt;
        j["t_end"] = cfg.t_end;
        j["states"] = cfg.states;
        j["k"] = cfg.k_source;
    }
    return j;
}

nlohmann::json timings_json(const std::map<std::string, double>& timings_ms, bool include) {
    nlohmann::json j = nlohmann::json::object();
    if (include)
        for (const auto& [k, v] : timings_ms) j[k] = v;
    return j;
}

nlohmann::json verify_report_json(const RunConfig& cfg, const VerificationReport& rep,
                                  const nlohmann::json* basis) {
    nlohmann::json j;
    j["schema"] = 1;
    j["config"] = config_json(cfg);
    nlohmann::json result;
    result["kernel_dim"] = rep.kernel_dim;
    result["predicted_dim"] = rep.predicted_dim;
    result["span_contained"] = rep.span_contained;
    result["span_equals"] = rep.span_equals;
    result["parity_ok"] = rep.parity_ok;
    result["flatness_ok"] = rep.flatness_ok;
    result["residual_max"] = rep.residual_max;
    if (basis) result["basis"] = *basis;
    if (!rep.warnings.empty()) result["warnings"] = rep.warnings;
    j["result"] = std::move(result);
    j["timings_ms"] = timings_json(rep.timings_ms, cfg.timings);
    return j;
}

nlohmann::json drift_json(const DriftReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["initial"] = r.initial;
    j["max_abs_dev"] = r.max_abs_dev;
    j["relative"] = r.relative;
    j["h"] = r.h;
    j["horizon"] = r.horizon;
    j["energy_drift"] = r.energy_drift;
    return j;
}

nlohmann::json geodesic_report_json(const RunConfig& cfg, const std::vector<DriftReport>& reports,
                                    const std::map<std::string, double>& timings_ms) {
    nlohmann::json j;
    j["schema"] = 1;
    j["config"] = config_json(cfg);
    nlohmann::json result;
    nlohmann::json drift = nlohmann::json::array();
    for (const auto& r : reports) drift.push_back(drift_json(r));
    result["drift"] = std::move(drift);
    j["result"] = std::move(result);
    j["timings_ms"] = timings_json(timings_ms, cfg.timings);
    return j;
}

std::string to_stable_string(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace kt
