#ifndef KTORI_REPORT_HPP
#define KTORI_REPORT_HPP

#include <json.hpp>

#include "ktori/geodesic.hpp"
#include "ktori/kernel_solve.hpp"

namespace kt {

// Resolved invocation parameters; every report embeds the full config.
struct RunConfig {
    std::string command;
    int n = 2, p = 2;
    std::string factor_spec = "flat";
    std::vector<int> band;
    std::string arith = "exact";
    double svd_tol = 1e-8;
    double drift_tol = 1e-6;
    double drift_floor = 1e-2;
    double dt = 1e-3;
    double t_end = 100.0;
    int states = 5;
    unsigned seed = 1234;
    int jobs = 0;          // 0 = runtime default
    bool timings = true;   // false zeroes timings_ms for byte-identical reports
    std::string k_source;  // geodesic integrand selector
    std::string out_path;  // empty = stdout
};

nlohmann::json config_json(const RunConfig& cfg);

nlohmann::json timings_json(const std::map<std::string, double>& timings_ms, bool include);

template <class S>
nlohmann::json scalar_terms_json(const TorusScalar<S>& u) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, cs] : u.terms) {
        nlohmann::json t;
        t["k"] = k;
        t["cos"] = scalar_ops<S>::to_string(cs.first);
        t["sin"] = scalar_ops<S>::to_string(cs.second);
        terms.push_back(std::move(t));
    }
    return terms;
}

template <class S>
nlohmann::json basis_json(const std::vector<SymTensorField<S>>& basis) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& K : basis) {
        nlohmann::json element = nlohmann::json::array();
        for (const auto& [a, c] : K.coeffs) {
            nlohmann::json entry;
            entry["monomial"] = a.exps;
            entry["terms"] = scalar_terms_json(c);
            element.push_back(std::move(entry));
        }
        arr.push_back(std::move(element));
    }
    return arr;
}

nlohmann::json verify_report_json(const RunConfig& cfg, const VerificationReport& rep,
                                  const nlohmann::json* basis = nullptr);

template <class S>
nlohmann::json kernel_report_json(const RunConfig& cfg, const KernelBasis<S>& kb,
                                  long long predicted, bool include_basis,
                                  const std::map<std::string, double>& timings_ms) {
    nlohmann::json j;
    j["schema"] = 1;
    j["config"] = config_json(cfg);
    nlohmann::json result;
    result["kernel_dim"] = kb.dimension;
    result["predicted_dim"] = predicted;
    result["residual_max"] = kb.residual_max;
    if (include_basis) result["basis"] = basis_json(kb.basis);
    if (!kb.warnings.empty()) result["warnings"] = kb.warnings;
    j["result"] = std::move(result);
    j["timings_ms"] = timings_json(timings_ms, cfg.timings);
    return j;
}

nlohmann::json drift_json(const DriftReport& r);

nlohmann::json geodesic_report_json(const RunConfig& cfg, const std::vector<DriftReport>& reports,
                                    const std::map<std::string, double>& timings_ms);

// Serialize with a fixed layout so byte-identical comparison is meaningful.
std::string to_stable_string(const nlohmann::json& j);

}  // namespace kt

#endif
