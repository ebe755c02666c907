// Batch front-end: kernel computation, theorem verification, the ODE lemma
// engine and geodesic drift measurement, all with machine-readable JSON
// reports.
//
// Exit codes: 0 ok, 2 config error, 3 verification failure or numerical
// warning escalation, 4 integrator failure.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "ktori/ode_lemma.hpp"
#include "ktori/report.hpp"

using namespace kt;

namespace {

std::vector<int> parse_band(const std::string& spec, int n) {
    std::vector<int> band;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto comma = spec.find(',', pos);
        std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        if (tok.empty()) throw std::invalid_argument("band: empty component");
        band.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return broadcast_band(n, band);
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    std::string text = to_stable_string(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        f << text;
    }
}

struct CliError {
    int code;
    std::string message;
};

int fail(const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
}

std::vector<int> default_band(int n, int p) {
    std::vector<int> band(n, 1);
    band[n - 1] = p / 2 + 1;
    return band;
}

// ---------------------------------------------------------------- kernel --

int run_kernel(RunConfig cfg, const std::string& band_spec, const std::string& variant_name,
               bool with_basis, const std::string& matrix_out) {
    ConformalFactor F;
    try {
        F = ConformalFactor::parse(cfg.factor_spec);
        cfg.band = band_spec.empty() ? default_band(cfg.n, cfg.p) : parse_band(band_spec, cfg.n);
    } catch (const std::exception& e) {
        return fail({2, e.what()});
    }
    OperatorVariant variant = variant_name == "conformal" ? OperatorVariant::conformal_killing
                                                          : OperatorVariant::killing;
    std::map<std::string, double> timings;
    auto t0 = std::chrono::steady_clock::now();
    try {
        nlohmann::json report;
        std::vector<std::string> warnings;
        if (cfg.arith == "exact") {
            auto kb = compute_kernel<Rational>(cfg.n, cfg.p, F, cfg.band, variant,
                                               {cfg.svd_tol, Exec::parallel});
            warnings = kb.warnings;
            if (!matrix_out.empty()) {
                auto M = assemble_operator<Rational>(cfg.n, cfg.p, F, cfg.band, variant);
                std::ofstream f(matrix_out);
                f << M.to_coordinate_text();
            }
            timings["total"] = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
            report = kernel_report_json(cfg, kb, predicted_dimension(cfg.n, cfg.p, F), with_basis,
                                        timings);
        } else {
            auto kb = compute_kernel<double>(cfg.n, cfg.p, F, cfg.band, variant,
                                             {cfg.svd_tol, Exec::parallel});
            warnings = kb.warnings;
            timings["total"] = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
            report = kernel_report_json(cfg, kb, predicted_dimension(cfg.n, cfg.p, F), with_basis,
                                        timings);
        }
        emit(report, cfg.out_path);
        return warnings.empty() ? 0 : 3;
    } catch (const std::invalid_argument& e) {
        return fail({2, e.what()});
    }
}

// --------------------------------------------------------- verify-theorem --

nlohmann::json one_verify(RunConfig cfg, const ConformalFactor& F, Exec exec, bool* ok) {
    nlohmann::json j;
    if (cfg.arith == "exact") {
        auto out = verify_theorem<Rational>(cfg.n, cfg.p, F, cfg.band,
                                            {cfg.svd_tol, exec, true});
        auto basis = basis_json(out.kernel.basis);
        j = verify_report_json(cfg, out.report, &basis);
        *ok = out.report.span_equals && out.report.band_stable;
    } else {
        auto out = verify_theorem<double>(cfg.n, cfg.p, F, cfg.band, {cfg.svd_tol, exec, true});
        auto basis = basis_json(out.kernel.basis);
        j = verify_report_json(cfg, out.report, &basis);
        *ok = out.report.span_equals && out.report.band_stable;
    }
    return j;
}

int run_verify(RunConfig cfg, const std::string& band_spec, bool suite, int jobs) {
    std::vector<RunConfig> configs;
    try {
        if (suite) {
            // The standard verification table: inverse_trig{2,1}, transverse
            // band 1, axis band floor(p/2)+1 and the re-run at +2.
            for (auto [n, p] : std::vector<std::pair<int, int>>{
                     {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 2}, {3, 3}}) {
                for (int extra : {0, 2}) {
                    RunConfig c = cfg;
                    c.command = "verify-theorem";
                    c.n = n;
                    c.p = p;
                    c.factor_spec = "inv-cos:2,1";
                    c.band = default_band(n, p);
                    c.band[n - 1] += extra;
                    configs.push_back(std::move(c));
                }
            }
        } else {
            RunConfig c = cfg;
            ConformalFactor::parse(c.factor_spec);
            c.band = band_spec.empty() ? default_band(c.n, c.p) : parse_band(band_spec, c.n);
            configs.push_back(std::move(c));
        }
    } catch (const std::exception& e) {
        return fail({2, e.what()});
    }

    std::vector<nlohmann::json> reports(configs.size());
    std::vector<int> ok(configs.size(), 0);
    std::vector<std::string> errors(configs.size());
    const Exec inner = (jobs > 1 && configs.size() > 1) ? Exec::serial : Exec::parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
#endif
    for (int i = 0; i < static_cast<int>(configs.size()); ++i) {
        try {
            ConformalFactor F = ConformalFactor::parse(configs[i].factor_spec);
            bool good = false;
            reports[i] = one_verify(configs[i], F, inner, &good);
            ok[i] = good ? 1 : 0;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& err : errors)
        if (!err.empty()) return fail({2, err});

    nlohmann::json out;
    if (configs.size() == 1) {
        out = reports[0];
    } else {
        out = nlohmann::json::array();
        for (auto& r : reports) out.push_back(std::move(r));
    }
    emit(out, cfg.out_path);
    bool all_ok = true;
    for (int v : ok) all_ok = all_ok && v == 1;
    return all_ok ? 0 : 3;
}

// -------------------------------------------------------------- ode-lemma --

int run_ode(RunConfig cfg, int jmax, int steps, const std::string& alpha0_str,
            const std::string& csv_path, bool specialized, bool zero_constants) {
    try {
        if (jmax < 0) jmax = specialized ? (cfg.p - 1) / 2 : 3;  // auto default
        Rational alpha0 = Rational::from_string(alpha0_str);
        std::mt19937 rng(cfg.seed);
        auto rnd = [&rng](int lim) {
            std::uniform_int_distribution<int> num(-lim, lim);
            std::uniform_int_distribution<int> den(1, 3);
            return Rational(num(rng), den(rng));
        };
        auto rnd_const = [&](int lim) { return zero_constants ? Rational() : rnd(lim); };

        std::vector<Rational> b, c;
        nlohmann::json eqj_echo = nlohmann::json::array();
        if (specialized) {
            const int J = (cfg.p - 1) / 2;
            if (jmax > J)
                throw std::invalid_argument("jmax " + std::to_string(jmax) +
                                            " exceeds floor((p-1)/2) = " + std::to_string(J));
            for (int j = 1; j <= jmax; ++j) {
                auto e = eqj_coefficients(cfg.n, cfg.p, j);
                b.push_back(e.rhs_alpha_prime / e.lhs_alpha_prime);
                c.push_back(e.rhs_f_alpha / e.lhs_alpha_prime);
            }
            for (int j = 0; j <= jmax; ++j) {
                auto e = eqj_coefficients(cfg.n, cfg.p, j);
                eqj_echo.push_back({e.lhs_alpha_prime.to_string(), e.lhs_f_alpha.to_string(),
                                    e.rhs_alpha_prime.to_string(), e.rhs_f_alpha.to_string()});
            }
        } else {
            for (int j = 1; j <= jmax; ++j) {
                b.push_back(rnd(3));
                c.push_back(rnd(3));
            }
        }

        std::vector<PolyInPhi<Rational>> polys{PolyInPhi<Rational>::constant(alpha0)};
        for (int j = 1; j <= jmax; ++j)
            polys.push_back(recursion_step(polys.back(), b[j - 1], c[j - 1], j, rnd_const(2)));

        auto f = [](double x) { return 0.3 * std::cos(x); };
        auto fp = [](double x) { return -0.3 * std::sin(x); };
        auto phi_of = [&](double x) { return std::exp(2.0 * f(x)); };
        std::vector<double> bd, cd, init;
        for (int j = 1; j <= jmax; ++j) {
            bd.push_back(b[j - 1].to_double());
            cd.push_back(c[j - 1].to_double());
            double phi0 = phi_of(0.0);
            init.push_back(polys[j].eval(phi0) / std::pow(phi0, j));
        }
        auto oracle =
            numeric_ode_oracle(bd, cd, fp, 0.0, 1.0, alpha0.to_double(), init, steps);
        double max_err = 0.0;
        for (std::size_t i = 0; i < oracle.x.size(); ++i) {
            double phi = phi_of(oracle.x[i]);
            for (int j = 0; j <= jmax; ++j) {
                double expect = polys[j].eval(phi) / std::pow(phi, j);
                max_err = std::max(max_err, std::fabs(oracle.alpha[j][i] - expect));
            }
        }

        if (!csv_path.empty()) {
            std::ofstream csv(csv_path);
            csv << "x";
            for (int j = 0; j <= jmax; ++j) csv << ",alpha" << j;
            csv << ",phi\n";
            for (std::size_t i = 0; i < oracle.x.size(); ++i) {
                csv << oracle.x[i];
                for (int j = 0; j <= jmax; ++j) csv << "," << oracle.alpha[j][i];
                csv << "," << phi_of(oracle.x[i]) << "\n";
            }
        }

        nlohmann::json j;
        j["schema"] = 1;
        j["config"] = config_json(cfg);
        nlohmann::json result;
        nlohmann::json polys_json = nlohmann::json::array();
        for (const auto& P : polys) {
            nlohmann::json pc = nlohmann::json::array();
            for (const auto& v : P.coeffs) pc.push_back(v.to_string());
            polys_json.push_back(std::move(pc));
        }
        result["polys"] = std::move(polys_json);
        result["oracle_max_error"] = max_err;
        result["instability"] = oracle.instability;
        if (specialized) result["eqj"] = std::move(eqj_echo);
        j["result"] = std::move(result);
        j["timings_ms"] = timings_json({}, cfg.timings);
        emit(j, cfg.out_path);
        return oracle.instability ? 3 : 0;
    } catch (const std::invalid_argument& e) {
        return fail({2, e.what()});
    }
}

// --------------------------------------------------------------- geodesic --

SymTensorField<double> named_control(const std::string& name, int n, bool flat) {
    auto e = [&](int i) { return SymTensorField<double>::basis_vector(n, i); };
    if (name == "wavy") {
        std::vector<int> k(n, 0);
        k[0] = 1;
        return SymTensorField<double>::monomial(MultiIndex::unit(n, 0),
                                                TorusScalar<double>::cosine(n, k));
    }
    if (flat)
        throw std::invalid_argument("control '" + name +
                                    "' is conserved for the flat factor; use control:wavy");
    if (name == "xn") return e(n - 1);
    if (name == "xn2") return sym_mul(e(n - 1), e(n - 1));
    if (name == "x1xn") return sym_mul(e(0), e(n - 1));
    throw std::invalid_argument("unknown control '" + name + "' (xn, xn2, x1xn, wavy)");
}

int run_geodesic(RunConfig cfg, const std::string& band_spec, const std::string& csv_path) {
    ConformalFactor F;
    SymTensorField<double> K;
    bool positive = true;
    try {
        F = ConformalFactor::parse(cfg.factor_spec);
        cfg.band = band_spec.empty() ? default_band(cfg.n, cfg.p) : parse_band(band_spec, cfg.n);
        auto colon = cfg.k_source.find(':');
        std::string kind = cfg.k_source.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : cfg.k_source.substr(colon + 1);
        if (kind == "from-kernel") {
            auto kb = compute_kernel<Rational>(cfg.n, cfg.p, F, cfg.band,
                                               OperatorVariant::killing);
            int idx = std::stoi(arg);
            if (idx < 0 || idx >= kb.dimension)
                throw std::invalid_argument("from-kernel index out of range (dimension " +
                                            std::to_string(kb.dimension) + ")");
            K = convert_field<double>(kb.basis[idx]);
        } else if (kind == "span") {
            auto span = span_basis<Rational>(cfg.n, cfg.p, F);
            int idx = std::stoi(arg);
            if (idx < 0 || idx >= static_cast<int>(span.size()))
                throw std::invalid_argument("span index out of range");
            K = convert_field<double>(span[idx]);
        } else if (kind == "control") {
            K = named_control(arg, cfg.n, F.is_flat());
            positive = false;
        } else {
            throw std::invalid_argument("--k expects from-kernel:<i>, span:<i> or control:<name>");
        }
    } catch (const std::exception& e) {
        return fail({2, e.what()});
    }

    double scale = K.max_abs();
    if (scale > 0.0) K = (1.0 / scale) * K;

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto states = seeded_states(cfg.n, cfg.states, cfg.seed);
        std::vector<DriftReport> reports;
        if (!csv_path.empty()) {
            std::ofstream csv(csv_path);
            csv << "t";
            for (int i = 0; i < cfg.n; ++i) csv << ",x" << i + 1;
            for (int i = 0; i < cfg.n; ++i) csv << ",mom" << i + 1;
            csv << ",F_K,H\n";
            auto rep = drift_report(K, cfg.k_source + ":s0", states[0], F, cfg.dt, cfg.t_end,
                                    [&](double t, const GeodesicState& s, double fk, double en) {
                                        csv << t;
                                        for (double v : s.x) csv << "," << v;
                                        for (double v : s.mom) csv << "," << v;
                                        csv << "," << fk << "," << en << "\n";
                                    });
            reports.push_back(rep);
            std::vector<GeodesicState> rest(states.begin() + 1, states.end());
            auto more = drift_batch(K, cfg.k_source, rest, F, cfg.dt, cfg.t_end);
            reports.insert(reports.end(), more.begin(), more.end());
        } else {
            reports = drift_batch(K, cfg.k_source, states, F, cfg.dt, cfg.t_end);
        }
        std::map<std::string, double> timings;
        timings["total"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        emit(geodesic_report_json(cfg, reports, timings), cfg.out_path);
        bool ok = true;
        for (const auto& r : reports)
            ok = ok && (positive ? r.relative <= cfg.drift_tol : r.relative >= cfg.drift_floor);
        return ok ? 0 : 3;
    } catch (const IntegratorError& e) {
        return fail({4, e.what()});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Killing tensors on conformally flat tori: exact kernels, the ODE lemma and "
                 "geodesic first-integral drift"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string band_spec, out_path;
    bool no_timings = false;

    auto add_common = [&](CLI::App* sub, bool with_np = true) {
        if (with_np) {
            sub->add_option("-n,--dim", cfg.n, "torus dimension");
            sub->add_option("-p,--degree", cfg.p, "tensor degree");
        }
        sub->add_option("--factor", cfg.factor_spec, "flat | inv-cos:<c>,<a> | exp-cos:<A>");
        sub->add_option("--band", band_spec, "per-axis frequency bounds, comma list or broadcast");
        sub->add_option("--arith", cfg.arith, "exact | float")
            ->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--svd-tol", cfg.svd_tol, "relative singular-value threshold");
        sub->add_option("--seed", cfg.seed, "seed for randomized inputs");
        sub->add_option("--out", out_path, "write the JSON report to a file");
        sub->add_flag("--no-timings", no_timings, "suppress wall-clock timings in reports");
    };

    auto* kernel = app.add_subcommand("kernel", "compute the operator nullspace");
    std::string variant_name = "killing";
    bool no_basis = false;
    std::string matrix_out;
    kernel->add_option("--variant", variant_name, "killing | conformal")
        ->check(CLI::IsMember({"killing", "conformal"}));
    kernel->add_flag("--no-basis", no_basis, "omit the basis from the report");
    kernel->add_option("--matrix-out", matrix_out, "dump the operator as (row, col, value) text");
    add_common(kernel);

    auto* verify = app.add_subcommand("verify-theorem", "kernel vs predicted span");
    bool suite = false;
    int jobs = std::max(1, max_threads());
    verify->add_flag("--suite", suite, "run the standard configuration table");
    verify->add_option("--jobs", jobs, "concurrent suite entries");
    add_common(verify);

    auto* ode = app.add_subcommand("ode-lemma", "polynomial recursion and its numeric oracle");
    int jmax = -1, steps = 10000;
    std::string alpha0_str = "1";
    std::string ode_csv;
    bool raw = false;
    bool zero_constants = false;
    ode->add_flag("--raw", raw, "random constants instead of (n, p) specialization");
    ode->add_flag("--zero-constants", zero_constants,
                  "fix every integration constant to zero");
    ode->add_option("--jmax", jmax, "highest recursion index");
    ode->add_option("--steps", steps, "oracle step count (>= 1e3)");
    ode->add_option("--alpha0", alpha0_str, "constant alpha_0 (rational)");
    ode->add_option("--csv", ode_csv, "write sampled (x, alpha_j, phi) curves");
    add_common(ode);

    auto* geo = app.add_subcommand("geodesic", "first-integral drift along geodesics");
    std::string geo_csv;
    geo->add_option("--k", cfg.k_source, "from-kernel:<i> | span:<i> | control:<name>")
        ->required();
    geo->add_option("--dt", cfg.dt, "step size");
    geo->add_option("--t-end", cfg.t_end, "integration horizon");
    geo->add_option("--states", cfg.states, "number of seeded initial states");
    geo->add_option("--drift-tol", cfg.drift_tol, "positive-control tolerance");
    geo->add_option("--drift-floor", cfg.drift_floor, "negative-control floor");
    geo->add_option("--csv", geo_csv, "dump the first trajectory as CSV");
    add_common(geo);

    CLI11_PARSE(app, argc, argv);
    cfg.timings = !no_timings;
    cfg.out_path = out_path;

    if (kernel->parsed()) {
        cfg.command = "kernel";
        return run_kernel(cfg, band_spec, variant_name, !no_basis, matrix_out);
    }
    if (verify->parsed()) {
        cfg.command = "verify-theorem";
        return run_verify(cfg, band_spec, suite, jobs);
    }
    if (ode->parsed()) {
        cfg.command = "ode-lemma";
        return run_ode(cfg, jmax, steps, alpha0_str, ode_csv, !raw, zero_constants);
    }
    if (geo->parsed()) {
        cfg.command = "geodesic";
        return run_geodesic(cfg, band_spec, geo_csv);
    }
    return 2;
}
