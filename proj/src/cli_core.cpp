#include "qweyl/cli_core.hpp"

#include <cmath>
#include <sstream>

namespace qweyl {

namespace {

const cplx kI(0.0, 1.0);

json handle_theta_eval(const json& payload) {
    const cplx z = complex_from_json(payload.at("z"));
    const cplx tau = complex_from_json(payload.at("tau"));
    const double tol = payload.value("tol", 1e-12);
    const ThetaParams p(tau, tol);
    json out{{"value", to_json(theta(z, p))}};
    if (payload.value("triple_product", false))
        out["triple_product"] = to_json(theta_triple_product(z, p));
    return out;
}

json handle_trace_eval(const json& payload) {
    const TraceSpec spec = trace_spec_from_json(payload.at("spec"));
    const AlgebraElement a = payload.contains("element")
                                 ? element_from_json(payload.at("element"))
                                 : AlgebraElement::from_poly(laurent_from_json(payload.at("R")));
    return json{{"value", to_json(trace_eval(spec, a))}};
}

json handle_analytic_trace(const json& payload) {
    const LaurentPoly R = laurent_from_json(payload.at("R"));
    const double tol = payload.value("tol", default_quadrature_tol());
    TraceEvalDetail detail;
    if (payload.contains("general"))
        detail = general_trace_eval_detailed(general_spec_from_json(payload.at("general")), R,
                                             tol);
    else
        detail = analytic_trace_detailed(weight_from_json(payload.at("weight")), R, tol);
    return json{{"value", to_json(detail.value)},
                {"nodes_used", detail.nodes_used},
                {"converged", detail.converged}};
}

std::string samples_csv(const WeightParams& wp, const LaurentPoly& P, int grid = 512) {
    std::ostringstream os;
    os << "x,w,shifted\n";
    const cplx phase = std::exp(-M_PI * kI * wp.c);
    for (int j = 0; j < grid; ++j) {
        const double x = (double(j) + 0.5) / grid;
        const cplx wv = weight_w(cplx(x, 0.0), wp);
        const cplx sv =
            phase * P.eval(std::exp(2.0 * M_PI * kI * x)) * weight_w(x + wp.tau * 0.5, wp);
        char line[96];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", x, wv.real(), sv.real());
        os << line;
    }
    return os.str();
}

json handle_cone_check(const json& payload, bool emit, std::string* csv) {
    if (payload.contains("general")) {
        const GeneralTraceSpec spec = general_spec_from_json(payload.at("general"));
        const LaurentPoly P = laurent_from_json(payload.at("P"));
        const cplx q = complex_from_json(payload.at("q"));
        if (emit && csv) *csv = samples_csv(spec.weight, P);
        return to_json(general_cone_check(spec, P, q));
    }
    const WeightParams wp = weight_from_json(payload.at("weight"));
    const LaurentPoly P = laurent_from_json(payload.at("P"));
    if (emit && csv) *csv = samples_csv(wp, P);
    return to_json(cone_membership_annulus(wp, P));
}

json handle_positivity_cert(const json& payload) {
    const TraceSpec spec = trace_spec_from_json(payload.at("spec"));
    const ConjugationParams conj(spec.params, payload.at("c").get<double>());
    const int m_max = payload.value("m_max", 6);
    if (payload.contains("weight")) {
        const WeightParams wp = weight_from_json(payload.at("weight"));
        return to_json(positivity_certificate(spec, conj, m_max, wp));
    }
    return to_json(positivity_certificate(spec, conj, m_max));
}

json handle_nondeg_scan(const json& payload) {
    const TraceSpec spec = trace_spec_from_json(payload.at("spec"));
    const int k_max = payload.value("kmax", 8);
    std::optional<ConjugationParams> conj;
    if (payload.contains("c")) conj.emplace(spec.params, payload.at("c").get<double>());
    return to_json(nondeg_scan(spec, conj, k_max));
}

json handle_root_shift(const json& payload) {
    const LaurentPoly P = laurent_from_json(payload.at("P"));
    const cplx q = complex_from_json(payload.at("q"));
    return to_json(root_shift(P, q));
}

json handle_sl2(const json& payload) {
    const double q = payload.at("q").get<double>();
    const double c = payload.at("c").get<double>();
    const Sl2Params params = Sl2Params::make(q, c);
    json roots = json::array({to_json(params.z1), to_json(params.z2)});
    const auto [ulo, uhi] = unitarizability_interval(q);
    const auto [clo, chi] = circle_root_interval(q);
    json out{{"P", to_json(params.P)},
             {"roots", roots},
             {"unitarizability_interval", json::array({ulo, uhi})},
             {"circle_root_interval", json::array({clo, chi})},
             {"c0", params.c0}};
    try {
        const Sl2ConeDescription cone = sl2_cone(params);
        out["regime"] = sl2_regime_name(cone.regime);
        out["cone"] = to_json(cone);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoPositiveTrace) throw;
        out["regime"] = "not-unitarizable";
        out["cone"] = nullptr;
    }
    return out;
}

} // namespace

RunResult run_request(const std::string& subcommand, const json& payload, bool emit_samples) {
    RunResult res;
    json out;
    if (subcommand == "theta-eval")
        out = handle_theta_eval(payload);
    else if (subcommand == "trace-eval")
        out = handle_trace_eval(payload);
    else if (subcommand == "analytic-trace")
        out = handle_analytic_trace(payload);
    else if (subcommand == "cone-check")
        out = handle_cone_check(payload, emit_samples, &res.samples_csv);
    else if (subcommand == "positivity-cert")
        out = handle_positivity_cert(payload);
    else if (subcommand == "nondeg-scan")
        out = handle_nondeg_scan(payload);
    else if (subcommand == "root-shift")
        out = handle_root_shift(payload);
    else if (subcommand == "sl2")
        out = handle_sl2(payload);
    else
        throw Error(ErrorKind::Config, "unknown subcommand '" + subcommand + "'");
    res.output = dump_deterministic(out);
    return res;
}

RunResult run_request_text(const std::string& subcommand, const std::string& payload_text,
                           bool emit_samples) {
    try {
        json payload;
        try {
            payload = payload_text.empty() ? json::object() : json::parse(payload_text);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Config, std::string("invalid JSON payload: ") + e.what());
        }
        try {
            return run_request(subcommand, payload, emit_samples);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Config, std::string("payload schema: ") + e.what());
        }
    } catch (const Error& e) {
        RunResult res;
        res.exit_code = is_numeric_failure(e.kind()) ? 3 : 2;
        res.output = dump_deterministic(
            json{{"error", json{{"kind", error_kind_name(e.kind())}, {"detail", e.what()}}}});
        return res;
    }
}

} // namespace qweyl
