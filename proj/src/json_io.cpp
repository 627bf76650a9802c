#include "qweyl/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace qweyl {

namespace {

json config_error(const char* what) { throw Error(ErrorKind::Config, what); }

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        config_error((std::string("missing field '") + name + "'").c_str());
    return j.at(name);
}

} // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        config_error("complex values are [re, im] pairs");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

json to_json(const LaurentPoly& p) {
    json terms = json::array();
    for (const auto& [k, v] : p.coeffs()) terms.push_back(json::array({k, v.real(), v.imag()}));
    return json{{"coeffs", terms}};
}

LaurentPoly laurent_from_json(const json& j) {
    const json& terms = j.is_array() ? j : field(j, "coeffs");
    LaurentPoly p;
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3) config_error("coeff entries are [k, re, im]");
        const int k = t[0].get<int>();
        p.set_coeff(k, p.coeff(k) + cplx(t[1].get<double>(), t[2].get<double>()));
    }
    p.prune();
    return p;
}

json to_json(const AlgebraElement& a) {
    json comps = json::array();
    for (const auto& [i, R] : a.components()) comps.push_back(json::array({i, to_json(R)}));
    return json{{"components", comps}};
}

AlgebraElement element_from_json(const json& j) {
    AlgebraElement a;
    for (const auto& t : field(j, "components")) {
        if (!t.is_array() || t.size() != 2) config_error("component entries are [i, <poly>]");
        a.add_term(t[0].get<int>(), laurent_from_json(t[1]));
    }
    return a;
}

json to_json(const TraceSpec& spec) {
    json moments = json::array();
    for (const cplx& m : spec.moments) moments.push_back(to_json(m));
    json out{{"P", to_json(spec.params.P)},
             {"q", to_json(spec.params.q)},
             {"t", to_json(spec.t)},
             {"window_start", spec.window_start},
             {"moments", moments}};
    if (spec.resonant_extra)
        out["resonant_extra"] =
            json{{"k", spec.resonant_extra->first}, {"value", to_json(spec.resonant_extra->second)}};
    return out;
}

TraceSpec trace_spec_from_json(const json& j) {
    AlgebraParams params(laurent_from_json(field(j, "P")), complex_from_json(field(j, "q")));
    std::vector<cplx> moments;
    for (const auto& m : field(j, "moments")) moments.push_back(complex_from_json(m));
    const int w = j.contains("window_start") ? j.at("window_start").get<int>()
                                             : TraceSpec::default_window_start(params);
    TraceSpec spec(std::move(params), complex_from_json(field(j, "t")), w, std::move(moments));
    if (j.contains("resonant_extra")) {
        const json& r = j.at("resonant_extra");
        spec.resonant_extra = {field(r, "k").get<int>(), complex_from_json(field(r, "value"))};
    }
    return spec;
}

json to_json(const WeightParams& wp) {
    json a = json::array(), beta = json::array();
    for (const cplx& v : wp.a) a.push_back(to_json(v));
    for (const cplx& v : wp.beta) beta.push_back(to_json(v));
    return json{{"lambda", wp.lambda}, {"a", a},         {"beta", beta},
                {"tau", to_json(wp.tau)}, {"c", wp.c}};
}

WeightParams weight_from_json(const json& j) {
    std::vector<cplx> a, beta;
    for (const auto& v : field(j, "a")) a.push_back(complex_from_json(v));
    for (const auto& v : field(j, "beta")) beta.push_back(complex_from_json(v));
    return WeightParams(field(j, "lambda").get<double>(), std::move(a), std::move(beta),
                        complex_from_json(field(j, "tau")), field(j, "c").get<double>());
}

json to_json(const GeneralTraceSpec& spec) {
    json masses = json::array(), deltas = json::array();
    for (const auto& pm : spec.point_masses)
        masses.push_back(json{{"z", to_json(pm.z)}, {"c", to_json(pm.c)}});
    for (const auto& d : spec.delta_part)
        deltas.push_back(json{{"a", to_json(d.a)}, {"k", d.k}, {"c", to_json(d.c)}});
    json out{{"weight", to_json(spec.weight)},
             {"Q", to_json(spec.Qfactor)},
             {"point_masses", masses},
             {"delta_part", deltas}};
    if (spec.q_window_start) out["q_window_start"] = *spec.q_window_start;
    return out;
}

GeneralTraceSpec general_spec_from_json(const json& j) {
    GeneralTraceSpec spec{weight_from_json(field(j, "weight")),
                          laurent_from_json(field(j, "Q")),
                          {},
                          {},
                          std::nullopt};
    if (j.contains("point_masses"))
        for (const auto& m : j.at("point_masses"))
            spec.point_masses.push_back(
                {complex_from_json(field(m, "z")), complex_from_json(field(m, "c"))});
    if (j.contains("delta_part"))
        for (const auto& d : j.at("delta_part"))
            spec.delta_part.push_back({complex_from_json(field(d, "a")), field(d, "k").get<int>(),
                                       complex_from_json(field(d, "c"))});
    if (j.contains("q_window_start")) spec.q_window_start = j.at("q_window_start").get<int>();
    spec.validate();
    return spec;
}

json to_json(const GramReport& rep) {
    json rows = json::array();
    for (int i = 0; i < rep.matrix.rows(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < rep.matrix.cols(); ++j2) row.push_back(to_json(rep.matrix.at(i, j2)));
        rows.push_back(row);
    }
    json out{{"k", rep.k},
             {"dim", rep.dim},
             {"matrix", rows},
             {"det", to_json(rep.det)},
             {"min_singular_value", rep.min_singular_value},
             {"max_singular_value", rep.max_singular_value},
             {"verdict", rep.nondegenerate ? "nondegenerate" : "degenerate"}};
    if (rep.min_eigenvalue) out["min_eigenvalue"] = *rep.min_eigenvalue;
    return out;
}

json to_json(const ConeMembershipReport& rep) {
    return json{{"pairing_ok", rep.pairing_ok},
                {"parity_ok", rep.parity_ok},
                {"lambda_positive", rep.lambda_positive},
                {"sampled_sign_ok", rep.sampled_sign_ok},
                {"phi_zero_ok", rep.phi_zero_ok},
                {"masses_ok", rep.masses_ok},
                {"m0", rep.m0},
                {"grid_min_w", rep.grid_min_w},
                {"grid_min_shifted", rep.grid_min_shifted},
                {"verdict", rep.member ? "member" : "non-member"}};
}

json to_json(const PositivityCertificate& cert) {
    const char* verdict = "inconclusive";
    if (cert.verdict == PositivityCertificate::Verdict::Positive) verdict = "positive";
    if (cert.verdict == PositivityCertificate::Verdict::NotPositive) verdict = "not-positive";
    json out{{"sector0_min_eig", cert.sector0_min_eig},
             {"sector1_min_eig", cert.sector1_min_eig},
             {"verdict", verdict}};
    if (cert.grid_min_w) out["grid_min_w"] = *cert.grid_min_w;
    if (cert.grid_min_shifted) out["grid_min_shifted"] = *cert.grid_min_shifted;
    return out;
}

json to_json(const NondegeneracyReport& rep) {
    json per = json::array();
    for (const auto& e : rep.per_k)
        per.push_back(json{{"k", e.k},
                           {"dim", e.dim},
                           {"det", to_json(e.det)},
                           {"min_singular_value", e.min_singular_value},
                           {"max_singular_value", e.max_singular_value},
                           {"verdict", e.nondegenerate ? "nondegenerate" : "degenerate"}});
    json out{{"per_k", per}};
    if (rep.nondegenerate_up_to_k_max)
        out["overall"] = "nondegenerate-up-to-k-max";
    else
        out["overall"] = "degenerate-at-" + std::to_string(rep.degenerate_at);
    return out;
}

json to_json(const RootShiftReport& rep) {
    json shifts = json::array();
    for (const auto& s : rep.shifts)
        shifts.push_back(json{{"original", to_json(s.original)},
                              {"shifted", to_json(s.shifted)},
                              {"k", s.k}});
    return json{{"P_tilde", to_json(rep.P_tilde)},
                {"P_circ", to_json(rep.P_circ)},
                {"shifts", shifts}};
}

json to_json(const Sl2ConeDescription& desc) {
    json fams = json::array();
    for (const auto& f : desc.families)
        fams.push_back(json{{"weight_sign", f.weight_sign},
                            {"a_lo", f.a_lo},
                            {"a_hi", f.a_hi},
                            {"p_sign", f.p_sign},
                            {"extrapolated", f.extrapolated}});
    return json{{"regime", sl2_regime_name(desc.regime)},
                {"families", fams},
                {"basis", "1, 1/(w0 - c0)"},
                {"e1", desc.e1},
                {"e2", desc.e2},
                {"e3", desc.e3},
                {"c0", desc.c0}};
}

namespace {

void dump_rec(const json& j, std::string& out) {
    switch (j.type()) {
    case json::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            out += json(it.key()).dump();
            out += ':';
            dump_rec(it.value(), out);
        }
        out += '}';
        break;
    }
    case json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ',';
            first = false;
            dump_rec(v, out);
        }
        out += ']';
        break;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (std::isfinite(v)) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out += buf;
        } else {
            out += "null";
        }
        break;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump_deterministic(const json& j) {
    std::string out;
    dump_rec(j, out);
    out += '\n';
    return out;
}

} // namespace qweyl
