#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qweyl/cli_core.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw qweyl::Error(qweyl::ErrorKind::Config, "cannot open input file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    out << text;
}

// assemble a nondeg-scan / sl2 payload from command-line flags
std::string payload_from_flags(const std::string& base, const std::string& q,
                               const std::string& t, const std::string& P,
                               const std::string& moments, int kmax, bool kmax_set) {
    nlohmann::json payload =
        base.empty() ? nlohmann::json::object() : nlohmann::json::parse(base);
    nlohmann::json spec = payload.value("spec", nlohmann::json::object());
    if (!q.empty()) spec["q"] = nlohmann::json::parse(q);
    if (!t.empty()) spec["t"] = nlohmann::json::parse(t);
    if (!P.empty()) spec["P"] = nlohmann::json::parse(P);
    if (!moments.empty()) spec["moments"] = nlohmann::json::parse(moments);
    if (!spec.empty()) payload["spec"] = spec;
    if (kmax_set) payload["kmax"] = kmax;
    return payload.dump();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted traces on generalized q-Weyl algebras"};
    app.require_subcommand(1);

    std::string input = "-", output = "-", samples_path;
    std::string flag_q, flag_t, flag_P, flag_moments, flag_c;
    int flag_kmax = 8;

    const char* names[] = {"theta-eval",      "trace-eval", "analytic-trace",
                           "cone-check",      "positivity-cert", "nondeg-scan",
                           "root-shift",      "sl2"};
    for (const char* name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", input, "JSON payload file, or - for stdin");
        sub->add_option("--output", output, "output file, or - for stdout");
        if (std::string(name) == "cone-check")
            sub->add_option("--emit-samples", samples_path,
                            "write sampled w(x) and shifted-line values as CSV");
        if (std::string(name) == "nondeg-scan") {
            sub->add_option("--q", flag_q, "q as JSON number or [re,im]");
            sub->add_option("--t", flag_t, "t as JSON number or [re,im]");
            sub->add_option("--P", flag_P, "P as JSON coeff list [[k,re,im],...]");
            sub->add_option("--moments", flag_moments, "moments as JSON [[re,im],...]");
            sub->add_option("--kmax", flag_kmax, "scan filtration levels 0..kmax");
        }
        if (std::string(name) == "sl2") {
            sub->add_option("--q", flag_q, "q as JSON number");
            sub->add_option("--c", flag_c, "Casimir value as JSON number");
        }
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    std::string payload_text;
    try {
        const bool kmax_set = name == "nondeg-scan" && sub->count("--kmax") > 0;
        const bool has_flags = !flag_q.empty() || !flag_t.empty() || !flag_P.empty() ||
                               !flag_moments.empty() || !flag_c.empty() || kmax_set;
        if (has_flags && name == "nondeg-scan") {
            const std::string base = sub->count("--input") ? read_input(input) : std::string();
            payload_text = payload_from_flags(base, flag_q, flag_t, flag_P, flag_moments,
                                              flag_kmax, kmax_set);
        } else if (has_flags && name == "sl2") {
            nlohmann::json payload;
            if (!flag_q.empty()) payload["q"] = nlohmann::json::parse(flag_q);
            if (!flag_c.empty()) payload["c"] = nlohmann::json::parse(flag_c);
            payload_text = payload.dump();
        } else {
            payload_text = read_input(input);
        }
    } catch (const qweyl::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid flag JSON: " << e.what() << "\n";
        return 2;
    }

    const bool emit = !samples_path.empty();
    const qweyl::RunResult res = qweyl::run_request_text(name, payload_text, emit);
    write_output(output, res.output);
    if (emit && res.exit_code == 0) write_output(samples_path, res.samples_csv);
    return res.exit_code;
}
