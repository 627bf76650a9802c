#ifndef QWEYL_CLI_CORE_HPP
#define QWEYL_CLI_CORE_HPP

#include <optional>
#include <string>

#include "qweyl/json_io.hpp"

namespace qweyl {

struct RunResult {
    int exit_code = 0;   // 0 ok, 2 validation error, 3 numeric failure
    std::string output;  // deterministic JSON, newline-terminated
    std::string samples_csv; // cone-check --emit-samples payload, when requested
};

// Dispatch one request. Subcommands: theta-eval, trace-eval, analytic-trace,
// cone-check, positivity-cert, nondeg-scan, root-shift, sl2.
RunResult run_request(const std::string& subcommand, const json& payload,
                      bool emit_samples = false);

// Parse, dispatch, and map errors to {kind, detail} with the exit-code policy.
RunResult run_request_text(const std::string& subcommand, const std::string& payload_text,
                           bool emit_samples = false);

} // namespace qweyl

#endif
