#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hm/modcat.hpp"
#include "hm/workspace.hpp"

namespace hm::cli {

constexpr int kReportSchema = 1;

enum ExitStatus : int {
    kExitOk = 0,
    kExitInvalid = 1,     // parse or validation failure
    kExitHypothesis = 2,  // hypothesis audit failure
    kExitVerify = 3,      // exactness or verification failure
};

struct RunOptions {
    std::size_t max_degree = kDefaultMaxDegree;
    std::optional<FieldSpec> field;
    std::uint64_t seed = 1;
    bool verify_oracle = false;
    std::size_t path_bound = kDefaultPathBound;
};

/// One JSON document per task, in declaration order; status is the largest exit code.
struct RunResult {
    std::vector<nlohmann::json> reports;
    int status = kExitOk;
};

RunResult run(const ws::Workspace& w, const RunOptions& opts);
/// Parses first; a parse or compile failure yields a single "parse" report.
RunResult run_source(const std::string& source, const RunOptions& opts);

/// The human table for one report.
std::string render_human(const nlohmann::json& report);

}  // namespace hm::cli
