#pragma once

#include "ineq/blackboard.hpp"

#include <json.hpp>

#include <string>

namespace ineq {

enum class TaskKind { Prove, Refute };

/// One line: "PROVED (rounds: 3)", "UNKNOWN: saturated (rounds: 2)", ...
std::string verdict_line(const ProofResult &result, TaskKind kind);

/// Trace of one problem state, one fact per line.
std::string human_trace(const ProblemState &state);

nlohmann::ordered_json trace_json(const ProblemState &state);
nlohmann::ordered_json report_json(const ProofResult &result);

}  // namespace ineq
