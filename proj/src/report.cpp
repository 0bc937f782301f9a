#include "ineq/report.hpp"

#include <sstream>

namespace ineq {

std::string verdict_line(const ProofResult &result, TaskKind kind) {
    const Verdict &v = result.verdict;
    const std::string rounds = "(rounds: " + std::to_string(v.rounds) + ")";
    switch (v.kind) {
    case VerdictKind::Refuted:
        return std::string(kind == TaskKind::Prove ? "PROVED " : "REFUTED ") + rounds;
    case VerdictKind::Saturated:
        return "UNKNOWN: saturated " + rounds;
    case VerdictKind::RoundCapReached:
        return "UNKNOWN: round cap reached " + rounds;
    case VerdictKind::ResourceLimit:
        return "UNKNOWN: resource limit (" + v.detail + ") " + rounds;
    }
    return "UNKNOWN";
}

std::string human_trace(const ProblemState &state) {
    std::ostringstream os;
    for (const auto &f : state.facts()) {
        os << '[' << f.id << "] r" << f.round << ' ' << module_name(f.module) << ": " << f.derived;
        if (!f.premises.empty()) {
            os << "  <-";
            for (auto p : f.premises) os << ' ' << p;
        }
        if (!f.note.empty()) os << "  (" << f.note << ')';
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json trace_json(const ProblemState &state) {
    auto trace = nlohmann::ordered_json::array();
    for (const auto &f : state.facts()) {
        nlohmann::ordered_json entry;
        entry["id"] = f.id;
        entry["round"] = f.round;
        entry["module"] = module_name(f.module);
        entry["premises"] = f.premises;
        entry["derived"] = f.derived;
        entry["note"] = f.note;
        trace.push_back(std::move(entry));
    }
    return trace;
}

namespace {

nlohmann::ordered_json names_json(const ProblemState &state) {
    nlohmann::ordered_json names = nlohmann::ordered_json::object();
    for (const auto &[name, term] : state.name_table()) names[name] = term;
    return names;
}

}  // namespace

nlohmann::ordered_json report_json(const ProofResult &result) {
    const Subtask &deciding = result.subtasks.at(result.deciding);
    nlohmann::ordered_json out;
    out["verdict"] = verdict_name(result.verdict.kind);
    out["rounds"] = result.verdict.rounds;
    std::size_t derived = 0;
    for (const auto &s : result.subtasks) derived += s.state.derived_atom_count();
    out["atoms_derived"] = derived;
    out["trace"] = trace_json(deciding.state);
    out["name_table"] = names_json(deciding.state);
    auto subtasks = nlohmann::ordered_json::array();
    for (const auto &s : result.subtasks) {
        nlohmann::ordered_json entry;
        entry["goal"] = s.goal;
        entry["verdict"] = verdict_name(s.verdict.kind);
        entry["rounds"] = s.verdict.rounds;
        entry["atoms_derived"] = s.state.derived_atom_count();
        subtasks.push_back(std::move(entry));
    }
    out["subtasks"] = std::move(subtasks);
    return out;
}

}  // namespace ineq
