#include "pik/serialize.hpp"

namespace pik {

using jsonutil::json;
using jsonutil::ordered_json;

ordered_json action_to_json(const Action& action) {
    ordered_json j;
    if (std::holds_alternative<int>(action.selector))
        j["tool"] = std::get<int>(action.selector);
    else
        j["radius"] = std::get<double>(action.selector);
    j["x"] = action.position.x;
    j["y"] = action.position.y;
    return j;
}

Action action_from_json(const json& doc, const std::string& ctx) {
    if (!doc.is_object()) throw ParseError(ctx + ": expected an action object");
    const bool has_tool = doc.contains("tool");
    const bool has_radius = doc.contains("radius");
    if (has_tool == has_radius)
        throw ParseError(ctx + ": exactly one of 'tool' or 'radius' is required");
    jsonutil::check_keys(doc, ctx, {"x", "y"}, {"tool", "radius"});
    Action action;
    action.position.x = jsonutil::get_number(doc, "x", ctx);
    action.position.y = jsonutil::get_number(doc, "y", ctx);
    if (has_tool)
        action.selector = jsonutil::get_int(doc, "tool", ctx);
    else
        action.selector = jsonutil::get_number(doc, "radius", ctx);
    return action;
}

std::string serialize_solve_result(const SolveResult& result, const std::string& agent,
                                   std::uint64_t seed) {
    ordered_json doc;
    doc["puzzle"] = result.puzzle;
    doc["agent"] = agent;
    doc["seed"] = seed;
    doc["solved"] = result.solved;
    ordered_json attempts = ordered_json::array();
    for (const AttemptRecord& a : result.attempts) {
        ordered_json j;
        j["index"] = a.index;
        j["action"] = action_to_json(a.action);
        j["score"] = a.score;
        j["success"] = a.success;
        if (a.acquisition_value)
            j["acquisition_value"] = *a.acquisition_value;
        else
            j["acquisition_value"] = nullptr;
        if (a.expected_outcome)
            j["expected_outcome"] = *a.expected_outcome;
        else
            j["expected_outcome"] = nullptr;
        attempts.push_back(j);
    }
    doc["attempts"] = attempts;
    ordered_json warmup = ordered_json::array();
    for (const auto& [action, score] : result.warmup) {
        ordered_json j;
        j["action"] = action_to_json(action);
        j["simulated_score"] = score;
        warmup.push_back(j);
    }
    doc["warmup"] = warmup;
    return doc.dump(2) + "\n";
}

}  // namespace pik
