#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "pik/errors.hpp"

namespace pik::jsonutil {

using nlohmann::json;
using nlohmann::ordered_json;

inline json parse(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

/// Rejects unknown keys and reports missing required ones.
inline void check_keys(const json& obj, const std::string& ctx,
                       std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
    if (!obj.is_object()) throw ParseError(ctx + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) throw ParseError(ctx + ": unknown key '" + key + "'");
    }
    for (const char* k : required)
        if (!obj.contains(k)) throw ParseError(ctx + ": missing key '" + k + "'");
}

inline double get_number(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ParseError(ctx + "." + key + ": expected a number");
    return v.get<double>();
}

inline int get_int(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError(ctx + "." + key + ": expected an integer");
    return v.get<int>();
}

inline bool get_bool(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_boolean()) throw ParseError(ctx + "." + key + ": expected a boolean");
    return v.get<bool>();
}

inline std::string get_string(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ParseError(ctx + "." + key + ": expected a string");
    return v.get<std::string>();
}

}  // namespace pik::jsonutil
