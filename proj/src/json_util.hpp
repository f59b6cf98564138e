#pragma once

#include "icc/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace icc::detail {

// Rounds to 9 significant digits. nlohmann prints the shortest round-trip
// form, so quantized values always print the same way and re-quantizing a
// parsed value is the identity.
inline double canonical(double v) {
    if (!std::isfinite(v)) throw InvalidParameter("cannot serialize a non-finite number");
    if (v == 0.0) return 0.0;  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

template <typename T>
T require(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(where + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(where + ": bad value for '" + key + "': " + e.what());
    }
}

}  // namespace icc::detail
