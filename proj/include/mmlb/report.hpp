#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mmlb {

using Json = nlohmann::ordered_json;

/// JSON number, with +inf / -inf / nan written as the strings "inf", "-inf", "nan".
Json num(double v);
/// Inverse of num(): accepts numbers and the three special strings.
double parse_num(const Json& j);
Json num_array(const std::vector<double>& values);

/// A computed bound with everything needed to audit it.
struct BoundReport {
    enum class Direction { lower, upper };

    std::string family;
    double value = 0.0;
    Direction direction = Direction::lower;
    /// True when the raw bound carried no information (e.g. a negative lower
    /// bound reported as 0).
    bool vacuous = false;
    Json inputs = Json::object();
    Json intermediates = Json::object();
    Json witnesses = Json::object();
    std::vector<std::string> warnings;

    Json to_json() const;
};

/// Clamps a raw lower bound into [lo, hi], setting `vacuous` when raw <= lo.
double clamp_lower_bound(double raw, double lo, double hi, bool& vacuous);

/// Serializes with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace mmlb
