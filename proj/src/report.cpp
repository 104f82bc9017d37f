#include "mmlb/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmlb {

Json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double parse_num(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    throw std::invalid_argument("expected a number, got " + j.dump());
}

Json num_array(const std::vector<double>& values) {
    Json out = Json::array();
    for (double v : values) out.push_back(num(v));
    return out;
}

Json BoundReport::to_json() const {
    Json j;
    j["family"] = family;
    j[direction == Direction::lower ? "lower_bound" : "upper_bound"] = num(value);
    j["vacuous"] = vacuous;
    j["inputs"] = inputs;
    j["intermediates"] = intermediates;
    j["witnesses"] = witnesses;
    j["warnings"] = warnings;
    return j;
}

double clamp_lower_bound(double raw, double lo, double hi, bool& vacuous) {
    vacuous = !(raw > lo);
    if (std::isnan(raw)) return lo;
    return std::clamp(raw, lo, hi);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mmlb
