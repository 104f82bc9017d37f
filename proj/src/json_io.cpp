#include "mmlb/json_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace mmlb {

namespace {

void only_keys(const Json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument(std::string(what) + ": unknown field '" + it.key() + "'");
}

std::vector<double> number_list(const Json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(std::string(what) + ": entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

Distribution distribution_from_json(const Json& j) {
    only_keys(j, {"pmf"}, "distribution");
    if (!j.contains("pmf")) throw std::invalid_argument("distribution: missing 'pmf'");
    return Distribution::validate(number_list(j["pmf"], "distribution 'pmf'"));
}

Json to_json(const Distribution& d) {
    Json j;
    j["pmf"] = std::vector<double>(d.pmf().begin(), d.pmf().end());
    return j;
}

Ensemble ensemble_from_json(const Json& j) {
    only_keys(j, {"members", "prior", "labels"}, "ensemble");
    if (!j.contains("members") || !j["members"].is_array())
        throw std::invalid_argument("ensemble: missing 'members' array");
    std::vector<Distribution> members;
    for (const auto& m : j["members"]) members.push_back(distribution_from_json(m));
    std::optional<std::vector<double>> prior;
    if (j.contains("prior")) prior = number_list(j["prior"], "ensemble 'prior'");
    std::vector<double> labels;
    if (j.contains("labels")) labels = number_list(j["labels"], "ensemble 'labels'");
    return Ensemble(std::move(members), std::move(prior), std::move(labels));
}

Json to_json(const Ensemble& ens) {
    Json j;
    j["members"] = Json::array();
    for (const auto& m : ens.members()) j["members"].push_back(to_json(m));
    if (ens.has_explicit_prior()) j["prior"] = std::vector<double>(ens.prior().begin(), ens.prior().end());
    if (!ens.labels().empty()) j["labels"] = ens.labels();
    return j;
}

CoveringFamily covering_from_json(const Json& j) {
    only_keys(j, {"candidates", "assignment"}, "covering family");
    if (!j.contains("candidates") || !j["candidates"].is_array() || j["candidates"].empty())
        throw std::invalid_argument("covering family: missing nonempty 'candidates' array");
    CoveringFamily fam;
    for (const auto& c : j["candidates"]) fam.candidates.push_back(distribution_from_json(c));
    if (j.contains("assignment")) {
        std::vector<std::size_t> a;
        for (const auto& v : j["assignment"]) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw std::invalid_argument("covering family: assignment entries must be nonnegative integers");
            a.push_back(v.get<std::size_t>());
        }
        fam.assignment = std::move(a);
    }
    return fam;
}

}  // namespace mmlb
