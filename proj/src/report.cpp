#include "qm/report.hpp"

#include "qm/errors.hpp"
#include "qm/graph_io.hpp"

namespace qm {

std::string_view to_string(BoundKind b) {
    switch (b) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower_bound: return "lower";
    case BoundKind::upper_bound: return "upper";
    case BoundKind::estimate: return "estimate";
    }
    return "?";
}

BoundKind bound_from_string(std::string_view s) {
    if (s == "exact") return BoundKind::exact;
    if (s == "lower") return BoundKind::lower_bound;
    if (s == "upper") return BoundKind::upper_bound;
    if (s == "estimate") return BoundKind::estimate;
    throw InvalidInput("unknown bound kind '" + std::string(s) + "'");
}

nlohmann::json to_json(const FunctionalReport& r) {
    nlohmann::json j;
    if (r.exact_value) {
        j["value_num"] = r.exact_value->num();
        j["value_den"] = r.exact_value->den();
    }
    j["value"] = r.value;
    j["bound"] = to_string(r.bound);
    if (r.order) j["order"] = order_to_json(*r.order);
    if (r.subset) j["subset"] = *r.subset;
    j["method"] = r.method;
    return j;
}

nlohmann::json to_json(const NormReport& r) {
    return {{"value", r.value},
            {"bound", to_string(r.bound)},
            {"witness_f", r.witness_f},
            {"witness_g", r.witness_g},
            {"witness_perm", r.witness_perm},
            {"method", r.method}};
}

nlohmann::json to_json(const EditReport& r) {
    return {{"distance", r.distance},
            {"bound", to_string(r.bound)},
            {"witness", creation_to_json(r.witness)},
            {"method", r.method}};
}

} // namespace qm
