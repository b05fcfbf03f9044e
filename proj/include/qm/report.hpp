#pragma once

#include "qm/graph.hpp"
#include "qm/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qm {

/// How a reported value relates to the true optimum it stands for.
/// `estimate` marks heuristic values that bound neither side (e.g. a
/// local-search inner maximum evaluated at a heuristic order).
enum class BoundKind { exact, lower_bound, upper_bound, estimate };

std::string_view to_string(BoundKind b);
BoundKind bound_from_string(std::string_view s);

struct FunctionalReport {
    double value = 0.0;
    std::optional<Rational> exact_value;
    BoundKind bound = BoundKind::exact;
    std::optional<VertexOrder> order;
    std::optional<std::vector<int>> subset;
    std::string method;
};

struct NormReport {
    double value = 0.0;
    BoundKind bound = BoundKind::exact;
    std::vector<int> witness_f;
    std::vector<int> witness_g;
    std::vector<int> witness_perm;
    std::string method;
};

struct EditReport {
    std::int64_t distance = 0;
    CreationSequence witness;
    BoundKind bound = BoundKind::exact;
    std::string method;
};

nlohmann::json to_json(const FunctionalReport& r);
nlohmann::json to_json(const NormReport& r);
nlohmann::json to_json(const EditReport& r);

} // namespace qm
