#pragma once

// Neighbourhood-monotonicity defects of a graph under a vertex order.
//
// For an order ≺ and a vertex set A, the defects compare e(v, A) and e(w, A)
// over all pairs v ≺ w:
//   variant 0: (e(v, A \ {v,w}) - e(w, A \ {v,w}))_+ summed, over n^3
//   variant 1: (e(v, A) - e(w, A))_+ summed, over n^3
//   variant 2: variant 1 at A plus variant 1 at V \ A
//   variant 3: smallest eps with #{v ≺ w : e(v,A) > e(w,A) + eps n} <= eps n^2
// The graph functionals maximize over A and then minimize over orders.

#include "qm/errors.hpp"
#include "qm/graph.hpp"
#include "qm/rational.hpp"
#include "qm/report.hpp"

namespace qm {

enum class SubsetStrategy { exact, local_search };
enum class OrderStrategy { exact, degree, order_search };

struct ScanOptions {
    Limits limits;
    int threads = 1;
    /// Fall back to local search instead of throwing SizeLimitExceeded.
    bool allow_heuristic = false;
};

Rational omega0_at(const Graph& g, const VertexOrder& ord, const VertexSet& a);
Rational omega1_at(const Graph& g, const VertexOrder& ord, const VertexSet& a);
Rational omega2_at(const Graph& g, const VertexOrder& ord, const VertexSet& a);
/// Exact value of the bad-pair functional; the denominator is n^2.
Rational omega3_at_exact(const Graph& g, const VertexOrder& ord, const VertexSet& a);
double omega3_at(const Graph& g, const VertexOrder& ord, const VertexSet& a);

/// Dispatches to omegaJ_at; variant 3 is returned as its exact rational.
Rational omega_at(const Graph& g, const VertexOrder& ord, const VertexSet& a, int variant);

/// max over A of the chosen variant at a fixed order.
FunctionalReport omega_max_subset(const Graph& g, const VertexOrder& ord, int variant,
                                  SubsetStrategy strategy, const ScanOptions& opts = {});

/// min over orders of the max over A.
FunctionalReport omega_min_order(const Graph& g, int variant, OrderStrategy strategy,
                                 const ScanOptions& opts = {});

std::string_view to_string(SubsetStrategy s);
std::string_view to_string(OrderStrategy s);

} // namespace qm
