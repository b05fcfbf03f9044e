#pragma once

// Max-inside defects, threshold edit distance and sequence diagnostics.
//
// omega_tilde0(G, <) = n^-3 sum_{v < w} |N(v) \ (N(w) + w)|
// omega_tilde1(G, <) = n^-3 sum_{v < w} |N(v) \ N(w)|

#include "qm/functionals.hpp"
#include "qm/graph.hpp"
#include "qm/rational.hpp"
#include "qm/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qm {

Rational omega_tilde0(const Graph& g, const VertexOrder& ord);
Rational omega_tilde1(const Graph& g, const VertexOrder& ord);
/// omega_tilde1 at degree order, which minimizes it.
FunctionalReport omega_tilde_min(const Graph& g);

enum class EditStrategy { exact, dp_degree, dp_search };

/// Cheapest threshold graph with creation order `ord`:
/// sum_j min(e_j, j - e_j) with e_j the edges from position j back.
EditReport edit_for_order(const Graph& g, const VertexOrder& ord);
EditReport threshold_edit_distance(const Graph& g, EditStrategy strategy, const Limits& limits = {});

std::string_view to_string(EditStrategy s);

struct DiagnosticRow {
    int index = 0;
    int n = 0;
    double omega_tilde0 = 0.0;
    double omega_tilde1 = 0.0;
    double edit_density = 0.0;
    double omega2_degree = 0.0;
    std::string flag;
};

/// One row per graph. The flag fits omega_tilde1 against 1/n by least squares
/// and reads "trend_to_zero" when the slope is positive and the intercept at
/// most 0.01; it is a heuristic and says so.
std::vector<DiagnosticRow> quasithreshold_diagnostic(const std::vector<Graph>& graphs, const ScanOptions& opts = {});
void write_diagnostic_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows);

} // namespace qm
