#pragma once

// L1 and cut norms of step functions, and distances minimized over part
// permutations (an upper bound on the coupling-based distances).

#include "qm/errors.hpp"
#include "qm/kernel.hpp"
#include "qm/report.hpp"

#include <cstdint>

namespace qm {

enum class CutMode { pm, zeroone };
enum class NormStrategy { exact, local_search };
enum class PermStrategy { exact, marginal_align };

struct NormOptions {
    Limits limits;
    bool allow_heuristic = false;
    std::uint64_t seed = 1;
    int restarts = 32;
};

double l1_norm(const StepFunction& d);
/// Overlays both partitions (as consecutive intervals) on their common
/// refinement, capped at 256 cells per side.
double l1_distance(const StepFunction& a, const StepFunction& b);

/// sup over f, g with values in {-1, 1} (pm) or {0, 1} (zeroone) of
/// |sum_ij w_i w_j D(i,j) f_i g_j|.
NormReport cut_norm(const StepFunction& d, CutMode mode, NormStrategy strategy, const NormOptions& opts = {});
/// Value of |sum w_i w_j D(i,j) f_i g_j| for given test vectors.
double cut_value(const StepFunction& d, std::span<const int> f, std::span<const int> g);

NormReport perm_cut_distance(const StepKernel& a, const StepKernel& b, CutMode mode, PermStrategy strategy,
                             const NormOptions& opts = {});
NormReport perm_l1_distance(const StepKernel& a, const StepKernel& b, PermStrategy strategy,
                            const NormOptions& opts = {});

std::string_view to_string(CutMode m);

} // namespace qm
