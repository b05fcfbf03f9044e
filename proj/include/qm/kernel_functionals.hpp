#pragma once

// Monotonicity defects of step kernels under orders of their parts.
//
// variant 1: max_A sum_{i before j} w_i w_j (sum_{z in A} w_z (W(i,z) - W(j,z)))_+
// variant 2: variant 1 at A plus variant 1 at the complement of A
// The tilde and goxx functionals move the maximum inside the z-sum.
//
// When all weights are equal and every value is 0 or 1, results also carry
// an exact rational with denominator k^3.

#include "qm/functionals.hpp"
#include "qm/kernel.hpp"
#include "qm/report.hpp"

#include <span>

namespace qm {

enum class KernelOrderStrategy { exact, marginal, refine };

FunctionalReport kernel_omega_at(const StepKernel& w, std::span<const int> order, int variant,
                                 SubsetStrategy strategy, const ScanOptions& opts = {});

/// Minimum over part orders. `refine` splits every part into r subparts and
/// then scans all orders of the refined kernel.
FunctionalReport kernel_omega_min(const StepKernel& w, int variant, KernelOrderStrategy strategy,
                                  int r = 1, const ScanOptions& opts = {});

double kernel_omega_tilde(const StepKernel& w, std::span<const int> order);
double kernel_goxx(const StepKernel& w, std::span<const int> order);
/// goxx at the marginal-sorted order, which minimizes it.
FunctionalReport kernel_goxx_min(const StepKernel& w);

std::vector<int> identity_parts(int k);

} // namespace qm
