#pragma once

// Step kernels: symmetric k x k grids over parts with positive weights.

#include "qm/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qm {

/// Symmetric step function with values in [lo, 1]; base of StepKernel
/// (lo = 0) and SignedStepFunction (lo = -1).
class StepFunction {
public:
    int parts() const noexcept { return k_; }
    double weight(int i) const { return weights_[i]; }
    std::span<const double> weights() const noexcept { return weights_; }
    double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * k_ + j]; }
    std::span<const double> values() const noexcept { return values_; }
    /// Row i as a contiguous span.
    std::span<const double> row(int i) const { return std::span(values_).subspan(static_cast<std::size_t>(i) * k_, k_); }
    bool equal_weights() const noexcept;
    /// All values are exactly 0 or 1.
    bool zero_one() const noexcept;

protected:
    StepFunction(std::vector<double> weights, std::vector<double> values, double lo);

    int k_ = 0;
    std::vector<double> weights_;
    std::vector<double> values_;
};

class StepKernel : public StepFunction {
public:
    /// Row-major values; empty weights means equal weights 1/k.
    StepKernel(std::vector<double> weights, std::vector<double> values)
        : StepFunction(std::move(weights), std::move(values), 0.0) {}
    static StepKernel equal(int k, std::vector<double> values);
};

class SignedStepFunction : public StepFunction {
public:
    SignedStepFunction(std::vector<double> weights, std::vector<double> values)
        : StepFunction(std::move(weights), std::move(values), -1.0) {}
    static SignedStepFunction equal(int k, std::vector<double> values);
};

/// W1 - W2 on a shared partition; throws InvalidInput if the weights differ.
SignedStepFunction difference(const StepFunction& a, const StepFunction& b);

/// n equal parts in the order `ord`, values = adjacency indicators.
StepKernel kernel_from_graph(const Graph& g, const VertexOrder& ord);
StepKernel kernel_from_graph(const Graph& g);

/// Weighted block averages; grouping[i] is the group of part i.
StepKernel coarsen(const StepKernel& w, std::span<const int> grouping);
SignedStepFunction coarsen(const SignedStepFunction& d, std::span<const int> grouping);

/// Splits every part into r equal subparts.
StepKernel refine(const StepKernel& w, int r);
SignedStepFunction refine(const SignedStepFunction& d, int r);

/// Parts listed in `perm` order: result(i, j) = w(perm[i], perm[j]).
StepKernel permuted(const StepKernel& w, std::span<const int> perm);
SignedStepFunction permuted(const SignedStepFunction& d, std::span<const int> perm);

/// marginal[i] = sum_z weight(z) * w(i, z)
std::vector<double> marginal(const StepFunction& w);

/// Nondecreasing along every row and column.
bool is_monotone(const StepFunction& w, double tol = 0.0);

struct SortedKernel {
    StepKernel kernel;
    std::vector<int> perm; ///< perm[i] = original part at position i
};
/// Stable sort of the parts by marginal.
SortedKernel sort_by_marginal(const StepKernel& w);
std::vector<int> marginal_order(const StepFunction& w);

struct Sandwich {
    StepKernel lower;  ///< W_n^-: shifted down, 0 beyond the first block
    StepKernel middle; ///< W_n: block averages
    StepKernel upper;  ///< W_n^+: shifted up, 1 beyond the last block
};
/// Block averages of a monotone kernel on an equal grid of r*n parts,
/// returned on the fine grid. Throws InvalidInput if w is not monotone,
/// has unequal weights, or k is not a multiple of n.
Sandwich sandwich(const StepKernel& w, int n);

// Generators.
StepKernel constant_kernel(double p, int k);
/// W of K_{m,m} (sides first) with every part split into r.
StepKernel kmm_kernel(int m, int r = 1);
/// (i + j + 1) / (2k); monotone with strictly increasing marginal.
StepKernel additive_kernel(int k);
struct KernelPair {
    StepKernel first;
    StepKernel second;
};
/// (A_t + (i + j)) / (2k) for two independent G(k, 1/2) adjacency matrices A_t.
KernelPair pair_23best(int k, std::uint64_t seed);
/// Running maxima of a symmetric uniform grid; always monotone.
StepKernel random_monotone(int k, std::uint64_t seed);
/// Symmetric uniform values in [0, 1] (or [-1, 1] for the signed variant).
StepKernel random_kernel(int k, std::uint64_t seed);
SignedStepFunction random_signed(int k, std::uint64_t seed);

} // namespace qm
