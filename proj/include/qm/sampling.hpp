#pragma once

// Seeded generators. Every draw is a pure function of (seed, stream, counter),
// so outputs do not depend on evaluation order or worker count.

#include "qm/graph.hpp"
#include "qm/kernel.hpp"

#include <cstdint>

namespace qm {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    std::uint64_t bits(std::uint64_t counter) const noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const noexcept;
    /// Uniform in [0, bound) by rejection-free multiply-shift; bound > 0.
    std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept;

private:
    std::uint64_t key_;
};

Graph gnp(int n, double p, std::uint64_t seed);
/// Vertex types drawn i.i.d. from the part weights, edges independently
/// with probability W(type_i, type_j).
Graph gnw(int n, const StepKernel& w, std::uint64_t seed);
/// Uniform random roles on a uniform random order.
CreationSequence random_creation(int n, std::uint64_t seed);
Graph random_threshold(int n, std::uint64_t seed);
/// K_{m,m} with sides {0..m-1} and {m..2m-1}.
Graph kmm_graph(int m);

} // namespace qm
