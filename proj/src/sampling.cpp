#include "qm/sampling.hpp"

#include "qm/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qm {

namespace {

constexpr std::uint64_t stream_mul = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t counter_mul = 0xd1b54a32d192ed03ULL;

enum Stream : std::uint64_t { edges = 1, types = 2, order = 3, roles = 4 };

} // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(seed ^ (stream * stream_mul))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + counter * counter_mul);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t counter, std::uint64_t bound) const noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(counter)) * bound) >> 64);
}

Graph gnp(int n, double p, std::uint64_t seed) {
    if (n < 0) throw InvalidInput("negative vertex count");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("edge probability outside [0, 1]");
    const CounterRng rng(seed, Stream::edges);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform(static_cast<std::uint64_t>(i) * n + j) < p) g.add_edge(i, j);
    return g;
}

Graph gnw(int n, const StepKernel& w, std::uint64_t seed) {
    if (n < 0) throw InvalidInput("negative vertex count");
    const int k = w.parts();
    std::vector<double> cdf(k);
    std::partial_sum(w.weights().begin(), w.weights().end(), cdf.begin());
    const CounterRng type_rng(seed, Stream::types);
    std::vector<int> type(n);
    for (int i = 0; i < n; ++i) {
        const double u = type_rng.uniform(i) * cdf.back();
        type[i] = std::min<int>(k - 1, std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    }
    const CounterRng rng(seed, Stream::edges);
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform(static_cast<std::uint64_t>(i) * n + j) < w(type[i], type[j])) g.add_edge(i, j);
    return g;
}

CreationSequence random_creation(int n, std::uint64_t seed) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const CounterRng order_rng(seed, Stream::order);
    for (int i = n - 1; i > 0; --i) {
        std::swap(perm[i], perm[order_rng.below(i, static_cast<std::uint64_t>(i) + 1)]);
    }
    const CounterRng role_rng(seed, Stream::roles);
    CreationSequence cs{VertexOrder::from_permutation(std::move(perm)), std::vector<bool>(n, false)};
    for (int j = 1; j < n; ++j) cs.dominating[j] = (role_rng.bits(j) >> 63) != 0;
    return cs;
}

Graph random_threshold(int n, std::uint64_t seed) {
    return threshold_from_creation(random_creation(n, seed));
}

Graph kmm_graph(int m) {
    if (m < 1) throw InvalidInput("K_{m,m} needs m >= 1");
    Graph g(2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = m; j < 2 * m; ++j) g.add_edge(i, j);
    return g;
}

} // namespace qm
