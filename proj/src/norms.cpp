#include "qm/norms.hpp"

#include "qm/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace qm {

namespace {

constexpr double weight_tol = 1e-12;
constexpr int max_cells = 256;
constexpr int max_perm_parts = 8;

struct CutResult {
    double value = -1.0;
    std::vector<int> f;
    std::vector<int> g;
};

// Best f for the column sums c of a fixed g.
CutResult respond(const StepFunction& d, CutMode mode, const std::vector<double>& c, const std::vector<int>& g) {
    const int k = d.parts();
    CutResult r;
    r.g = g;
    r.f.assign(k, 0);
    if (mode == CutMode::pm) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) {
            s += d.weight(i) * std::abs(c[i]);
            r.f[i] = c[i] >= 0.0 ? 1 : -1;
        }
        r.value = s;
        return r;
    }
    double pos = 0.0;
    double neg = 0.0;
    for (int i = 0; i < k; ++i) {
        if (c[i] > 0.0) pos += d.weight(i) * c[i];
        if (c[i] < 0.0) neg -= d.weight(i) * c[i];
    }
    const bool use_pos = pos >= neg;
    for (int i = 0; i < k; ++i) r.f[i] = use_pos ? (c[i] > 0.0) : (c[i] < 0.0);
    r.value = std::max(pos, neg);
    return r;
}

std::vector<double> column_sums(const StepFunction& d, const std::vector<int>& g) {
    const int k = d.parts();
    std::vector<double> c(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) c[i] += d.weight(j) * d(i, j) * g[j];
    return c;
}

CutResult exact_cut(const StepFunction& d, CutMode mode) {
    const int k = d.parts();
    const int lo = mode == CutMode::pm ? -1 : 0;
    // For pm, g and -g give the same value, so g_0 stays +1.
    const int first = mode == CutMode::pm ? 1 : 0;
    std::vector<int> g(k, lo);
    if (mode == CutMode::pm) g[0] = 1;
    std::vector<double> c = column_sums(d, g);
    CutResult best = respond(d, mode, c, g);
    const std::uint64_t steps = std::uint64_t{1} << (k - first);
    for (std::uint64_t s = 1; s < steps; ++s) {
        const int j = std::countr_zero(s) + first;
        const int old = g[j];
        g[j] = old == 1 ? lo : 1;
        if ((s & 1023U) == 0) {
            c = column_sums(d, g);
        } else {
            const double delta = d.weight(j) * (g[j] - old);
            for (int i = 0; i < k; ++i) c[i] += delta * d(i, j);
        }
        double v = 0.0;
        if (mode == CutMode::pm) {
            for (int i = 0; i < k; ++i) v += d.weight(i) * std::abs(c[i]);
        } else {
            double pos = 0.0;
            double neg = 0.0;
            for (int i = 0; i < k; ++i) (c[i] > 0.0 ? pos : neg) += d.weight(i) * std::abs(c[i]);
            v = std::max(pos, neg);
        }
        if (v > best.value) best = respond(d, mode, column_sums(d, g), g);
    }
    return best;
}

double response_value(const StepFunction& d, CutMode mode, const std::vector<double>& c) {
    double pos = 0.0;
    double neg = 0.0;
    for (int i = 0; i < d.parts(); ++i) (c[i] > 0.0 ? pos : neg) += d.weight(i) * std::abs(c[i]);
    return mode == CutMode::pm ? pos + neg : std::max(pos, neg);
}

// Single flips of g with f at its best response, until no flip helps.
double climb(const StepFunction& d, CutMode mode, std::vector<int>& g, std::vector<double>& c) {
    const int k = d.parts();
    const int lo = mode == CutMode::pm ? -1 : 0;
    double value = response_value(d, mode, c);
    std::vector<double> trial(k);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int j = 0; j < k; ++j) {
            const int flipped = g[j] == 1 ? lo : 1;
            const double delta = d.weight(j) * (flipped - g[j]);
            for (int i = 0; i < k; ++i) trial[i] = c[i] + delta * d(i, j);
            const double v = response_value(d, mode, trial);
            if (v > value + 1e-15) {
                value = v;
                g[j] = flipped;
                c.swap(trial);
                improved = true;
            }
        }
    }
    return value;
}

// Multi-start iterated local search; a lower bound.
CutResult local_cut(const StepFunction& d, CutMode mode, const NormOptions& opts) {
    const int k = d.parts();
    const int lo = mode == CutMode::pm ? -1 : 0;
    const CounterRng rng(opts.seed, 21);
    std::uint64_t counter = 0;
    std::vector<std::vector<int>> starts;
    starts.emplace_back(k, 1);
    {
        const auto m = marginal(d);
        std::vector<int> g(k);
        for (int j = 0; j < k; ++j) g[j] = m[j] >= 0.0 ? 1 : lo;
        starts.push_back(g);
        for (int j = 0; j < k; ++j) g[j] = g[j] == 1 ? lo : 1;
        starts.push_back(g);
    }
    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<int> g(k);
        for (int j = 0; j < k; ++j) g[j] = (rng.bits(counter++) >> 63) ? 1 : lo;
        starts.push_back(std::move(g));
    }
    std::vector<int> best_g;
    double best = -1.0;
    for (auto& g : starts) {
        std::vector<double> c = column_sums(d, g);
        double v = climb(d, mode, g, c);
        // Perturb a few coordinates of the local optimum and climb again.
        std::vector<int> cur = g;
        double cur_v = v;
        for (int kick = 0; kick < k; ++kick) {
            std::vector<int> h = cur;
            const int flips = 2 + static_cast<int>(rng.below(counter++, 3));
            for (int t = 0; t < flips; ++t) {
                const int j = static_cast<int>(rng.below(counter++, k));
                h[j] = h[j] == 1 ? lo : 1;
            }
            std::vector<double> hc = column_sums(d, h);
            const double hv = climb(d, mode, h, hc);
            if (hv > cur_v + 1e-15) {
                cur = std::move(h);
                cur_v = hv;
            }
        }
        if (cur_v > best) {
            best = cur_v;
            best_g = cur;
        }
    }
    return respond(d, mode, column_sums(d, best_g), best_g);
}

std::vector<double> breakpoints(std::span<const double> weights) {
    std::vector<double> b{0.0};
    double s = 0.0;
    for (double w : weights) {
        s += w;
        b.push_back(s);
    }
    b.back() = 1.0;
    return b;
}

int part_of(const std::vector<double>& bps, double x) {
    const int idx = static_cast<int>(std::upper_bound(bps.begin(), bps.end(), x) - bps.begin()) - 1;
    return std::clamp(idx, 0, static_cast<int>(bps.size()) - 2);
}

void check_same_partition(const StepKernel& a, const StepKernel& b) {
    if (a.parts() != b.parts()) throw InvalidInput("kernels have different part counts");
}

bool weights_match(const StepKernel& a, const StepKernel& b, const std::vector<int>& perm) {
    for (int i = 0; i < a.parts(); ++i)
        if (std::abs(a.weight(i) - b.weight(perm[i])) > weight_tol) return false;
    return true;
}

StepKernel aligned(const StepKernel& a, const StepKernel& b, const std::vector<int>& perm) {
    std::vector<double> v(static_cast<std::size_t>(a.parts()) * a.parts());
    const int k = a.parts();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) v[static_cast<std::size_t>(i) * k + j] = b(perm[i], perm[j]);
    return StepKernel(std::vector<double>(a.weights().begin(), a.weights().end()), std::move(v));
}

std::vector<int> marginal_alignment(const StepKernel& a, const StepKernel& b) {
    const auto oa = marginal_order(a);
    const auto ob = marginal_order(b);
    std::vector<int> perm(a.parts());
    for (int t = 0; t < a.parts(); ++t) perm[oa[t]] = ob[t];
    if (!weights_match(a, b, perm)) throw InvalidInput("marginal alignment pairs parts of different weight");
    return perm;
}

template <class Objective>
NormReport perm_search(const StepKernel& a, const StepKernel& b, PermStrategy strategy, Objective objective,
                       const std::string& name) {
    check_same_partition(a, b);
    const int k = a.parts();
    NormReport best;
    best.bound = BoundKind::upper_bound;
    if (strategy == PermStrategy::marginal_align) {
        auto perm = marginal_alignment(a, b);
        best = objective(perm);
        best.witness_perm = std::move(perm);
        best.bound = BoundKind::upper_bound;
        best.method = name + "/perm:marginal_align";
        return best;
    }
    if (k > max_perm_parts) throw SizeLimitExceeded("exact permutation scan", k, max_perm_parts);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    bool found = false;
    do {
        if (!weights_match(a, b, perm)) continue;
        NormReport r = objective(perm);
        if (!found || r.value < best.value - 1e-15) {
            best = std::move(r);
            best.witness_perm = perm;
            found = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) throw InvalidInput("no permutation matches the part weights");
    best.bound = BoundKind::upper_bound;
    best.method = name + "/perm:exact";
    return best;
}

} // namespace

std::string_view to_string(CutMode m) { return m == CutMode::pm ? "pm" : "zeroone"; }

double l1_norm(const StepFunction& d) {
    double s = 0.0;
    for (int i = 0; i < d.parts(); ++i)
        for (int j = 0; j < d.parts(); ++j) s += d.weight(i) * d.weight(j) * std::abs(d(i, j));
    return s;
}

double l1_distance(const StepFunction& a, const StepFunction& b) {
    const auto ba = breakpoints(a.weights());
    const auto bb = breakpoints(b.weights());
    std::vector<double> merged;
    std::merge(ba.begin(), ba.end(), bb.begin(), bb.end(), std::back_inserter(merged));
    std::vector<double> cells{0.0};
    for (double x : merged)
        if (x - cells.back() > weight_tol) cells.push_back(x);
    cells.back() = 1.0;
    const int m = static_cast<int>(cells.size()) - 1;
    if (m > max_cells) throw InvalidInput("common refinement needs " + std::to_string(m) + " cells, limit 256");
    std::vector<double> len(m);
    std::vector<int> pa(m);
    std::vector<int> pb(m);
    for (int c = 0; c < m; ++c) {
        len[c] = cells[c + 1] - cells[c];
        const double mid = 0.5 * (cells[c] + cells[c + 1]);
        pa[c] = part_of(ba, mid);
        pb[c] = part_of(bb, mid);
    }
    double s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s += len[i] * len[j] * std::abs(a(pa[i], pa[j]) - b(pb[i], pb[j]));
    return s;
}

double cut_value(const StepFunction& d, std::span<const int> f, std::span<const int> g) {
    double s = 0.0;
    for (int i = 0; i < d.parts(); ++i)
        for (int j = 0; j < d.parts(); ++j) s += d.weight(i) * d.weight(j) * d(i, j) * f[i] * g[j];
    return std::abs(s);
}

NormReport cut_norm(const StepFunction& d, CutMode mode, NormStrategy strategy, const NormOptions& opts) {
    const int k = d.parts();
    if (strategy == NormStrategy::exact && (k > opts.limits.cutnorm || k > 40)) {
        if (!opts.allow_heuristic) throw SizeLimitExceeded("exact cut norm", k, std::min(opts.limits.cutnorm, 40));
        strategy = NormStrategy::local_search;
    }
    const CutResult r = strategy == NormStrategy::exact ? exact_cut(d, mode) : local_cut(d, mode, opts);
    NormReport rep;
    rep.witness_f = r.f;
    rep.witness_g = r.g;
    rep.value = cut_value(d, r.f, r.g);
    rep.bound = strategy == NormStrategy::exact ? BoundKind::exact : BoundKind::lower_bound;
    rep.method = "cut:" + std::string(to_string(mode)) +
                 (strategy == NormStrategy::exact ? "/exact" : "/local_search");
    return rep;
}

NormReport perm_cut_distance(const StepKernel& a, const StepKernel& b, CutMode mode, PermStrategy strategy,
                             const NormOptions& opts) {
    auto objective = [&](const std::vector<int>& perm) {
        return cut_norm(difference(a, aligned(a, b, perm)), mode, NormStrategy::exact, opts);
    };
    return perm_search(a, b, strategy, objective, "perm-cut:" + std::string(to_string(mode)));
}

NormReport perm_l1_distance(const StepKernel& a, const StepKernel& b, PermStrategy strategy, const NormOptions&) {
    auto objective = [&](const std::vector<int>& perm) {
        NormReport r;
        r.value = l1_norm(difference(a, aligned(a, b, perm)));
        return r;
    };
    return perm_search(a, b, strategy, objective, "perm-l1");
}

} // namespace qm
