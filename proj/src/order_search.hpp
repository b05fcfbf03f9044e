#pragma once

// Exhaustive minimization over linear orders of
//     max_A  sum_{v before w} t_A(v, w),     t_A(v, w) >= 0,
// shared by the graph and step-kernel functionals. Depth-first over
// prefixes: once v is placed, every pair (v, r) with r still unplaced is
// decided, so each subset keeps a running lower bound and a branch is cut
// as soon as some subset's bound reaches the incumbent.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qm::detail {

template <class T>
struct PairTable {
    int n = 0;
    std::size_t subsets = 0;
    std::vector<T> terms; // (A * n + v) * n + w

    PairTable(int n_, std::size_t subsets_)
        : n(n_), subsets(subsets_), terms(subsets_ * static_cast<std::size_t>(n_) * n_, T{}) {}

    T& at(std::size_t a, int v, int w) { return terms[(a * n + v) * n + w]; }
    const T& at(std::size_t a, int v, int w) const { return terms[(a * n + v) * n + w]; }
};

template <class T>
struct OrderOptimum {
    std::vector<int> order;
    T value{};
    std::size_t subset = 0;
};

template <class T>
OrderOptimum<T> evaluate_order(const PairTable<T>& table, std::span<const int> order) {
    OrderOptimum<T> out;
    out.order.assign(order.begin(), order.end());
    bool first = true;
    for (std::size_t a = 0; a < table.subsets; ++a) {
        T sum{};
        for (int i = 0; i < table.n; ++i)
            for (int j = i + 1; j < table.n; ++j) sum += table.at(a, order[i], order[j]);
        if (first || sum > out.value) {
            out.value = sum;
            out.subset = a;
            first = false;
        }
    }
    return out;
}

template <class T>
class OrderMinimizer {
public:
    OrderMinimizer(const PairTable<T>& table, std::span<const int> seed_order)
        : table_(table), candidates_(seed_order.begin(), seed_order.end()),
          bounds_((table.n + 1) * table.subsets, T{}), used_(table.n, false) {
        best_ = evaluate_order(table, seed_order);
    }

    OrderOptimum<T> run() {
        if (table_.n > 1) descend(0);
        return best_;
    }

private:
    void descend(int depth) {
        const int n = table_.n;
        const std::size_t s = table_.subsets;
        const T* parent = &bounds_[depth * s];
        T* child = &bounds_[(depth + 1) * s];
        for (int v : candidates_) {
            if (used_[v]) continue;
            T worst{};
            std::size_t worst_subset = 0;
            bool cut = false;
            for (std::size_t a = 0; a < s; ++a) {
                T add{};
                for (int r = 0; r < n; ++r) {
                    if (!used_[r] && r != v) add += table_.at(a, v, r);
                }
                child[a] = parent[a] + add;
                if (a == 0 || child[a] > worst) {
                    worst = child[a];
                    worst_subset = a;
                }
                if (child[a] >= best_.value) {
                    cut = true;
                    break;
                }
            }
            if (cut) continue;
            used_[v] = true;
            prefix_.push_back(v);
            if (depth + 1 == n) {
                best_.value = worst;
                best_.subset = worst_subset;
                best_.order = prefix_;
            } else {
                descend(depth + 1);
            }
            prefix_.pop_back();
            used_[v] = false;
        }
    }

    const PairTable<T>& table_;
    std::vector<int> candidates_;
    std::vector<T> bounds_;
    std::vector<bool> used_;
    std::vector<int> prefix_;
    OrderOptimum<T> best_;
};

template <class T>
OrderOptimum<T> minimize_over_orders(const PairTable<T>& table, std::span<const int> seed_order) {
    return OrderMinimizer<T>(table, seed_order).run();
}

} // namespace qm::detail
