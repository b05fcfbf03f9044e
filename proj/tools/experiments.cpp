#include "experiments.hpp"

#include "qm/kernel_functionals.hpp"
#include "qm/norms.hpp"
#include "qm/quasithreshold.hpp"
#include "qm/sampling.hpp"
#include "qm/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace qm::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Cell {
    int n = 0;
    int index = 0;
    std::uint64_t seed = 0;
};

class CellRecorder {
public:
    CellRecorder(const ExperimentSpec& spec, const Cell& cell, std::vector<ExperimentRow>& rows)
        : spec_(spec), cell_(cell), rows_(rows) {}

    template <class F>
    void measure(const std::string& metric, const std::string& variant, const std::string& order,
                 const std::string& subset, F&& compute) {
        const auto t0 = Clock::now();
        const auto [value, bound] = compute();
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        rows_.push_back({spec_.kind, cell_.n, cell_.seed, metric, variant, order, subset, value, bound,
                         spec_.timing ? ms : 0.0});
    }

private:
    const ExperimentSpec& spec_;
    const Cell& cell_;
    std::vector<ExperimentRow>& rows_;
};

using Result = std::pair<double, std::string>;

Result from(const FunctionalReport& r) { return {r.value, std::string(to_string(r.bound))}; }

SubsetStrategy subset_for(int n, const ScanOptions& opts) {
    return n <= opts.limits.exact_subset ? SubsetStrategy::exact : SubsetStrategy::local_search;
}

void convergence_cell(const ExperimentSpec& spec, const Cell& cell, std::vector<ExperimentRow>& rows) {
    const StepKernel w = spec.kernel ? *spec.kernel : additive_kernel(64);
    const Graph g = gnw(cell.n, w, cell.seed);
    CellRecorder rec(spec, cell, rows);
    ScanOptions opts = spec.scan;
    opts.allow_heuristic = true;
    const auto subset = subset_for(cell.n, opts);
    const std::string subset_name(to_string(subset));
    const VertexOrder deg = degree_order(g);
    rec.measure("omega2", "2", "degree", subset_name, [&] {
        auto r = omega_max_subset(g, deg, 2, subset, opts);
        if (r.bound == BoundKind::exact) return from(r);
        return Result{r.value, "lower"};
    });
    rec.measure("omega1", "1", "degree", subset_name, [&] {
        auto r = omega_max_subset(g, deg, 1, subset, opts);
        return Result{r.value, r.bound == BoundKind::exact ? "upper" : "estimate"};
    });
    rec.measure("omega_tilde1", "1", "degree", "none", [&] { return from(omega_tilde_min(g)); });
}

void quasirandom_cell(const ExperimentSpec& spec, const Cell& cell, std::vector<ExperimentRow>& rows) {
    const Graph g = gnp(cell.n, 0.5, cell.seed);
    CellRecorder rec(spec, cell, rows);
    rec.measure("omega_tilde1", "1", "degree", "none", [&] { return from(omega_tilde_min(g)); });
    rec.measure("omega_tilde0", "0", "degree", "none",
                [&] { return Result{omega_tilde0(g, degree_order(g)).to_double(), "upper"}; });
    rec.measure("edit_density", "", "dp_search", "none", [&] {
        const auto e = threshold_edit_distance(g, EditStrategy::dp_search, spec.scan.limits);
        const double nn = static_cast<double>(cell.n) * cell.n;
        return Result{cell.n == 0 ? 0.0 : 2.0 * static_cast<double>(e.distance) / nn, std::string(to_string(e.bound))};
    });
}

void kmm_cell(const ExperimentSpec& spec, const Cell& cell, std::vector<ExperimentRow>& rows) {
    const int m = cell.n;
    const Graph g = kmm_graph(m);
    Cell shown = cell;
    shown.n = 2 * m;
    CellRecorder rec(spec, shown, rows);
    for (int j = 1; j <= 3; ++j) {
        rec.measure("omega" + std::to_string(j), std::to_string(j), "exact", "exact",
                    [&] { return from(omega_min_order(g, j, OrderStrategy::exact, spec.scan)); });
    }
    rec.measure("omega1_blocks_first", "1", "given", "exact", [&] {
        return from(omega_max_subset(g, VertexOrder::identity(2 * m), 1, SubsetStrategy::exact, spec.scan));
    });
}

void tightness_cell(const ExperimentSpec& spec, const Cell& cell, std::vector<ExperimentRow>& rows) {
    const auto pair = pair_23best(cell.n, cell.seed);
    CellRecorder rec(spec, cell, rows);
    rec.measure("l1", "", "identity", "none", [&] { return Result{l1_distance(pair.first, pair.second), "exact"}; });
    NormOptions no;
    no.limits = spec.scan.limits;
    no.allow_heuristic = true;
    no.seed = cell.seed;
    no.restarts = 200;
    const auto strategy = cell.n <= no.limits.cutnorm ? NormStrategy::exact : NormStrategy::local_search;
    rec.measure("cut_pm", "pm", "identity", strategy == NormStrategy::exact ? "exact" : "local_search", [&] {
        const auto r = cut_norm(difference(pair.first, pair.second), CutMode::pm, strategy, no);
        return Result{r.value, std::string(to_string(r.bound))};
    });
}

std::vector<ExperimentRow> tightness_summary(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows) {
    std::map<int, std::pair<double, int>> l1;
    std::map<int, std::pair<double, int>> cut;
    for (const auto& r : rows) {
        auto& slot = r.metric == "l1" ? l1[r.n] : cut[r.n];
        slot.first += r.value;
        ++slot.second;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [k, s] : l1) {
        xs.push_back(cut[k].first / cut[k].second);
        ys.push_back(s.first / s.second);
    }
    if (xs.size() < 2) return {};
    return {{spec.kind, 0, spec.base_seed, "slope_log_l1_vs_log_cut", "", "", "", log_log_slope(xs, ys), "estimate", 0.0}};
}

std::vector<ExperimentRow> inequality_rows(const ExperimentSpec& spec) {
    std::vector<ExperimentRow> out;
    for (const auto& name : suite_names()) {
        const auto t0 = Clock::now();
        const auto checks = run_suite(name, spec.seeds, spec.base_seed, spec.scan);
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        for (const auto& c : checks) {
            out.push_back({spec.kind, c.n, static_cast<std::uint64_t>(c.instance), name + "/" + c.check, "", "", "",
                           c.lhs, c.pass ? "pass" : "fail", spec.timing ? ms : 0.0});
        }
    }
    return out;
}

using CellFn = std::function<void(const ExperimentSpec&, const Cell&, std::vector<ExperimentRow>&)>;

const std::map<std::string, CellFn>& cell_functions() {
    static const std::map<std::string, CellFn> m{
        {"convergence", convergence_cell},
        {"quasirandom", quasirandom_cell},
        {"kmm-table", kmm_cell},
        {"tightness", tightness_cell},
    };
    return m;
}

} // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds{"convergence", "quasirandom", "inequality-suite", "kmm-table", "tightness"};
    return kinds;
}

std::vector<int> default_sizes(const std::string& kind) {
    if (kind == "convergence") return {8, 12, 16, 20};
    if (kind == "quasirandom") return {50, 100, 200, 300};
    if (kind == "kmm-table") return {1, 2, 3, 4};
    if (kind == "tightness") return {16, 32, 64};
    return {1};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    if (std::find(experiment_kinds().begin(), experiment_kinds().end(), spec.kind) == experiment_kinds().end())
        throw InvalidInput("unknown experiment kind '" + spec.kind + "'");
    if (spec.seeds < 1) throw InvalidInput("need at least one seed");
    if (spec.sizes.empty()) throw InvalidInput("need at least one size");
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
        if (spec.sizes[i] < 1) throw InvalidInput("sizes must be positive");
        if (i > 0 && spec.sizes[i] <= spec.sizes[i - 1]) throw InvalidInput("sizes must be strictly ascending");
    }
    if (spec.kind == "inequality-suite") return inequality_rows(spec);

    const auto& fn = cell_functions().at(spec.kind);
    const int seeds = spec.kind == "kmm-table" ? 1 : spec.seeds;
    std::vector<Cell> cells;
    for (int n : spec.sizes) {
        for (int s = 0; s < seeds; ++s) {
            const std::uint64_t seed = spec.kind == "kmm-table"
                                           ? spec.base_seed
                                           : mix64(spec.base_seed ^ mix64(static_cast<std::uint64_t>(n))) + s;
            cells.push_back({n, s, seed});
        }
    }
    std::vector<std::vector<ExperimentRow>> out(cells.size());
    ExperimentSpec inner = spec;
    const int workers = std::max(1, std::min<int>(spec.scan.threads, static_cast<int>(cells.size())));
    if (workers > 1) inner.scan.threads = 1;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                fn(inner, cells[i], out[i]);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<ExperimentRow> rows;
    for (auto& part : out) rows.insert(rows.end(), part.begin(), part.end());
    if (spec.kind == "tightness") {
        auto summary = tightness_summary(spec, rows);
        rows.insert(rows.end(), summary.begin(), summary.end());
    }
    return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << "experiment,n,seed,metric,variant,order_strategy,subset_strategy,value,bound,runtime_ms\n";
    const auto old = out.precision(17);
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.n << ',' << r.seed << ',' << r.metric << ',' << r.variant << ','
            << r.order_strategy << ',' << r.subset_strategy << ',' << r.value << ',' << r.bound << ','
            << r.runtime_ms << '\n';
    }
    out.precision(old);
}

std::string gnuplot_script(const std::string& csv_path, const std::vector<ExperimentRow>& rows) {
    std::vector<std::string> metrics;
    for (const auto& r : rows)
        if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end()) metrics.push_back(r.metric);
    std::ostringstream s;
    s << "set datafile separator ','\n"
      << "set key outside\n"
      << "set xlabel 'n'\n"
      << "set ylabel 'value'\n"
      << "set logscale xy\n"
      << "plot ";
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        s << (i ? ", \\\n     " : "") << "'" << csv_path << "' every ::1 using 2:(strcol(4) eq '" << metrics[i]
          << "' ? $8 : 1/0) with points title '" << metrics[i] << "'";
    }
    s << '\n';
    return s.str();
}

} // namespace qm::cli
