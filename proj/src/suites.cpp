#include "qm/suites.hpp"

#include "qm/kernel.hpp"
#include "qm/kernel_functionals.hpp"
#include "qm/norms.hpp"
#include "qm/quasithreshold.hpp"
#include "qm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>

namespace qm {

namespace {

constexpr double tol = 1e-9;

class Recorder {
public:
    Recorder(std::string suite, std::vector<CheckRow>& rows) : suite_(std::move(suite)), rows_(rows) {}

    void start(int instance, int n) {
        instance_ = instance;
        n_ = n;
    }

    void le(const std::string& check, double lhs, double rhs) { add(check, lhs, rhs, lhs <= rhs + tol); }
    void lt(const std::string& check, double lhs, double rhs) { add(check, lhs, rhs, lhs < rhs); }
    void eq(const std::string& check, double lhs, double rhs) { add(check, lhs, rhs, std::abs(lhs - rhs) <= tol); }
    void le(const std::string& check, const Rational& lhs, const Rational& rhs) {
        add(check, lhs.to_double(), rhs.to_double(), lhs <= rhs);
    }
    void lt(const std::string& check, const Rational& lhs, const Rational& rhs) {
        add(check, lhs.to_double(), rhs.to_double(), lhs < rhs);
    }
    void eq(const std::string& check, const Rational& lhs, const Rational& rhs) {
        add(check, lhs.to_double(), rhs.to_double(), lhs == rhs);
    }
    void holds(const std::string& check, bool ok) { add(check, ok ? 1.0 : 0.0, 1.0, ok); }

private:
    void add(const std::string& check, double lhs, double rhs, bool pass) {
        rows_.push_back({suite_, instance_, n_, check, lhs, rhs, pass});
    }

    std::string suite_;
    std::vector<CheckRow>& rows_;
    int instance_ = 0;
    int n_ = 0;
};

struct Draw {
    CounterRng rng;
    std::uint64_t counter = 0;

    explicit Draw(std::uint64_t seed) : rng(seed, 31) {}
    int integer(int lo, int hi) { return lo + static_cast<int>(rng.below(counter++, static_cast<std::uint64_t>(hi - lo + 1))); }
    double real(double lo, double hi) { return lo + (hi - lo) * rng.uniform(counter++); }
    std::uint64_t seed() { return rng.bits(counter++); }
};

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

Rational exact(const FunctionalReport& r) { return *r.exact_value; }

VertexOrder random_order(int n, Draw& d) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[d.integer(0, i)]);
    return VertexOrder::from_permutation(std::move(perm));
}

VertexSet random_subset(int n, Draw& d) {
    VertexSet a(n);
    for (int v = 0; v < n; ++v)
        if (d.integer(0, 1)) a.insert(v);
    return a;
}

void suite_lb1(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int n = d.integer(3, 8);
    const Graph g = gnp(n, d.real(0.2, 0.8), d.seed());
    rec.start(instance, n);
    const Rational o0 = exact(omega_min_order(g, 0, OrderStrategy::exact, opts));
    const Rational o1 = exact(omega_min_order(g, 1, OrderStrategy::exact, opts));
    const Rational o2 = exact(omega_min_order(g, 2, OrderStrategy::exact, opts));
    const Rational o3 = exact(omega_min_order(g, 3, OrderStrategy::exact, opts));
    const Rational o1_deg = exact(omega_min_order(g, 1, OrderStrategy::degree, opts));
    const Rational o2_deg = exact(omega_min_order(g, 2, OrderStrategy::degree, opts));
    rec.lt("abs_omega0_minus_omega1_lt_1/n", abs_diff(o0, o1), Rational(1, n));
    rec.le("omega1_le_omega2", o1, o2);
    rec.le("omega2_le_2omega1", o2, Rational(2) * o1);
    rec.le("omega1_degree_le_2omega1", o1_deg, Rational(2) * o1);
    rec.le("omega1_le_omega1_degree", o1, o1_deg);
    rec.eq("omega2_degree_eq_omega2", o2_deg, o2);
    rec.le("half_omega1_le_omega3", Rational(1, 2) * o1, o3);
    rec.le("omega3_squared_le_omega1", o3 * o3, o1);
    if (g.edge_count() == 0) {
        rec.eq("omega1_empty_zero", o1, Rational(0));
    } else {
        rec.le("omega1_nonempty_ge_n^-3", Rational(1, static_cast<std::int64_t>(n) * n * n), o1);
    }
    rec.lt("omega_values_lt_half", std::max({o0, o1, o2}), Rational(1, 2));
    const VertexOrder ord = random_order(n, d);
    const VertexSet a = random_subset(n, d);
    rec.eq("omega0_complement_reversed", omega0_at(complement(g), ord.reversed(), a), omega0_at(g, ord, a));
}

void suite_tv3(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int k = d.integer(2, 16);
    const StepKernel w1 = random_monotone(k, d.seed());
    const StepKernel w2 = random_monotone(k, d.seed());
    rec.start(instance, k);
    NormOptions no;
    no.limits = opts.limits;
    no.limits.cutnorm = std::max(no.limits.cutnorm, 16);
    const double cut = cut_norm(difference(w1, w2), CutMode::pm, NormStrategy::exact, no).value;
    rec.le("l1_le_10cut^(2/3)", l1_distance(w1, w2), 10.0 * std::pow(cut, 2.0 / 3.0));
}

void suite_lw1(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int k = d.integer(2, 16);
    const SignedStepFunction dd = random_signed(k, d.seed());
    rec.start(instance, k);
    const int groups = d.integer(1, k);
    std::vector<int> grouping(k);
    for (int i = 0; i < k; ++i) grouping[i] = i < groups ? i : d.integer(0, groups - 1);
    for (int i = k - 1; i > 0; --i) std::swap(grouping[i], grouping[d.integer(0, i)]);
    NormOptions no;
    no.limits = opts.limits;
    no.limits.cutnorm = std::max(no.limits.cutnorm, 16);
    const double cut = cut_norm(dd, CutMode::pm, NormStrategy::exact, no).value;
    const SignedStepFunction coarse = coarsen(dd, grouping);
    rec.le("coarsen_l1_le_sqrt(2k)cut", l1_norm(coarse), std::sqrt(2.0 * groups) * cut);
    rec.le("coarsen_l1_contractive", l1_norm(coarse), l1_norm(dd));
    rec.le("coarsen_cut_contractive", cut_norm(coarse, CutMode::pm, NormStrategy::exact, no).value, cut);
    const auto m = marginal(dd);
    double m1 = 0.0;
    for (int i = 0; i < k; ++i) m1 += dd.weight(i) * std::abs(m[i]);
    rec.le("marginal_l1_le_cut", m1, cut);
}

void suite_c1c2(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int k = d.integer(1, 14);
    const SignedStepFunction dd = random_signed(k, d.seed());
    rec.start(instance, k);
    NormOptions no;
    no.limits = opts.limits;
    const double pm = cut_norm(dd, CutMode::pm, NormStrategy::exact, no).value;
    const double zo = cut_norm(dd, CutMode::zeroone, NormStrategy::exact, no).value;
    rec.le("zeroone_le_pm", zo, pm);
    rec.le("pm_le_4zeroone", pm, 4.0 * zo);
}

void suite_sandwich(Recorder& rec, int instance, Draw& d, const ScanOptions&) {
    const int n = d.integer(1, 8);
    const int r = d.integer(1, 4);
    const StepKernel w = random_monotone(n * r, d.seed());
    rec.start(instance, n);
    const Sandwich s = sandwich(w, n);
    bool ordered = true;
    for (std::size_t i = 0; i < w.values().size(); ++i) {
        const double lo = s.lower.values()[i];
        const double mid = s.middle.values()[i];
        const double hi = s.upper.values()[i];
        const double x = w.values()[i];
        ordered = ordered && lo <= x + tol && x <= hi + tol && lo <= mid + tol && mid <= hi + tol;
    }
    rec.holds("lower_le_kernel_le_upper", ordered);
    const double gap = l1_distance(s.upper, s.lower);
    rec.le("sandwich_gap_le_4/n", gap, 4.0 / n);
    rec.le("block_error_le_gap", l1_distance(s.middle, w), gap);
}

void suite_lipschitz(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int k = d.integer(2, 8);
    const StepKernel w1 = random_kernel(k, d.seed());
    const StepKernel noise = random_kernel(k, d.seed());
    const double t = d.real(0.0, 1.0);
    std::vector<double> v(w1.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1 - t) * w1.values()[i] + t * noise.values()[i];
    const StepKernel w2 = StepKernel::equal(k, std::move(v));
    rec.start(instance, k);
    const double cut = cut_norm(difference(w1, w2), CutMode::pm, NormStrategy::exact).value;
    const auto id = identity_parts(k);
    rec.le("goxx_change_le_2cut", std::abs(kernel_goxx(w1, id) - kernel_goxx(w2, id)), 2.0 * cut);
    for (int j = 1; j <= 2; ++j) {
        const double a = kernel_omega_at(w1, id, j, SubsetStrategy::exact, opts).value;
        const double b = kernel_omega_at(w2, id, j, SubsetStrategy::exact, opts).value;
        rec.le("omega" + std::to_string(j) + "_change_le_" + std::to_string(j) + "cut", std::abs(a - b), j * cut);
    }
    const double o1 = kernel_omega_min(w1, 1, KernelOrderStrategy::exact, 1, opts).value;
    const double o2 = kernel_omega_min(w1, 2, KernelOrderStrategy::exact, 1, opts).value;
    rec.le("kernel_omega1_le_omega2", o1, o2);
    rec.le("kernel_omega2_le_2omega1", o2, 2 * o1);
    rec.eq("kernel_omega2_marginal_eq_exact", kernel_omega_min(w1, 2, KernelOrderStrategy::marginal, 1, opts).value, o2);
}

void suite_bridges(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int n = d.integer(2, 8);
    const Graph g = gnp(n, d.real(0.1, 0.9), d.seed());
    const VertexOrder ord = random_order(n, d);
    rec.start(instance, n);
    const StepKernel w = kernel_from_graph(g, ord);
    const auto id = identity_parts(n);
    for (int j = 1; j <= 2; ++j) {
        rec.eq("kernel_graph_omega" + std::to_string(j) + "_at",
               exact(kernel_omega_at(w, id, j, SubsetStrategy::exact, opts)),
               exact(omega_max_subset(g, ord, j, SubsetStrategy::exact, opts)));
    }
    rec.eq("kernel_graph_omega2_min", exact(kernel_omega_min(w, 2, KernelOrderStrategy::marginal, 1, opts)),
           exact(omega_min_order(g, 2, OrderStrategy::degree, opts)));
    rec.eq("kernel_goxx_eq_omega_tilde1", kernel_goxx(w, id), omega_tilde1(g, ord).to_double());
}

void suite_threshold(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const bool small = instance % 2 == 0;
    const int n = small ? d.integer(1, 14) : d.integer(15, 200);
    const CreationSequence cs = random_creation(n, d.seed());
    const Graph g = threshold_from_creation(cs);
    rec.start(instance, n);
    const VertexOrder nest = nesting_order(cs);
    rec.holds("is_threshold_present", is_threshold(g).has_value());
    rec.eq("omega_tilde0_nesting_zero", omega_tilde0(g, nest), Rational(0));
    rec.eq("edit_distance_zero", static_cast<double>(threshold_edit_distance(g, EditStrategy::dp_degree, opts.limits).distance), 0.0);
    if (small) {
        rec.eq("omega0_nesting_zero", exact(omega_max_subset(g, nest, 0, SubsetStrategy::exact, opts)), Rational(0));
    }
}

void suite_local(Recorder& rec, int instance, Draw& d, const ScanOptions& opts) {
    const int n = d.integer(4, 12);
    const Graph g = gnp(n, d.real(0.2, 0.8), d.seed());
    rec.start(instance, n);
    const VertexOrder ord = random_order(n, d);
    for (int j = 0; j <= 3; ++j) {
        const auto ex = omega_max_subset(g, ord, j, SubsetStrategy::exact, opts);
        const auto ls = omega_max_subset(g, ord, j, SubsetStrategy::local_search, opts);
        rec.le("local_subset_le_exact_omega" + std::to_string(j), exact(ls), exact(ex));
    }
    if (n <= 8) {
        for (int j = 0; j <= 3; ++j) {
            const auto ex = omega_min_order(g, j, OrderStrategy::exact, opts);
            const auto os = omega_min_order(g, j, OrderStrategy::order_search, opts);
            rec.le("order_search_ge_exact_omega" + std::to_string(j), exact(ex), exact(os));
        }
        const auto ed = threshold_edit_distance(g, EditStrategy::exact, opts.limits).distance;
        const auto es = threshold_edit_distance(g, EditStrategy::dp_search, opts.limits).distance;
        rec.le("edit_search_ge_exact", static_cast<double>(ed), static_cast<double>(es));
    }
}

using SuiteFn = std::function<void(Recorder&, int, Draw&, const ScanOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r{
        {"lb1", suite_lb1},           {"tv3", suite_tv3},         {"lw1", suite_lw1},
        {"c1c2", suite_c1c2},         {"sandwich", suite_sandwich}, {"lipschitz", suite_lipschitz},
        {"bridges", suite_bridges},   {"threshold", suite_threshold}, {"local", suite_local},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

std::vector<CheckRow> run_suite(const std::string& name, int trials, std::uint64_t seed, const ScanOptions& opts) {
    const auto it = registry().find(name);
    if (it == registry().end()) throw InvalidInput("unknown suite '" + name + "'");
    std::vector<CheckRow> rows;
    Recorder rec(name, rows);
    for (int t = 0; t < trials; ++t) {
        Draw d(mix64(seed) + static_cast<std::uint64_t>(t));
        it->second(rec, t, d, opts);
    }
    return rows;
}

int violations(const std::vector<CheckRow>& rows) {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return !r.pass; }));
}

void write_checks_csv(std::ostream& out, const std::vector<CheckRow>& rows) {
    out << "suite,instance,n,check,lhs,rhs,pass\n";
    const auto old = out.precision(17);
    for (const auto& r : rows) {
        out << r.suite << ',' << r.instance << ',' << r.n << ',' << r.check << ',' << r.lhs << ',' << r.rhs << ','
            << (r.pass ? "pass" : "FAIL") << '\n';
    }
    out.precision(old);
}

} // namespace qm
