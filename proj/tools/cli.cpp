#include "cli.hpp"

#include "experiments.hpp"

#include "qm/errors.hpp"
#include "qm/functionals.hpp"
#include "qm/graph_io.hpp"
#include "qm/kernel_functionals.hpp"
#include "qm/kernel_io.hpp"
#include "qm/norms.hpp"
#include "qm/quasithreshold.hpp"
#include "qm/sampling.hpp"
#include "qm/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <unistd.h>

namespace qm::cli {

namespace {

struct Common {
    std::string input;
    std::string output;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::optional<int> subset_limit;
    std::optional<int> order_limit;
    std::optional<int> cut_limit;
    bool allow_heuristic = false;
    std::string gnuplot;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("-i,--input", c.input, "input file");
    app->add_option("-o,--output", c.output, "output file (default stdout)");
    app->add_option("--format", c.format, "json|csv|text");
    app->add_option("--seed", c.seed, "base seed");
    app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--exact-subset-limit", c.subset_limit, "max size for exact subset scans (22)");
    app->add_option("--exact-order-limit", c.order_limit, "max size for exact order scans (9)");
    app->add_option("--cutnorm-limit", c.cut_limit, "max parts for the exact cut norm (20)");
    app->add_flag("--allow-heuristic", c.allow_heuristic, "fall back to local search above the limits");
}

// QM_LIMITS holds the limit flags, e.g. "--exact-subset-limit 18 --cutnorm-limit=16".
void apply_env_limits(Limits& limits) {
    const char* env = std::getenv("QM_LIMITS");
    if (!env) return;
    std::istringstream in(env);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) {
        const auto eq = t.find('=');
        if (eq != std::string::npos) {
            tokens.push_back(t.substr(0, eq));
            tokens.push_back(t.substr(eq + 1));
        } else {
            tokens.push_back(t);
        }
    }
    const std::map<std::string, int*> slots{{"--exact-subset-limit", &limits.exact_subset},
                                            {"--exact-order-limit", &limits.exact_order},
                                            {"--cutnorm-limit", &limits.cutnorm}};
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto it = slots.find(tokens[i]);
        if (it == slots.end() || i + 1 >= tokens.size()) throw UsageError("QM_LIMITS: cannot parse '" + tokens[i] + "'");
        try {
            *it->second = std::stoi(tokens[++i]);
        } catch (const std::exception&) {
            throw UsageError("QM_LIMITS: bad value '" + tokens[i] + "'");
        }
    }
}

Limits limits_of(const Common& c) {
    Limits l;
    l.cutnorm = 20;
    apply_env_limits(l);
    if (c.subset_limit) l.exact_subset = *c.subset_limit;
    if (c.order_limit) l.exact_order = *c.order_limit;
    if (c.cut_limit) l.cutnorm = *c.cut_limit;
    return l;
}

ScanOptions scan_of(const Common& c) {
    ScanOptions o;
    o.limits = limits_of(c);
    o.threads = c.threads;
    o.allow_heuristic = c.allow_heuristic;
    return o;
}

NormOptions norm_of(const Common& c) {
    NormOptions o;
    o.limits = limits_of(c);
    o.allow_heuristic = c.allow_heuristic;
    if (c.seed) o.seed = *c.seed;
    return o;
}

std::uint64_t require_seed(const Common& c) {
    if (!c.seed) throw UsageError("--seed is required for randomized commands");
    return *c.seed;
}

std::string read_input(const Common& c) {
    if (c.input.empty()) throw UsageError("missing -i/--input");
    std::ifstream in(c.input);
    if (!in) throw InvalidInput("cannot open " + c.input);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_graph_json(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    return first != std::string::npos && s[first] == '{' && s.find("\"edges\"") != std::string::npos;
}

StepKernel kernel_input(const std::string& contents) {
    if (looks_like_graph_json(contents)) return kernel_from_graph(parse_graph(contents));
    return parse_kernel(contents);
}

StepKernel kernel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return kernel_input(buf.str());
}

// Writes to a sibling temporary and renames, so failed runs leave no file.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write " + tmp.string());
        out << text;
        if (!out) throw InvalidInput("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InvalidInput("cannot rename onto " + path + ": " + ec.message());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string render(const Common& c, const std::string& name, const nlohmann::json& j) {
    if (c.format == "json") return j.dump(2) + "\n";
    if (c.format != "csv") throw UsageError("unsupported --format '" + c.format + "' for compute");
    std::ostringstream s;
    s.precision(17);
    s << "functional,value,value_num,value_den,bound,method\n" << name << ',';
    if (j.contains("value")) s << j["value"].get<double>();
    else if (j.contains("distance")) s << j["distance"].get<std::int64_t>();
    s << ',';
    if (j.contains("value_num")) s << j["value_num"] << ',' << j["value_den"];
    else s << ',';
    s << ',' << j.value("bound", "") << ',' << csv_escape(j.value("method", "")) << '\n';
    return s.str();
}

template <class E>
E parse_enum(const std::string& flag, const std::string& value, const std::map<std::string, E>& table) {
    const auto it = table.find(value);
    if (it == table.end()) throw UsageError("unknown value '" + value + "' for " + flag);
    return it->second;
}

struct ComputeArgs {
    std::string functional;
    int variant = -1;
    std::string order = "degree";
    std::string subset = "exact";
    std::string strategy;
    std::string mode = "pm";
    std::string kernel_order = "marginal";
    int refine = 1;
    std::string second;
};

nlohmann::json compute(const Common& c, const ComputeArgs& a) {
    const std::string& f = a.functional;
    const auto subset = parse_enum<SubsetStrategy>("--subset", a.subset,
                                                   {{"exact", SubsetStrategy::exact}, {"local_search", SubsetStrategy::local_search}});
    if (f == "omega") {
        const Graph g = parse_graph(read_input(c));
        const int variant = a.variant < 0 ? 1 : a.variant;
        const auto order = parse_enum<OrderStrategy>("--order", a.order,
                                                     {{"exact", OrderStrategy::exact},
                                                      {"degree", OrderStrategy::degree},
                                                      {"order_search", OrderStrategy::order_search}});
        ScanOptions opts = scan_of(c);
        if (order != OrderStrategy::exact && subset == SubsetStrategy::local_search) {
            opts.allow_heuristic = true;
            opts.limits.exact_subset = 0;
        }
        return to_json(omega_min_order(g, variant, order, opts));
    }
    if (f == "omega-tilde") {
        const Graph g = parse_graph(read_input(c));
        if (a.variant == 0) {
            FunctionalReport r;
            const VertexOrder deg = degree_order(g);
            r.exact_value = omega_tilde0(g, deg);
            r.value = r.exact_value->to_double();
            r.bound = BoundKind::upper_bound;
            r.order = deg;
            r.method = "omega-tilde0/order:degree";
            return to_json(r);
        }
        return to_json(omega_tilde_min(g));
    }
    if (f == "edit-threshold") {
        const Graph g = parse_graph(read_input(c));
        const auto s = parse_enum<EditStrategy>("--strategy", a.strategy.empty() ? "dp_search" : a.strategy,
                                                {{"exact", EditStrategy::exact},
                                                 {"dp_degree", EditStrategy::dp_degree},
                                                 {"dp_search", EditStrategy::dp_search}});
        return to_json(threshold_edit_distance(g, s, limits_of(c)));
    }
    if (f == "threshold") {
        const Graph g = parse_graph(read_input(c));
        const auto cs = is_threshold(g);
        nlohmann::json j{{"threshold", cs.has_value()}};
        if (cs) j["creation"] = creation_to_json(*cs);
        return j;
    }
    if (f == "kernel-omega") {
        const StepKernel w = kernel_input(read_input(c));
        const int variant = a.variant < 0 ? 2 : a.variant;
        const auto s = parse_enum<KernelOrderStrategy>("--kernel-order", a.kernel_order,
                                                       {{"exact", KernelOrderStrategy::exact},
                                                        {"marginal", KernelOrderStrategy::marginal},
                                                        {"refine", KernelOrderStrategy::refine}});
        return to_json(kernel_omega_min(w, variant, s, a.refine, scan_of(c)));
    }
    if (f == "goxx") return to_json(kernel_goxx_min(kernel_input(read_input(c))));

    const auto cut_mode = parse_enum<CutMode>("--mode", a.mode, {{"pm", CutMode::pm}, {"zeroone", CutMode::zeroone}});
    if (f == "cut-norm") {
        const StepKernel w = kernel_input(read_input(c));
        const auto s = parse_enum<NormStrategy>("--strategy", a.strategy.empty() ? "exact" : a.strategy,
                                                {{"exact", NormStrategy::exact}, {"local_search", NormStrategy::local_search}});
        NormOptions no = norm_of(c);
        if (s == NormStrategy::local_search && !c.seed) throw UsageError("--seed is required for local_search");
        if (a.second.empty()) return to_json(cut_norm(w, cut_mode, s, no));
        return to_json(cut_norm(difference(w, kernel_file(a.second)), cut_mode, s, no));
    }
    if (f == "l1" || f == "perm-cut" || f == "perm-l1") {
        if (a.second.empty()) throw UsageError(f + " needs --second");
        const StepKernel w1 = kernel_input(read_input(c));
        const StepKernel w2 = kernel_file(a.second);
        if (f == "l1") {
            NormReport r;
            r.value = l1_distance(w1, w2);
            r.method = "l1/common_refinement";
            return to_json(r);
        }
        const auto s = parse_enum<PermStrategy>("--strategy", a.strategy.empty() ? "exact" : a.strategy,
                                                {{"exact", PermStrategy::exact}, {"marginal_align", PermStrategy::marginal_align}});
        if (f == "perm-cut") return to_json(perm_cut_distance(w1, w2, cut_mode, s, norm_of(c)));
        return to_json(perm_l1_distance(w1, w2, s, norm_of(c)));
    }
    throw UsageError("unknown functional '" + f + "'");
}

int cmd_verify(const Common& c, const std::string& suite, int trials) {
    if (!is_suite(suite)) {
        std::cerr << "qm: unknown suite '" << suite << "'; known:";
        for (const auto& s : suite_names()) std::cerr << ' ' << s;
        std::cerr << '\n';
        return 1;
    }
    const auto rows = run_suite(suite, trials, c.seed.value_or(0), scan_of(c));
    std::ostringstream out;
    write_checks_csv(out, rows);
    emit(c.output, out.str());
    const int bad = violations(rows);
    std::cerr << suite << ": " << rows.size() << " checks, " << bad << " violations\n";
    return bad == 0 ? 0 : 4;
}

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    for (std::string tok; std::getline(in, tok, ',');) {
        const auto dots = tok.find("..");
        try {
            if (dots != std::string::npos) {
                const int lo = std::stoi(tok.substr(0, dots));
                const int hi = std::stoi(tok.substr(dots + 2));
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            } else {
                out.push_back(std::stoi(tok));
            }
        } catch (const std::exception&) {
            throw UsageError("bad --sizes entry '" + tok + "'");
        }
    }
    return out;
}

int cmd_experiment(const Common& c, const std::string& kind, const std::string& sizes, int seeds,
                   const std::string& kernel, bool no_timing) {
    ExperimentSpec spec;
    spec.kind = kind;
    if (std::find(experiment_kinds().begin(), experiment_kinds().end(), kind) == experiment_kinds().end())
        throw UsageError("unknown experiment kind '" + kind + "'");
    spec.sizes = sizes.empty() ? default_sizes(kind) : parse_sizes(sizes);
    spec.seeds = seeds;
    spec.base_seed = require_seed(c);
    spec.scan = scan_of(c);
    spec.timing = !no_timing;
    if (!kernel.empty()) spec.kernel = kernel_file(kernel);
    const auto rows = run_experiment(spec);
    std::ostringstream out;
    write_experiment_csv(out, rows);
    emit(c.output, out.str());
    if (!c.gnuplot.empty()) emit(c.gnuplot, gnuplot_script(c.output.empty() ? "experiment.csv" : c.output, rows));
    return 0;
}

int cmd_sample(const Common& c, const std::string& model, int n, double p, int m, const std::string& kernel) {
    Graph g;
    if (model == "kmm") {
        g = kmm_graph(m);
    } else {
        const std::uint64_t seed = require_seed(c);
        if (n < 0) throw UsageError("--n is required");
        if (model == "gnp") g = gnp(n, p, seed);
        else if (model == "gnw") {
            if (kernel.empty()) throw UsageError("gnw needs --kernel");
            g = gnw(n, kernel_file(kernel), seed);
        } else if (model == "threshold") g = random_threshold(n, seed);
        else throw UsageError("unknown model '" + model + "'");
    }
    if (c.format == "json") {
        emit(c.output, graph_to_json(g).dump() + "\n");
    } else {
        std::ostringstream out;
        write_graph_text(out, g);
        emit(c.output, out.str());
    }
    return 0;
}

int cmd_convert(const Common& c, const std::string& from, const std::string& to) {
    const std::string contents = read_input(c);
    std::ostringstream out;
    if (from == "graph") {
        const Graph g = parse_graph(contents);
        if (to == "json") out << graph_to_json(g).dump() << '\n';
        else if (to == "text") write_graph_text(out, g);
        else if (to == "kernel-json") out << kernel_to_json(kernel_from_graph(g)).dump() << '\n';
        else if (to == "kernel-text") write_kernel_text(out, kernel_from_graph(g));
        else throw UsageError("unknown --to '" + to + "'");
    } else if (from == "kernel") {
        const StepKernel w = parse_kernel(contents);
        if (to == "json" || to == "kernel-json") out << kernel_to_json(w).dump() << '\n';
        else if (to == "text" || to == "kernel-text") write_kernel_text(out, w);
        else throw UsageError("unknown --to '" + to + "'");
    } else {
        throw UsageError("unknown --from '" + from + "'");
    }
    emit(c.output, out.str());
    return 0;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Quasimonotonicity and quasithreshold functionals of graphs and step kernels"};
    app.require_subcommand(1);

    Common common;
    ComputeArgs ca;
    auto* compute_cmd = app.add_subcommand("compute", "compute one functional, norm or distance");
    add_common(compute_cmd, common);
    compute_cmd->add_option("functional", ca.functional,
                            "omega|omega-tilde|edit-threshold|threshold|kernel-omega|goxx|cut-norm|l1|perm-cut|perm-l1")
        ->required();
    compute_cmd->add_option("--variant", ca.variant, "functional variant");
    compute_cmd->add_option("--order", ca.order, "exact|degree|order_search");
    compute_cmd->add_option("--subset", ca.subset, "exact|local_search");
    compute_cmd->add_option("--strategy", ca.strategy, "strategy for edit/cut/perm functionals");
    compute_cmd->add_option("--mode", ca.mode, "pm|zeroone");
    compute_cmd->add_option("--kernel-order", ca.kernel_order, "exact|marginal|refine");
    compute_cmd->add_option("--refine", ca.refine, "subparts per part for --kernel-order refine");
    compute_cmd->add_option("--second", ca.second, "second kernel for distances");

    std::string suite;
    int trials = 100;
    auto* verify_cmd = app.add_subcommand("verify", "run a randomized property suite");
    add_common(verify_cmd, common);
    verify_cmd->add_option("suite", suite, "suite name")->required();
    verify_cmd->add_option("--trials", trials, "instances")->check(CLI::NonNegativeNumber);

    std::string kind;
    std::string sizes;
    int seeds = 10;
    std::string kernel;
    bool no_timing = false;
    auto* exp_cmd = app.add_subcommand("experiment", "run an experiment grid and write CSV");
    add_common(exp_cmd, common);
    exp_cmd->add_option("kind", kind, "convergence|quasirandom|inequality-suite|kmm-table|tightness")->required();
    exp_cmd->add_option("--sizes", sizes, "comma list, ranges a..b allowed");
    exp_cmd->add_option("--seeds", seeds, "seeds per size");
    exp_cmd->add_option("--kernel", kernel, "kernel file for convergence");
    exp_cmd->add_option("--gnuplot", common.gnuplot, "also write a gnuplot script here");
    exp_cmd->add_flag("--no-timing", no_timing, "write 0 in runtime_ms");

    std::string model;
    int n = -1;
    double p = 0.5;
    int m = 1;
    auto* sample_cmd = app.add_subcommand("sample", "sample a graph");
    add_common(sample_cmd, common);
    sample_cmd->add_option("model", model, "gnp|gnw|threshold|kmm")->required();
    sample_cmd->add_option("--n", n, "vertex count");
    sample_cmd->add_option("--p", p, "edge probability");
    sample_cmd->add_option("--m", m, "side size for kmm");
    sample_cmd->add_option("--kernel", kernel, "kernel file for gnw");

    std::string from = "graph";
    std::string to = "json";
    auto* convert_cmd = app.add_subcommand("convert", "convert between graph and kernel formats");
    add_common(convert_cmd, common);
    convert_cmd->add_option("--from", from, "graph|kernel");
    convert_cmd->add_option("--to", to, "json|text|kernel-json|kernel-text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (compute_cmd->parsed()) {
            if (common.format == "text") common.format = "json";
            emit(common.output, render(common, ca.functional, compute(common, ca)));
            return 0;
        }
        if (verify_cmd->parsed()) return cmd_verify(common, suite, trials);
        if (exp_cmd->parsed()) return cmd_experiment(common, kind, sizes, seeds, kernel, no_timing);
        if (sample_cmd->parsed()) {
            if (common.format != "json" && common.format != "text") throw UsageError("sample writes json or text");
            return cmd_sample(common, model, n, p, m, kernel);
        }
        if (convert_cmd->parsed()) return cmd_convert(common, from, to);
    } catch (const UsageError& e) {
        std::cerr << "qm: " << e.what() << '\n';
        return 1;
    } catch (const SizeLimitExceeded& e) {
        std::cerr << "qm: " << e.what() << " (use --allow-heuristic or raise the limit)\n";
        return 3;
    } catch (const InvalidInput& e) {
        std::cerr << "qm: invalid input: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace qm::cli
