#pragma once

#include "qm/functionals.hpp"
#include "qm/kernel.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qm::cli {

struct ExperimentSpec {
    std::string kind;
    std::vector<int> sizes;
    int seeds = 1;
    std::uint64_t base_seed = 0;
    ScanOptions scan;
    std::optional<StepKernel> kernel;
    bool timing = true;
};

struct ExperimentRow {
    std::string experiment;
    int n = 0;
    std::uint64_t seed = 0;
    std::string metric;
    std::string variant;
    std::string order_strategy;
    std::string subset_strategy;
    double value = 0.0;
    std::string bound;
    double runtime_ms = 0.0;
};

const std::vector<std::string>& experiment_kinds();
std::vector<int> default_sizes(const std::string& kind);
/// Validates the spec (InvalidInput) and runs every (size, seed) cell.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
/// Gnuplot script plotting value against n per metric from `csv_path`.
std::string gnuplot_script(const std::string& csv_path, const std::vector<ExperimentRow>& rows);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qm::cli
