#pragma once

// Randomized property suites behind `qm verify`. Each instance yields one
// row per check; a suite passes when no row fails.

#include "qm/functionals.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qm {

struct CheckRow {
    std::string suite;
    int instance = 0;
    int n = 0;
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Throws InvalidInput for unknown suites.
std::vector<CheckRow> run_suite(const std::string& name, int trials, std::uint64_t seed,
                                const ScanOptions& opts = {});

int violations(const std::vector<CheckRow>& rows);
void write_checks_csv(std::ostream& out, const std::vector<CheckRow>& rows);

} // namespace qm
