#pragma once

#include "qm/kernel.hpp"

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace qm {

// Text grid: "k" on the first line, then k rows of k values (equal weights).
StepKernel read_kernel_text(std::istream& in);
void write_kernel_text(std::ostream& out, const StepKernel& w);

// JSON: {"k": int, "weights": [...] (optional), "values": [[...], ...]}
nlohmann::json kernel_to_json(const StepFunction& w);
StepKernel kernel_from_json(const nlohmann::json& j);

/// Either format, sniffing for a leading '{'. Throws InvalidInput.
StepKernel parse_kernel(const std::string& contents);
StepKernel load_kernel(const std::string& path);

} // namespace qm
