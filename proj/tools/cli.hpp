#pragma once

namespace qm::cli {

/// Exit codes: 0 ok, 1 usage or unknown name, 2 invalid input,
/// 3 size limit exceeded, 4 verification found violations.
int run(int argc, char** argv);

} // namespace qm::cli
