#pragma once

#include <stdexcept>
#include <string>

namespace qm {

/// Malformed input: bad file contents, out-of-range vertices, asymmetric kernels.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact strategy was requested on an instance larger than its configured limit.
class SizeLimitExceeded : public std::runtime_error {
public:
    SizeLimitExceeded(const std::string& what, int size, int limit)
        : std::runtime_error(what + ": size " + std::to_string(size) + " exceeds limit " +
                             std::to_string(limit)),
          size_(size), limit_(limit) {}

    int size() const noexcept { return size_; }
    int limit() const noexcept { return limit_; }

private:
    int size_;
    int limit_;
};

/// Size limits for the exponential exact strategies.
struct Limits {
    int exact_subset = 22; ///< max vertices / parts for a full subset scan
    int exact_order = 9;   ///< max vertices / parts for a full order scan
    int cutnorm = 22;      ///< max parts for the exact cut norm
};

} // namespace qm
