#pragma once

#include <stdexcept>
#include <string>

namespace brjuno {

// Raised when an enclosure cannot be tightened enough to decide a comparison
// before the working-precision cap.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a search would need an integer digit whose bit size exceeds the
// configured cap.  bits_estimate is a lower estimate of the required size.
struct digit_cap_error : std::runtime_error {
    digit_cap_error(const std::string& what, double bits)
        : std::runtime_error(what), bits_estimate(bits) {}
    double bits_estimate;
};

// Raised when the smallest admissible digit already steps past the target
// window; retrying with a deeper insertion point shrinks the step size.
struct overshoot_error : std::runtime_error {
    explicit overshoot_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace brjuno
