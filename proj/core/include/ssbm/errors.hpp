#pragma once

#include <stdexcept>
#include <string>

namespace ssbm {

// Base class for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside its mathematical or interface domain (bad flag value,
// missing column, parameter out of range). CLI maps these to exit code 2.
struct domain_error : error {
    using error::error;
};

// Data-dependent numerical failure: no sign change for a root, mean-shift
// non-convergence, degenerate (constant) sample, too few points in a fit
// range. CLI maps these to exit code 3.
struct numerical_error : error {
    using error::error;
};

// A requested moment does not exist for the given parameters. This is
// meaningful output (e.g. Pareto EMR with xi >= 1), not a defect.
struct nonexistence_error : numerical_error {
    using numerical_error::numerical_error;
};

}  // namespace ssbm
