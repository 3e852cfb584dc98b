#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace figrl {

using NodeId = std::uint32_t;

// Dense row-major matrix. Sketches and embeddings are per-node row vectors,
// so row-major keeps each node's vector contiguous.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Bad inputs, malformed files, violated preconditions. CLI maps this to exit 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure (non-convergence, broken monotonicity). CLI maps this to exit 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Prints "figrl: warning: <msg>" on stderr.
void warn(const std::string& msg);

} // namespace figrl
