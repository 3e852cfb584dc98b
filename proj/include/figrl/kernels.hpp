#pragma once

#include "figrl/graph.hpp"
#include "figrl/sketch.hpp"

#include <cstddef>

// Hot loops, provided twice: `kernels` is the OpenMP-parallel production
// path, `reference` the plain serial version kept for testing and for the
// benchmark target. Every parallel kernel writes each output element from
// exactly one task, accumulating in a fixed order, so results do not depend
// on the thread count.
namespace figrl::kernels {

// out is n×d row-major; row i = (1/sqrt(d)) * L_i * R^T.
void sketch_rows(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec,
                 double* out);

// out = A^T A (d×d, row-major) for row-major A (n×d).
void gram_cols(const double* a, std::size_t n, std::size_t d, double* out);

// out = A A^T (n×n, row-major).
void gram_rows(const double* a, std::size_t n, std::size_t d, double* out);

// out = A * V * diag(scale) for row-major A (n×d), V (d×k): out is n×k.
void project_scaled(const double* a, std::size_t n, std::size_t d, const double* v,
                    const double* scale, std::size_t k, double* out);

} // namespace figrl::kernels

namespace figrl::reference {

void sketch_rows(const Graph& g, const DegreeVector& deg, const ProjectionSpec& spec,
                 double* out);
void gram_cols(const double* a, std::size_t n, std::size_t d, double* out);
void gram_rows(const double* a, std::size_t n, std::size_t d, double* out);
void project_scaled(const double* a, std::size_t n, std::size_t d, const double* v,
                    const double* scale, std::size_t k, double* out);

} // namespace figrl::reference
