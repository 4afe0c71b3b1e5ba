#pragma once

#include <optional>

#include "dds/barrier.hpp"

namespace dds::detail {

/**
 * argmin ½ (w - s)ᵀ H (w - s) subject to Bᵀ w = b, with H symmetric
 * positive-definite. Returns nullopt when the constraints are inconsistent
 * (Bᵀw = b has no solution to working precision).
 */
std::optional<Vector> weighted_projection(const Matrix& H, const Vector& s,
                                          const Matrix& B, const Vector& b);

/// Solves a square system with full pivoting; nullopt if numerically singular.
std::optional<Vector> solve_square(const Matrix& M, const Vector& rhs);

}  // namespace dds::detail
