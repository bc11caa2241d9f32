#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfforge/rational.hpp"

namespace pfforge {

/// Fraction-free (Bareiss) elimination on an n x n row-major integer matrix.
/// The matrix is overwritten. Every intermediate is an exact integer: each
/// division by the previous pivot is exact by Sylvester's identity.
Integer bareiss_determinant(std::span<Integer> matrix, std::size_t n);

/// Determinant of an n x n row-major rational matrix. Each row is scaled to
/// integers by the lcm of its denominators before elimination.
Rational determinant(std::span<const Rational> matrix, std::size_t n);

}  // namespace pfforge
