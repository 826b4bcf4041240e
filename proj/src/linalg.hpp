#pragma once

#include <vector>

#include "numeric.hpp"

namespace arithdyn {

using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer determinant(IntegerMatrix m);

// Solves A x = b exactly; throws Singular when A is not invertible.
std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b);

}  // namespace arithdyn
