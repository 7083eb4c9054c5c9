#pragma once

#include "torsionforge/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace torsionforge::linalg {

Complex determinant(const Mat& a);

// numerical rank with threshold relative to the largest pivot
int rank(const Mat& a, double rtol = 1e-10);

// least-squares / minimum-norm solve
Vec solve(const Mat& a, const Vec& b);

// orthonormal basis of the kernel of a (columns)
Mat kernel(const Mat& a, double rtol = 1e-10);

// Select a maximal set of linearly independent columns by modified
// Gram-Schmidt with pivoting.  candidate_order, when given, biases the
// pivot choice: among the admissible columns (residual norm within a
// factor 2 of the best remaining) the one earliest in the order wins.
// Returns sorted column indices.
std::vector<int> pivot_columns(const Mat& a, double rtol = 1e-10,
                               const std::vector<int>* candidate_order = nullptr);

}  // namespace torsionforge::linalg
