#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace ctrack {

/// Row-major rows x cols cost matrix for optimal assignment. Cells equal to
/// +infinity are forbidden pairs.
struct AssignmentProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;

  double at(std::size_t r, std::size_t c) const { return cost[r * cols + c]; }
};

inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

/// Minimum-cost assignment over allowed pairs. Among all matchings of maximum
/// cardinality, returns one of minimum total cost. Pairs are (row, col)
/// sorted by row. Shortest augmenting path (Kuhn-Munkres with potentials),
/// O(n^2 m).
std::vector<std::pair<std::size_t, std::size_t>> solve_assignment(const AssignmentProblem& problem);

}  // namespace ctrack
