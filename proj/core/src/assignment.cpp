#include "ctrack/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctrack {

namespace {

// Square-or-wide solver: rows <= cols, every row gets a column.
std::vector<std::size_t> hungarian_rows(std::size_t n, std::size_t m, const std::vector<double>& a) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> solve_assignment(const AssignmentProblem& problem) {
  const std::size_t rows = problem.rows;
  const std::size_t cols = problem.cols;
  if (problem.cost.size() != rows * cols) {
    throw std::invalid_argument("solve_assignment: cost size does not match dimensions");
  }
  if (rows == 0 || cols == 0) return {};

  // Forbidden cells get a penalty larger than any feasible total, which makes
  // the solver maximize cardinality first; penalized pairs are dropped after.
  double lowest = 0.0;
  for (double c : problem.cost) {
    if (std::isnan(c)) throw std::invalid_argument("solve_assignment: NaN cost");
    if (c != kForbidden) lowest = std::min(lowest, c);
  }
  double penalty = 1.0;
  for (double c : problem.cost) {
    if (c != kForbidden) penalty += c - lowest;
  }

  const bool transpose = rows > cols;
  const std::size_t n = transpose ? cols : rows;
  const std::size_t m = transpose ? rows : cols;
  std::vector<double> a(n * m);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = problem.at(r, c);
      const double shifted = v == kForbidden ? penalty : v - lowest;
      if (transpose) {
        a[c * m + r] = shifted;
      } else {
        a[r * m + c] = shifted;
      }
    }
  }

  const auto assigned = hungarian_rows(n, m, a);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = transpose ? assigned[i] : i;
    const std::size_t c = transpose ? i : assigned[i];
    if (problem.at(r, c) != kForbidden) out.emplace_back(r, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ctrack
