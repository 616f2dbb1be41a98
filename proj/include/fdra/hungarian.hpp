#pragma once

#include <utility>
#include <vector>

namespace fdra {

/// Dense reward matrix, row major.
struct RewardMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  RewardMatrix() = default;
  RewardMatrix(int r, int c, double fill = 0.0);

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Row -> column matching; -1 marks an unmatched row.
struct Assignment2D {
  std::vector<int> col_of_row;
};

/// Maximum-reward assignment on a rectangular matrix. Every column is
/// matched at most once; when rows <= cols every row is matched, otherwise
/// every column is. Internally the matrix is padded square with a reward of
/// (min entry - 1) on dummy cells and solved as a minimization problem on
/// negated rewards; dummy matches are stripped from the result.
///
/// Throws std::invalid_argument on an empty matrix, std::domain_error on a
/// non-finite entry. Deterministic for a fixed input.
std::pair<Assignment2D, double> solve_max_assignment(const RewardMatrix& rewards);

}  // namespace fdra
