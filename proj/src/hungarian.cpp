#include "fdra/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdra {

RewardMatrix::RewardMatrix(int r, int c, double fill)
    : rows(r), cols(c) {
  if (r < 1 || c < 1)
    throw std::invalid_argument("RewardMatrix: rows and cols must be >= 1");
  data.assign(static_cast<std::size_t>(r) * c, fill);
}

namespace {

// Square Jonker-Volgenant style Hungarian, minimization, O(n^3).
// Potentials u/v, p[j] = row matched to column j, 1-indexed with column 0
// as the virtual start of each augmenting search. Rows are inserted in
// ascending order, which fixes the tie-break among equal-cost matchings.
std::vector<int> solve_min_square(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
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
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of_row(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] >= 1) col_of_row[p[j] - 1] = j - 1;
  return col_of_row;
}

}  // namespace

std::pair<Assignment2D, double> solve_max_assignment(
    const RewardMatrix& rewards) {
  const int R = rewards.rows;
  const int C = rewards.cols;
  if (R < 1 || C < 1)
    throw std::invalid_argument("solve_max_assignment: empty matrix");
  double min_entry = rewards.data[0];
  for (double r : rewards.data) {
    if (!std::isfinite(r))
      throw std::domain_error("solve_max_assignment: non-finite reward");
    min_entry = std::min(min_entry, r);
  }

  // Pad square; all dummy cells share one reward, so their contribution to
  // any perfect matching is a constant and real matches stay optimal.
  const int S = std::max(R, C);
  const double dummy = min_entry - 1.0;
  std::vector<std::vector<double>> cost(S, std::vector<double>(S, -dummy));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) cost[i][j] = -rewards.at(i, j);

  const std::vector<int> match = solve_min_square(cost);

  Assignment2D out;
  out.col_of_row.assign(R, -1);
  double total = 0.0;
  for (int i = 0; i < R; ++i) {
    const int j = match[i];
    if (j >= 0 && j < C) {
      out.col_of_row[i] = j;
      total += rewards.at(i, j);
    }
  }
  return {out, total};
}

}  // namespace fdra
