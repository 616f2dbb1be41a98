#include "fdra/mapping3d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fdra/rng.hpp"

namespace fdra {

RateTensor::RateTensor(int M_, int N_, int K_, double fill)
    : M(M_), N(N_), K(K_) {
  if (M < 1 || N < 1 || K < 1)
    throw std::invalid_argument("RateTensor: M, N, K must be >= 1");
  data.assign(static_cast<std::size_t>(M) * N * K, fill);
}

void RateTensor::validate() const {
  if (M < 1 || N < 1 || K < 1 ||
      data.size() != static_cast<std::size_t>(M) * N * K)
    throw std::invalid_argument("RateTensor: inconsistent dimensions");
  for (double r : data)
    if (!std::isfinite(r) || r < 0.0)
      throw std::invalid_argument("RateTensor: entries must be finite, >= 0");
}

namespace {

void require_consistent(const RateTensor& rates, const Assignment3D& a) {
  if (!satisfies_c4(a, rates.M, rates.N, rates.K))
    throw std::invalid_argument(
        "mapping3d: assignment violates the mapping constraints");
}

bool relaxed_mode(const RateTensor& rates) {
  return rates.K > std::min(rates.M, rates.N);
}

}  // namespace

Reduced2D reduce_to_2d(const RateTensor& rates, const Assignment3D& current,
                       DecompositionMode mode) {
  require_consistent(rates, current);
  Reduced2D red;
  red.mode = mode;
  red.M = rates.M;
  red.N = rates.N;
  red.K = rates.K;

  switch (mode) {
    case DecompositionMode::kPairMNvsK: {
      std::set<std::pair<int, int>> pairs;
      for (const Triple& t : current.triples()) pairs.insert({t.m, t.n});
      red.row_keys.assign(pairs.begin(), pairs.end());
      red.rewards = RewardMatrix(static_cast<int>(red.row_keys.size()), rates.K);
      for (int d = 0; d < red.rewards.rows; ++d)
        for (int k = 0; k < rates.K; ++k)
          red.rewards.at(d, k) =
              rates.at(red.row_keys[d].first, red.row_keys[d].second, k);
      break;
    }
    case DecompositionMode::kPairMKvsN: {
      for (const Triple& t : current.triples()) red.row_keys.push_back({t.m, t.k});
      std::sort(red.row_keys.begin(), red.row_keys.end());
      red.rewards = RewardMatrix(static_cast<int>(red.row_keys.size()), rates.N);
      for (int d = 0; d < red.rewards.rows; ++d)
        for (int n = 0; n < rates.N; ++n)
          red.rewards.at(d, n) =
              rates.at(red.row_keys[d].first, n, red.row_keys[d].second);
      break;
    }
    case DecompositionMode::kPairNKvsM: {
      for (const Triple& t : current.triples()) red.row_keys.push_back({t.n, t.k});
      std::sort(red.row_keys.begin(), red.row_keys.end());
      red.rewards = RewardMatrix(static_cast<int>(red.row_keys.size()), rates.M);
      for (int d = 0; d < red.rewards.rows; ++d)
        for (int m = 0; m < rates.M; ++m)
          red.rewards.at(d, m) =
              rates.at(m, red.row_keys[d].first, red.row_keys[d].second);
      break;
    }
  }
  return red;
}

Assignment3D assignment_from_2d(const Reduced2D& red,
                                const Assignment2D& match) {
  if (match.col_of_row.size() != red.row_keys.size())
    throw std::invalid_argument("assignment_from_2d: row count mismatch");
  Assignment3D out;
  for (std::size_t d = 0; d < red.row_keys.size(); ++d) {
    const int c = match.col_of_row[d];
    if (c < 0) continue;
    const auto [a, b] = red.row_keys[d];
    switch (red.mode) {
      case DecompositionMode::kPairMNvsK: out.add({a, b, c}); break;
      case DecompositionMode::kPairMKvsN: out.add({a, c, b}); break;
      case DecompositionMode::kPairNKvsM: out.add({c, a, b}); break;
    }
  }
  return out;
}

double mapping_value(const RateTensor& rates, const Assignment3D& a) {
  double sum = 0.0;
  for (const Triple& t : a.triples()) sum += rates.at(t.m, t.n, t.k);
  return sum;
}

namespace {

// Relaxed-mode subproblem solution: the replicated-row rectangular
// Hungarian collapses to an independent argmax per subchannel-bearing
// line, since every user-side row may be copied once per subchannel it
// could serve. Ties go to the lowest index.
Assignment3D solve_relaxed(const Reduced2D& red) {
  Assignment3D out;
  if (red.mode == DecompositionMode::kPairMNvsK) {
    // Columns are subchannels; pick the best frozen pair for each.
    for (int k = 0; k < red.rewards.cols; ++k) {
      int best = 0;
      for (int d = 1; d < red.rewards.rows; ++d)
        if (red.rewards.at(d, k) > red.rewards.at(best, k)) best = d;
      out.add({red.row_keys[best].first, red.row_keys[best].second, k});
    }
  } else {
    // Rows carry subchannels; pick the best free user for each.
    for (int d = 0; d < red.rewards.rows; ++d) {
      int best = 0;
      for (int c = 1; c < red.rewards.cols; ++c)
        if (red.rewards.at(d, c) > red.rewards.at(d, best)) best = c;
      const auto [a, b] = red.row_keys[d];
      if (red.mode == DecompositionMode::kPairMKvsN)
        out.add({a, best, b});
      else
        out.add({best, a, b});
    }
  }
  return out;
}

}  // namespace

Assignment3D iterative_hungarian_3d(const RateTensor& rates,
                                    const Assignment3D& initial,
                                    int iterations) {
  rates.validate();
  require_consistent(rates, initial);
  if (iterations < 0)
    throw std::invalid_argument("iterative_hungarian_3d: negative iterations");

  static constexpr DecompositionMode kCycle[3] = {
      DecompositionMode::kPairMNvsK, DecompositionMode::kPairMKvsN,
      DecompositionMode::kPairNKvsM};

  Assignment3D current = initial;
  double value = mapping_value(rates, current);
  int stale = 0;
  for (int it = 0; it < iterations; ++it) {
    const Reduced2D red = reduce_to_2d(rates, current, kCycle[it % 3]);
    Assignment3D candidate;
    if (relaxed_mode(rates)) {
      candidate = solve_relaxed(red);
    } else {
      candidate = assignment_from_2d(red, solve_max_assignment(red.rewards).first);
    }
    const double cand_value = mapping_value(rates, candidate);
    if (cand_value > value) {
      current = std::move(candidate);
      value = cand_value;
      stale = 0;
    } else if (++stale >= 3) {
      break;  // a full mode cycle without improvement is a fixed point
    }
  }
  return current;
}

std::pair<Assignment3D, double> exhaustive_3d(const RateTensor& rates) {
  rates.validate();
  if (rates.M != rates.N || rates.N != rates.K)
    throw std::invalid_argument("exhaustive_3d: requires M == N == K");
  const int S = rates.K;
  if (S > 8)
    throw std::length_error("exhaustive_3d: K > 8 is intractable");

  std::vector<int> pi(S), rho(S);
  std::iota(pi.begin(), pi.end(), 0);
  double best_value = -1.0;
  std::vector<int> best_pi, best_rho;
  do {
    std::iota(rho.begin(), rho.end(), 0);
    do {
      double v = 0.0;
      for (int m = 0; m < S; ++m) v += rates.at(m, pi[m], rho[m]);
      if (v > best_value) {
        best_value = v;
        best_pi = pi;
        best_rho = rho;
      }
    } while (std::next_permutation(rho.begin(), rho.end()));
  } while (std::next_permutation(pi.begin(), pi.end()));

  Assignment3D a;
  for (int m = 0; m < S; ++m) a.add({m, best_pi[m], best_rho[m]});
  return {a, best_value};
}

Assignment3D random_3d(const RateTensor& rates, std::uint64_t seed) {
  rates.validate();
  Rng rng(derive_seed(seed, 0x3d5eed));
  Assignment3D a;
  if (relaxed_mode(rates)) {
    // Uniform over "one pair per subchannel" mappings.
    for (int k = 0; k < rates.K; ++k) {
      const int m = static_cast<int>(rng.bounded(rates.M));
      const int n = static_cast<int>(rng.bounded(rates.N));
      a.add({m, n, k});
    }
  } else {
    // Uniform injections of subchannels into UUEs and DUEs (permutations
    // in square mode), via partial Fisher-Yates shuffles.
    auto arrangement = [&](int size, int take) {
      std::vector<int> v(size);
      std::iota(v.begin(), v.end(), 0);
      for (int i = 0; i < take; ++i) {
        const int j = i + static_cast<int>(rng.bounded(size - i));
        std::swap(v[i], v[j]);
      }
      v.resize(take);
      return v;
    };
    const std::vector<int> ms = arrangement(rates.M, rates.K);
    const std::vector<int> ns = arrangement(rates.N, rates.K);
    for (int k = 0; k < rates.K; ++k) a.add({ms[k], ns[k], k});
  }
  return a;
}

Assignment3D greedy_3d(const RateTensor& rates) {
  rates.validate();
  const bool relaxed = relaxed_mode(rates);
  std::vector<char> n_used(rates.N, 0), k_used(rates.K, 0);
  Assignment3D a;
  for (int step = 0; step < rates.K; ++step) {
    const int m = step % rates.M;
    int best_n = -1, best_k = -1;
    double best = -1.0;
    for (int n = 0; n < rates.N; ++n) {
      if (!relaxed && n_used[n]) continue;
      for (int k = 0; k < rates.K; ++k) {
        if (k_used[k]) continue;
        if (rates.at(m, n, k) > best) {
          best = rates.at(m, n, k);
          best_n = n;
          best_k = k;
        }
      }
    }
    a.add({m, best_n, best_k});
    k_used[best_k] = 1;
    if (!relaxed) n_used[best_n] = 1;
  }
  return a;
}

}  // namespace fdra
