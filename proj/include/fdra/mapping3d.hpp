#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fdra/hungarian.hpp"
#include "fdra/model.hpp"

namespace fdra {

/// Fixed per-triple rates R[m][n][k], the coefficients of the binary
/// assignment objective.
struct RateTensor {
  int M = 0;
  int N = 0;
  int K = 0;
  std::vector<double> data;

  RateTensor() = default;
  RateTensor(int M_, int N_, int K_, double fill = 0.0);

  double& at(int m, int n, int k) {
    return data[(static_cast<std::size_t>(m) * N + n) * K + k];
  }
  double at(int m, int n, int k) const {
    return data[(static_cast<std::size_t>(m) * N + n) * K + k];
  }

  /// Throws std::invalid_argument unless all entries are finite and >= 0.
  void validate() const;
};

/// The three 2D subproblems the 3D mapping decomposes into: freeze two of
/// the three index sets as joint pairs and reassign the third.
enum class DecompositionMode {
  kPairMNvsK,  ///< frozen (m,n) pairs against subchannels
  kPairMKvsN,  ///< frozen (m,k) pairs against DUEs
  kPairNKvsM,  ///< frozen (n,k) pairs against UUEs
};

/// A 2D reduction of the tensor under one decomposition mode. row_keys[d]
/// holds the frozen pair behind row d: (m,n), (m,k) or (n,k) depending on
/// the mode. Columns index the free dimension (k, n or m).
struct Reduced2D {
  RewardMatrix rewards;
  DecompositionMode mode = DecompositionMode::kPairMNvsK;
  std::vector<std::pair<int, int>> row_keys;
  int M = 0;
  int N = 0;
  int K = 0;
};

/// Builds the 2D reward matrix for `mode`, freezing pairs from `current`.
/// Throws std::invalid_argument when `current` violates the mapping
/// constraints for the tensor's dimensions.
Reduced2D reduce_to_2d(const RateTensor& rates, const Assignment3D& current,
                       DecompositionMode mode);

/// Back-maps a 2D matching on a reduction to the 3D triples it encodes.
Assignment3D assignment_from_2d(const Reduced2D& red, const Assignment2D& match);

/// Objective value of a mapping under fixed rates.
double mapping_value(const RateTensor& rates, const Assignment3D& a);

/// Iterative 2D-Hungarian heuristic for the 3D assignment. Cycles the three
/// decomposition modes in order for `iterations` steps, keeping a candidate
/// only when it strictly improves the objective; stops early once a full
/// mode cycle yields no improvement. The objective is nondecreasing across
/// iterations. When K > min(M,N) each subchannel still gets exactly one
/// frozen pair but users may serve several subchannels; that subproblem is
/// solved as the rectangular Hungarian with the user side replicated per
/// subchannel, which reduces to an argmax per subchannel line.
Assignment3D iterative_hungarian_3d(const RateTensor& rates,
                                    const Assignment3D& initial,
                                    int iterations = 5);

/// Global optimum by enumerating permutation pairs (n = pi(m), k = rho(m)).
/// Square instances only; throws std::length_error for K > 8.
std::pair<Assignment3D, double> exhaustive_3d(const RateTensor& rates);

/// Uniformly random feasible mapping; deterministic for a fixed seed.
Assignment3D random_3d(const RateTensor& rates, std::uint64_t seed);

/// UUEs pick in index order; each takes the best still-available
/// (DUE, subchannel) cell. Used DUEs and subchannels are consumed; when
/// K > min(M,N) only subchannels are consumed and UUEs cycle round-robin.
Assignment3D greedy_3d(const RateTensor& rates);

}  // namespace fdra
