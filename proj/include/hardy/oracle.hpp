#pragma once

// Brute-force baselines for the analytic ceilings. Everything here evaluates
// states through the hardy module only, so a bug in the optimizer cannot
// validate itself.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardy/hardy.hpp"

namespace hardy::oracle {

/// What a sampling run measures. Type-I states always report P_I.
struct Quantity {
  enum class Kind { kTypeI, kPair12, kPartialSum, kFullPII } kind = Kind::kTypeI;
  std::size_t n = 0;  // partial-sum order

  std::string label() const;
};

struct OracleReport {
  std::string method;  // "grid", "exhaustive" or "sampling"
  ParadoxType paradox_type = ParadoxType::kI;
  std::size_t dim = 0;
  std::string quantity;
  std::size_t resolution_or_samples = 0;
  double best_value = 0.0;
  std::vector<double> best_point;
  std::string best_point_description;
  std::optional<std::uint64_t> seed;
};

/// Maximizes x y z / ((z + x)(z + y)) over the grid {(i, j, N - i - j) / N}.
/// Ties keep the lexicographically smallest (i, j).
OracleReport grid_maximize_norm_bound(std::size_t resolution, std::size_t threads = 0);

/// Draws states uniformly from the unit sphere of the real amplitudes allowed
/// by the paradox type's pattern and evaluates the quantity exactly. Samples
/// are drawn in fixed chunks, each with its own generator seeded by
/// (seed, chunk), so output is independent of the thread count.
OracleReport random_state_sampling(ParadoxType type, std::size_t dim, std::size_t samples,
                                   std::uint64_t seed, Quantity quantity = {},
                                   std::size_t threads = 0);

/// Grids the positive octant of the 2-sphere of (|h12|, |h21|, |h22|) with
/// `resolution` steps per angle and evaluates P_I of [[0, h12], [h21, h22]].
OracleReport exhaustive_type1_dim2(std::size_t resolution, std::size_t threads = 0);

}  // namespace hardy::oracle
