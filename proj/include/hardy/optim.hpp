#pragma once

// Maximization of Hardy probabilities over constrained state matrices:
// parametrization, multi-start Nelder-Mead, dimension scans and optimality
// diagnostics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/hardy.hpp"

namespace hardy::optim {

enum class ObjectiveKind { kTypeI, kPair12, kPartialSum, kFullPII };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kTypeI;
  /// Only meaningful for kPartialSum.
  std::size_t target_n = 0;

  /// "P_I", "pair12", "partial_sum" or "full_PII".
  std::string name() const;
  /// name() plus the order for partial sums, e.g. "partial_sum(3)".
  std::string label() const;
  ParadoxType paradox_type() const;

  static Objective type1() { return {ObjectiveKind::kTypeI, 0}; }
  static Objective pair12() { return {ObjectiveKind::kPair12, 0}; }
  static Objective partial_sum(std::size_t n) { return {ObjectiveKind::kPartialSum, n}; }
  static Objective full_pii() { return {ObjectiveKind::kFullPII, 0}; }
  /// Parses the names produced by name(); target_n is applied to partial_sum.
  static Objective parse(const std::string& name, std::size_t target_n);
};

/// Evaluates the objective through the hardy module constructions. `tol` is
/// the Gram-Schmidt dependence threshold.
double evaluate(const Objective& objective, const StateMatrix& h, double tol = 1e-10);

/// Analytic ceiling (P_I and pair12 only).
std::optional<double> analytic_bound(const Objective& objective);

enum class Mode { kRealNonnegative, kComplex };

std::string to_string(Mode m);

/// Maps an unconstrained real parameter vector onto states obeying a paradox
/// type's amplitude pattern. Magnitudes are |p| / |p_magnitudes|; complex mode
/// appends one phase per slot except the first, whose phase stays 0.
class Parametrization {
 public:
  Parametrization(ParadoxType type, std::size_t dim, Mode mode = Mode::kRealNonnegative);

  ParadoxType paradox_type() const { return type_; }
  std::size_t dim() const { return dim_; }
  Mode mode() const { return mode_; }
  std::size_t slot_count() const { return slots_.size(); }
  std::size_t free_parameters() const;
  /// 0-based (row, col) of each amplitude slot, row-major.
  const std::vector<std::pair<std::size_t, std::size_t>>& slots() const { return slots_; }

  /// Throws std::invalid_argument for a wrong length or all-zero magnitudes.
  StateMatrix embed(std::span<const double> params) const;

 private:
  ParadoxType type_;
  std::size_t dim_;
  Mode mode_;
  std::vector<std::pair<std::size_t, std::size_t>> slots_;
};

struct OptimizationConfig {
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 20000;
  /// Convergence threshold on the spread of objective values in the simplex.
  double tolerance = 1e-12;
  double initial_scale = 0.3;
  /// Worker threads; 0 picks hardware concurrency. Does not affect results.
  std::size_t threads = 0;
  /// Gram-Schmidt dependence threshold used by the objective.
  double gs_tol = 1e-10;
};

struct OptimizationResult {
  Objective objective;
  ParadoxType paradox_type = ParadoxType::kI;
  Mode mode = Mode::kRealNonnegative;
  std::size_t dim = 0;
  double best_value = 0.0;
  StateMatrix best_state = StateMatrix::normalized(ComplexMatrix::identity(1));
  std::optional<double> bound;
  std::size_t restarts_used = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  double wall_ms = 0.0;
};

struct LocalSearchResult {
  std::vector<double> x;
  double value = 0.0;  // of the maximized function
  std::size_t iterations = 0;
  bool converged = false;
};

/// Nelder-Mead maximization of f from x0. On convergence the simplex is rebuilt
/// around the best vertex at the initial scale; the search stops
/// once a rebuild fails to improve by more than `tolerance` or the iteration
/// budget runs out.
template <class F>
LocalSearchResult nelder_mead_maximize(F&& f, std::vector<double> x0, double scale,
                                       std::size_t max_iterations, double tolerance);

/// Multi-start maximization. Restart r draws its start from a generator seeded
/// with (seed, r), so results do not depend on thread scheduling and a larger
/// restart budget only adds candidates. Ties go to the lower restart index.
OptimizationResult maximize(const Objective& objective, const Parametrization& p,
                            const OptimizationConfig& cfg);

struct ScanRow {
  std::size_t dim = 0;
  double best_value = 0.0;
  double deviation = 0.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  double wall_ms = 0.0;
  OptimizationResult result;
};

struct ScanReport {
  Objective objective;
  std::size_t target_n = 0;
  double reference_value = 0.0;
  std::vector<ScanRow> rows;  // ascending dim
};

/// One maximize per dimension (Type-II objectives in real mode unless `mode`
/// says otherwise). The reference is the best value at dim == target_n; it is
/// computed separately when that dimension is not in the range. Dimensions
/// >= 6 get at least 256 restarts. For full_PII the objective grows with the
/// dimension, and the reference is simply the first row.
ScanReport scan_dimensions(const Objective& objective, std::size_t target_n, std::size_t dim_lo,
                           std::size_t dim_hi, const OptimizationConfig& cfg,
                           Mode mode = Mode::kRealNonnegative);

struct StandardFormReport {
  bool rank_ok = false;
  bool value_ok = false;
  std::vector<double> singular_values;
  std::size_t numerical_rank = 0;
};

/// Rank of the optimal state (singular values above `tol`) against target_n,
/// and its value against the dim == target_n reference.
StandardFormReport standard_form_check(const OptimizationResult& r, std::size_t target_n,
                                       double reference_value, double tol = 1e-4,
                                       double value_tol = 2e-4);

/// Norm of the central-difference gradient of the objective with respect to
/// the real and imaginary parts of every free amplitude of h, projected onto
/// the tangent space of the unit sphere. Throws std::invalid_argument when
/// step <= 0.
double finite_difference_probe(const Objective& objective, const StateMatrix& h, double step,
                               double tol = 1e-10);

}  // namespace hardy::optim

#include "hardy/nelder_mead.ipp"
