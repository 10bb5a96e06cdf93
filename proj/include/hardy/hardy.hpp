#pragma once

// Hardy-paradox scenarios over bipartite pure states written as amplitude
// matrices H (entry (i, j) is the amplitude of |ij>). Settings U, V express
// the second measurement of each party; Q = U H V holds the joint amplitudes
// for (A2, B2).
//
// Indices are 0-based in code. Residual labels and printed tables use the
// 1-based outcome numbering of the physics literature.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardy/matcore.hpp"

namespace hardy {

/// Raised when a state does not satisfy the zero-probability pattern that a
/// paradox type demands.
class ConstraintViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParadoxType { kI, kII };

std::string to_string(ParadoxType t);
ParadoxType parse_paradox_type(const std::string& s);

/// Square amplitude matrix with unit Frobenius norm.
class StateMatrix {
 public:
  /// Rejects non-square input and norms further than `tol` from 1.
  static StateMatrix from_amplitudes(ComplexMatrix amplitudes, double tol = 1e-9);
  /// Divides by the Frobenius norm. Rejects the zero matrix.
  static StateMatrix normalized(ComplexMatrix amplitudes);

  std::size_t dim() const { return amplitudes_.rows(); }
  const ComplexMatrix& amplitudes() const { return amplitudes_; }
  Complex operator()(std::size_t i, std::size_t j) const { return amplitudes_(i, j); }

 private:
  explicit StateMatrix(ComplexMatrix m) : amplitudes_(std::move(m)) {}
  ComplexMatrix amplitudes_;
};

/// The decomposition used by both optimality proofs:
///   H = [ h11  h12 ]
///       [ h21  H22 ],   t = first row of H22.
struct Blocks {
  Complex h11;
  ComplexVector h12;  // row, length k-1
  ComplexVector h21;  // column, length k-1
  ComplexVector t;    // row, length k-1
  ComplexMatrix h22;  // (k-1) x (k-1)
};

Blocks block_split(const StateMatrix& h);

struct SettingPair {
  ComplexMatrix u;
  ComplexMatrix v;
};

class ProbabilityTable {
 public:
  ProbabilityTable(ComplexMatrix q);

  std::size_t dim() const { return q_.rows(); }
  const ComplexMatrix& q() const { return q_; }
  double p(std::size_t i, std::size_t j) const { return p_[i * dim() + j]; }
  double total() const;

  /// P(A2 = 1, B2 = 1).
  double type1() const { return p(0, 0); }
  /// P(A2 = 1, B2 = 2).
  double pair12() const { return p(0, 1); }
  /// Sum of p(i, j) over i < j < n (0-based), i.e. outcomes 1 <= i < j <= n.
  double partial(std::size_t n) const;
  /// P(A2 < B2).
  double full_pii() const { return partial(dim()); }

 private:
  ComplexMatrix q_;
  std::vector<double> p_;
};

struct ConstraintReport {
  ParadoxType paradox_type;
  std::vector<std::pair<std::string, double>> residuals;
  double max_residual = 0.0;
};

/// Q = U H V. Throws std::invalid_argument on shape mismatch or settings whose
/// unitarity residual exceeds 1e-8.
ProbabilityTable transform_state(const StateMatrix& h, const SettingPair& s);

// ---- Type-I: P(A1=1,B1=1) = P(A1!=1,B2=1) = P(A2=1,B1!=1) = 0 ----

/// Residuals |h11|, |(UH)(1,i)| and |(HV)(i,1)| for i = 2..k.
ConstraintReport type1_constraint_residuals(const StateMatrix& h, const SettingPair& s);

/// Builds U whose first row annihilates columns 2..k of H and V whose first
/// column annihilates rows 2..k. Among admissible rows the one with the largest
/// real u11 >= 0 is taken (likewise v11); when H22 is invertible it is unique
/// up to phase. The other rows/columns are a deterministic unitary completion.
/// Throws ConstraintViolation when |h11| > h11_tol.
SettingPair type1_settings(const StateMatrix& h, double tol = 1e-10, double h11_tol = 1e-8);

/// P_I = |q11|^2 for the constructed settings.
double type1_probability(const StateMatrix& h, double tol = 1e-10, double h11_tol = 1e-8);

/// |h12 X h21|^2 / ((1 + |h12 X|^2)(1 + |X h21|^2)) with X = H22^{-1} applied
/// through solve_against_block. Valid for invertible H22.
double type1_closed_form(const StateMatrix& h, double reg = 1e-12);

// ---- Type-II: P(B1<A1) = P(A1<B2) = P(A2<B1) = 0 ----

/// Residuals |h(i,j)| for i > j, |(UH)(i,j)| and |(HV)(i,j)| for i < j.
ConstraintReport type2_constraint_residuals(const StateMatrix& h, const SettingPair& s);

/// Only the state part of the Type-II pattern: |h(i,j)| for i > j.
ConstraintReport type2_state_residuals(const StateMatrix& h);

/// V = Orthogonalize[H]^dagger, U = conj(F Orthogonalize[F H^T]). Throws
/// ConstraintViolation when H is not upper-triangular within `triangular_tol`.
SettingPair type2_settings(const StateMatrix& h, double tol = 1e-10,
                           CompletionOrder order = CompletionOrder::kCanonical,
                           double triangular_tol = 1e-8);

ProbabilityTable type2_probabilities(const StateMatrix& h, double tol = 1e-10,
                                     CompletionOrder order = CompletionOrder::kCanonical,
                                     double triangular_tol = 1e-8);

// ---- closed forms ----

/// x y z / ((z + x)(z + y)); 0 when z = 0.
double theorem1_norm_bound(double x, double y, double z);

/// (5 sqrt5 - 11) / 2, evaluated as 2 / (5 sqrt5 + 11) to avoid cancellation.
double analytic_max();

/// a|01> + a|10> + e^{i theta} sqrt(1 - 2a^2) |11>, a^2 = (3 - sqrt5)/2.
StateMatrix derived_optimal_type1_state(double theta);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = |v12|^2 from the constructed V; rhs = the Gram-Schmidt closed form in
/// h11, h12 and t. Throws std::invalid_argument when |t| <= 1e-8.
IdentityCheck v12_formula_check(const StateMatrix& h, double tol = 1e-10);

/// lhs = |q12|, rhs = |u11 h11 v12|.
IdentityCheck q12_identity_check(const StateMatrix& h, double tol = 1e-10);

}  // namespace hardy
