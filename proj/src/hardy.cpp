#include "hardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hardy {

namespace {

constexpr double kSettingUnitarityTol = 1e-8;

std::string label(const char* name, std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << name << '(' << i + 1 << ',' << j + 1 << ')';
  return os.str();
}

void finish(ConstraintReport& r) {
  r.max_residual = 0.0;
  for (const auto& [name, value] : r.residuals) r.max_residual = std::max(r.max_residual, value);
}

void require_same_dim(const StateMatrix& h, const SettingPair& s) {
  const std::size_t k = h.dim();
  if (s.u.rows() != k || s.u.cols() != k || s.v.rows() != k || s.v.cols() != k) {
    throw std::invalid_argument("settings do not match the state dimension");
  }
}

// Row-stacks conj(column j) of H for j >= 1, then e1. The last Gram-Schmidt
// row is the normalized projection of e1 onto the common null space.
ComplexMatrix annihilator_stack(const ComplexMatrix& vectors_as_rows) {
  const std::size_t k = vectors_as_rows.cols();
  ComplexMatrix stack(k, k);
  for (std::size_t r = 0; r + 1 < k; ++r) {
    for (std::size_t l = 0; l < k; ++l) stack(r, l) = std::conj(vectors_as_rows(r, l));
  }
  stack(k - 1, 0) = 1.0;
  return stack;
}

// Moves the last row of q to the front.
ComplexMatrix rotate_last_row_first(const ComplexMatrix& q) {
  const std::size_t k = q.rows();
  ComplexMatrix out(k, k);
  for (std::size_t l = 0; l < k; ++l) out(0, l) = q(k - 1, l);
  for (std::size_t r = 0; r + 1 < k; ++r) {
    for (std::size_t l = 0; l < k; ++l) out(r + 1, l) = q(r, l);
  }
  return out;
}

double max_below_diagonal(const StateMatrix& h) {
  double worst = 0.0;
  for (std::size_t i = 1; i < h.dim(); ++i) {
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::norm(h(i, j)));
  }
  return std::sqrt(worst);
}

// The constructions below produce unitary settings to working precision, so
// the public unitarity check in transform_state is skipped on this path.
ProbabilityTable constructed_table(const StateMatrix& h, const SettingPair& s) {
  return ProbabilityTable(s.u * h.amplitudes() * s.v);
}

void require_type1_state(const StateMatrix& h, double h11_tol) {
  if (h.dim() < 2) throw std::invalid_argument("Type-I settings need dimension >= 2");
  if (std::abs(h(0, 0)) > h11_tol) {
    std::ostringstream os;
    os << "not a Type-I state: |h(1,1)| = " << std::abs(h(0, 0)) << " exceeds " << h11_tol;
    throw ConstraintViolation(os.str());
  }
}

}  // namespace

std::string to_string(ParadoxType t) { return t == ParadoxType::kI ? "I" : "II"; }

ParadoxType parse_paradox_type(const std::string& s) {
  if (s == "I" || s == "1") return ParadoxType::kI;
  if (s == "II" || s == "2") return ParadoxType::kII;
  throw std::invalid_argument("unknown paradox type '" + s + "' (expected I or II)");
}

StateMatrix StateMatrix::from_amplitudes(ComplexMatrix amplitudes, double tol) {
  if (!amplitudes.square() || amplitudes.rows() == 0) {
    throw std::invalid_argument("state matrix must be square and non-empty");
  }
  const double norm = frobenius_norm(amplitudes);
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "state norm " << norm << " differs from 1 by more than " << tol;
    throw std::invalid_argument(os.str());
  }
  return StateMatrix(std::move(amplitudes));
}

StateMatrix StateMatrix::normalized(ComplexMatrix amplitudes) {
  if (!amplitudes.square() || amplitudes.rows() == 0) {
    throw std::invalid_argument("state matrix must be square and non-empty");
  }
  const double norm = frobenius_norm(amplitudes);
  if (norm == 0.0) throw std::invalid_argument("cannot normalize the zero matrix");
  amplitudes *= 1.0 / norm;
  return StateMatrix(std::move(amplitudes));
}

Blocks block_split(const StateMatrix& h) {
  const std::size_t k = h.dim();
  if (k < 2) throw std::invalid_argument("block_split needs dimension >= 2");
  Blocks b{h(0, 0), ComplexVector(k - 1), ComplexVector(k - 1), ComplexVector(k - 1),
           ComplexMatrix(k - 1, k - 1)};
  for (std::size_t j = 1; j < k; ++j) {
    b.h12[j - 1] = h(0, j);
    b.h21[j - 1] = h(j, 0);
    b.t[j - 1] = h(1, j);
    for (std::size_t i = 1; i < k; ++i) b.h22(i - 1, j - 1) = h(i, j);
  }
  return b;
}

ProbabilityTable::ProbabilityTable(ComplexMatrix q) : q_(std::move(q)) {
  if (!q_.square()) throw std::invalid_argument("probability table needs a square Q");
  p_.reserve(q_.rows() * q_.cols());
  for (const auto& z : q_.entries()) p_.push_back(std::norm(z));
}

double ProbabilityTable::total() const {
  double s = 0.0;
  for (double x : p_) s += x;
  return s;
}

double ProbabilityTable::partial(std::size_t n) const {
  if (n > dim()) throw std::invalid_argument("partial sum order exceeds dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += p(i, j);
  }
  return s;
}

ProbabilityTable transform_state(const StateMatrix& h, const SettingPair& s) {
  require_same_dim(h, s);
  const double ru = unitarity_residual(s.u);
  const double rv = unitarity_residual(s.v);
  if (ru > kSettingUnitarityTol || rv > kSettingUnitarityTol) {
    std::ostringstream os;
    os << "settings are not unitary (residuals " << ru << ", " << rv << ")";
    throw std::invalid_argument(os.str());
  }
  return ProbabilityTable(s.u * h.amplitudes() * s.v);
}

ConstraintReport type1_constraint_residuals(const StateMatrix& h, const SettingPair& s) {
  require_same_dim(h, s);
  const std::size_t k = h.dim();
  const ComplexMatrix hu = s.u * h.amplitudes();
  const ComplexMatrix hv = h.amplitudes() * s.v;
  ConstraintReport r{ParadoxType::kI, {}, 0.0};
  r.residuals.emplace_back("h11", std::abs(h(0, 0)));
  for (std::size_t i = 1; i < k; ++i) r.residuals.emplace_back(label("h'", 0, i), std::abs(hu(0, i)));
  for (std::size_t i = 1; i < k; ++i) r.residuals.emplace_back(label("h''", i, 0), std::abs(hv(i, 0)));
  finish(r);
  return r;
}

SettingPair type1_settings(const StateMatrix& h, double tol, double h11_tol) {
  require_type1_state(h, h11_tol);
  const ComplexMatrix& amp = h.amplitudes();

  // u H e_j = 0 for j >= 2  <=>  u is orthogonal to conj(column j).
  const ComplexMatrix columns = amp.transpose();
  ComplexMatrix shifted_columns(amp.rows(), amp.cols());
  for (std::size_t r = 0; r + 1 < amp.rows(); ++r) {
    for (std::size_t l = 0; l < amp.cols(); ++l) shifted_columns(r, l) = columns(r + 1, l);
  }
  const ComplexMatrix u = rotate_last_row_first(gram_schmidt_rows(annihilator_stack(shifted_columns), tol).q);

  // e_i^T H v = 0 for i >= 2  <=>  v is orthogonal to conj(row i).
  ComplexMatrix shifted_rows(amp.rows(), amp.cols());
  for (std::size_t r = 0; r + 1 < amp.rows(); ++r) {
    for (std::size_t l = 0; l < amp.cols(); ++l) shifted_rows(r, l) = amp(r + 1, l);
  }
  const ComplexMatrix w = rotate_last_row_first(gram_schmidt_rows(annihilator_stack(shifted_rows), tol).q);

  return {u, w.transpose()};
}

double type1_probability(const StateMatrix& h, double tol, double h11_tol) {
  return constructed_table(h, type1_settings(h, tol, h11_tol)).type1();
}

double type1_closed_form(const StateMatrix& h, double reg) {
  const Blocks b = block_split(h);
  // x = -h12 H22^{-1};  y = -(H22^{-1} h21)^T.
  const ComplexVector x = solve_against_block(b.h12, b.h22, reg);
  const ComplexVector y = solve_against_block(b.h21, b.h22.transpose(), reg);
  Complex num{};
  for (std::size_t l = 0; l < x.size(); ++l) num += x[l] * b.h21[l];
  const double nx = vector_norm(x);
  const double ny = vector_norm(y);
  return std::norm(num) / ((1.0 + nx * nx) * (1.0 + ny * ny));
}

ConstraintReport type2_state_residuals(const StateMatrix& h) {
  const std::size_t k = h.dim();
  ConstraintReport r{ParadoxType::kII, {}, 0.0};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) r.residuals.emplace_back(label("h", i, j), std::abs(h(i, j)));
  }
  finish(r);
  return r;
}

ConstraintReport type2_constraint_residuals(const StateMatrix& h, const SettingPair& s) {
  require_same_dim(h, s);
  const std::size_t k = h.dim();
  ConstraintReport r = type2_state_residuals(h);
  const ComplexMatrix hu = s.u * h.amplitudes();
  const ComplexMatrix hv = h.amplitudes() * s.v;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) r.residuals.emplace_back(label("h'", i, j), std::abs(hu(i, j)));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) r.residuals.emplace_back(label("h''", i, j), std::abs(hv(i, j)));
  }
  finish(r);
  return r;
}

SettingPair type2_settings(const StateMatrix& h, double tol, CompletionOrder order,
                           double triangular_tol) {
  const double below = max_below_diagonal(h);
  if (below > triangular_tol) {
    std::ostringstream os;
    os << "not a Type-II state: below-diagonal amplitudes up to " << below;
    throw ConstraintViolation(os.str());
  }
  const std::size_t k = h.dim();
  const ComplexMatrix v = conj_transpose(gram_schmidt_rows(h.amplitudes(), tol, order).q);

  // F H^T: row r is column k-1-r of H. U = conj(F G) reverses the rows of G.
  ComplexMatrix flipped(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t l = 0; l < k; ++l) flipped(r, l) = h(l, k - 1 - r);
  }
  const ComplexMatrix g = gram_schmidt_rows(flipped, tol, order).q;
  ComplexMatrix u(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t l = 0; l < k; ++l) u(r, l) = std::conj(g(k - 1 - r, l));
  }
  return {u, v};
}

ProbabilityTable type2_probabilities(const StateMatrix& h, double tol, CompletionOrder order,
                                     double triangular_tol) {
  return constructed_table(h, type2_settings(h, tol, order, triangular_tol));
}

double theorem1_norm_bound(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0) {
    throw std::invalid_argument("theorem1_norm_bound: arguments must be nonnegative");
  }
  if (z == 0.0) return 0.0;
  return x * y * z / ((z + x) * (z + y));
}

double analytic_max() { return 2.0 / (5.0 * std::sqrt(5.0) + 11.0); }

StateMatrix derived_optimal_type1_state(double theta) {
  const double a = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);
  const double c = std::sqrt(1.0 - 2.0 * a * a);
  ComplexMatrix m{{0.0, a}, {a, std::polar(c, theta)}};
  return StateMatrix::from_amplitudes(std::move(m), 1e-12);
}

IdentityCheck v12_formula_check(const StateMatrix& h, double tol) {
  const Blocks b = block_split(h);
  const double t_norm = vector_norm(b.t);
  if (t_norm <= 1e-8) throw std::invalid_argument("v12_formula_check: |t| is degenerate");
  const SettingPair s = type2_settings(h, tol);

  const double h11sq = std::norm(b.h11);
  const double h12sq = std::pow(vector_norm(b.h12), 2);
  const double overlap = std::norm(inner(b.h12, b.t));
  const double head = h11sq + h12sq;
  const double rhs = h11sq * overlap / (head * head * t_norm * t_norm - head * overlap);
  return {std::norm(s.v(0, 1)), rhs};
}

IdentityCheck q12_identity_check(const StateMatrix& h, double tol) {
  if (h.dim() < 2) throw std::invalid_argument("q12_identity_check needs dimension >= 2");
  const SettingPair s = type2_settings(h, tol);
  const ProbabilityTable table = transform_state(h, s);
  return {std::abs(table.q()(0, 1)), std::abs(s.u(0, 0) * h(0, 0) * s.v(0, 1))};
}

}  // namespace hardy
