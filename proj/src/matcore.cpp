#include "hardy/matcore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hardy {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("matrix entries must be finite");
    }
  }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

// Subtracts the components of r along each accepted row of q (classical form:
// all coefficients are taken from the same r).
void project_out(std::span<Complex> r, const ComplexMatrix& q,
                 const std::vector<std::size_t>& accepted, std::span<Complex> coeff) {
  for (std::size_t a = 0; a < accepted.size(); ++a) coeff[a] = inner(q.row(accepted[a]), r);
  for (std::size_t a = 0; a < accepted.size(); ++a) {
    const auto basis = q.row(accepted[a]);
    for (std::size_t l = 0; l < r.size(); ++l) r[l] -= coeff[a] * basis[l];
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("entry count " + std::to_string(data_.size()) +
                                " does not match shape " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& z : m.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: dimension mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ail = a(i, l);
      if (ail == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
    }
  }
  return out;
}

ComplexMatrix conj_transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

ComplexMatrix antidiagonal_permutation(std::size_t n) {
  if (n == 0) throw std::invalid_argument("antidiagonal_permutation: n must be positive");
  ComplexMatrix f(n, n);
  for (std::size_t i = 0; i < n; ++i) f(i, n - 1 - i) = 1.0;
  return f;
}

double unitarity_residual(const ComplexMatrix& m) {
  if (!m.square()) throw std::invalid_argument("unitarity_residual: matrix must be square");
  const ComplexMatrix g = matmul(m, conj_transpose(m));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
  Complex s{};
  for (std::size_t l = 0; l < a.size(); ++l) s += std::conj(a[l]) * b[l];
  return s;
}

double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVector row_times(std::span<const Complex> v, const ComplexMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("row_times: length mismatch");
  ComplexVector out(m.cols());
  for (std::size_t l = 0; l < m.rows(); ++l) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[l] * m(l, j);
  }
  return out;
}

ComplexVector times_column(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("times_column: length mismatch");
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t l = 0; l < m.cols(); ++l) out[i] += m(i, l) * v[l];
  }
  return out;
}

GramSchmidtOutput gram_schmidt_rows(const ComplexMatrix& m, double tol, CompletionOrder order) {
  if (!m.square()) throw std::invalid_argument("gram_schmidt_rows: matrix must be square");
  if (!(tol > 0.0)) throw std::invalid_argument("gram_schmidt_rows: tol must be positive");
  const std::size_t n = m.rows();

  GramSchmidtOutput out{ComplexMatrix(n, n), 0, {}};
  std::vector<std::size_t> accepted;
  accepted.reserve(n);

  ComplexVector coeff(n);
  auto orthonormalize_into = [&](std::span<Complex> r, std::size_t slot, double threshold) {
    project_out(r, out.q, accepted, coeff);
    project_out(r, out.q, accepted, coeff);
    const double norm = vector_norm(r);
    if (norm < threshold) return false;
    auto dest = out.q.row(slot);
    for (std::size_t l = 0; l < n; ++l) dest[l] = r[l] / norm;
    accepted.push_back(slot);
    return true;
  };

  ComplexVector work(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = m.row(i);
    std::copy(src.begin(), src.end(), work.begin());
    if (!orthonormalize_into(work, i, tol)) {
      out.completed_indices.push_back(i);
    }
  }
  out.rank = accepted.size();

  // Some canonical vector keeps at least 1/sqrt(n) of its norm against a
  // deficient orthonormal set; skipping nearly-spanned candidates keeps the
  // completed rows orthogonal to working precision.
  const double completion_threshold = std::max(tol, 0.5 / std::sqrt(static_cast<double>(n)));
  for (std::size_t slot : out.completed_indices) {
    bool filled = false;
    for (std::size_t step = 0; step < n && !filled; ++step) {
      const std::size_t c = order == CompletionOrder::kCanonical ? step : n - 1 - step;
      std::fill(work.begin(), work.end(), Complex{});
      work[c] = 1.0;
      filled = orthonormalize_into(work, slot, completion_threshold);
    }
    if (!filled) throw std::runtime_error("gram_schmidt_rows: basis completion failed");
  }
  return out;
}

ComplexVector solve_against_block(std::span<const Complex> v, const ComplexMatrix& m,
                                  double reg) {
  if (!m.square()) throw std::invalid_argument("solve_against_block: block must be square");
  if (v.size() != m.rows()) throw std::invalid_argument("solve_against_block: length mismatch");
  if (reg < 0.0) throw std::invalid_argument("solve_against_block: reg must be nonnegative");
  const auto n = static_cast<Eigen::Index>(m.rows());

  // x m = -v  <=>  m^T x^T = -v^T; the penalty rows sqrt(reg) I are stacked below.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2 * n, n);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(2 * n);
  a.topRows(n) = to_eigen(m).transpose();
  a.bottomRows(n) = std::sqrt(reg) * Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) b(j) = -v[static_cast<std::size_t>(j)];

  const Eigen::VectorXcd x = a.completeOrthogonalDecomposition().solve(b);
  return {x.data(), x.data() + x.size()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

}  // namespace hardy
