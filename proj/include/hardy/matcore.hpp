#pragma once

// Small dense complex matrices: products, norms, row Gram-Schmidt with basis
// completion, and the regularized block solve used by the Type-I analysis.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Row-major dense complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  ComplexVector column(std::size_t j) const;

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;

  ComplexMatrix& operator*=(Complex s);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double frobenius_norm(const ComplexMatrix& m);

/// Throws std::invalid_argument when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexMatrix conj_transpose(const ComplexMatrix& m);

/// F with F(i, n-1-i) = 1. Unitary and an involution.
ComplexMatrix antidiagonal_permutation(std::size_t n);

/// Largest entry of |m m^dagger - I|.
double unitarity_residual(const ComplexMatrix& m);

/// Hermitian inner product sum_l conj(a_l) b_l.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double vector_norm(std::span<const Complex> v);

// Row vector times matrix.
ComplexVector row_times(std::span<const Complex> v, const ComplexMatrix& m);
// Matrix times column vector.
ComplexVector times_column(const ComplexMatrix& m, std::span<const Complex> v);

enum class CompletionOrder { kCanonical, kReversed };

struct GramSchmidtOutput {
  ComplexMatrix q;
  std::size_t rank = 0;
  /// 0-based row slots filled from the canonical basis.
  std::vector<std::size_t> completed_indices;
};

/// Classical Gram-Schmidt over the rows of a square matrix, with one
/// re-orthogonalization pass. Rows whose residual norm falls below `tol` keep
/// their slot, which is then filled by the first canonical basis vector (in
/// `order`) that survives projection against every accepted row. The output
/// is always unitary.
GramSchmidtOutput gram_schmidt_rows(const ComplexMatrix& m, double tol = 1e-10,
                                    CompletionOrder order = CompletionOrder::kCanonical);

/// Returns x minimizing |x m + v|^2 + reg |x|^2. For invertible m and reg = 0
/// this is -v m^{-1}; singular m yields the minimum-norm least-squares answer.
ComplexVector solve_against_block(std::span<const Complex> v, const ComplexMatrix& m,
                                  double reg = 1e-12);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

}  // namespace hardy
