#pragma once

#include <random>
#include <string>

#include "hardy/hardy.hpp"

namespace testing {

inline hardy::Complex gaussian(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  const double re = n(g);
  return {re, n(g)};
}

inline hardy::ComplexMatrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols) {
  hardy::ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = gaussian(g);
  }
  return m;
}

// h11 = 0, everything else generic.
inline hardy::StateMatrix random_type1_state(std::mt19937_64& g, std::size_t k) {
  hardy::ComplexMatrix m = random_matrix(g, k, k);
  m(0, 0) = 0.0;
  return hardy::StateMatrix::normalized(std::move(m));
}

inline hardy::StateMatrix random_upper_triangular(std::mt19937_64& g, std::size_t k,
                                                  bool real = false) {
  hardy::ComplexMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const hardy::Complex z = gaussian(g);
      m(i, j) = real ? hardy::Complex(z.real(), 0.0) : z;
    }
  }
  return hardy::StateMatrix::normalized(std::move(m));
}

inline std::string data_path(const std::string& name) {
  return std::string(HARDY_TEST_DATA_DIR) + "/" + name;
}

}  // namespace testing
