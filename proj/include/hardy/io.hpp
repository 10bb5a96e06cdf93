#pragma once

// JSON state/result files and CSV helpers. Numbers are written with 17
// significant digits so 64-bit values survive a round trip.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hardy/matcore.hpp"
#include "hardy/optim.hpp"

namespace hardy::io {

inline constexpr const char* kToolVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.17g"; throws std::invalid_argument for non-finite values.
std::string format_double(double v);

/// {"kind":"state","rows":..,"cols":..,"re":[[..]],"im":[[..]]}; "im" is left
/// out when every imaginary part is zero.
std::string state_to_json(const ComplexMatrix& m, int indent = 0);

/// Parses a StateFile document. Throws ParseError on schema problems.
ComplexMatrix parse_state(const std::string& text);

/// Checks the unit norm (within 1e-6). With `renormalize`, norms within 1e-3
/// of one are rescaled instead of rejected. Throws ParseError otherwise.
StateMatrix state_from_matrix(ComplexMatrix m, bool renormalize);

struct ResultFile {
  ParadoxType paradox = ParadoxType::kI;
  std::string objective;  // P_I | pair12 | partial_sum | full_PII
  std::size_t target_n = 0;
  std::size_t dim = 0;
  double best_value = 0.0;
  std::optional<double> bound;
  ComplexMatrix state;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  bool converged = false;
  double wall_ms = 0.0;
  std::string tool_version = kToolVersion;

  optim::Objective objective_spec() const;
};

/// target_n is the partial-sum order, 1 for P_I, 2 for pair12 and dim for
/// full_PII.
ResultFile to_result_file(const optim::OptimizationResult& r);

std::string result_to_json(const ResultFile& r);
ResultFile parse_result(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hardy::io
