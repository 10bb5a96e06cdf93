#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hardy/hardy.hpp"
#include "support.hpp"

using namespace hardy;

namespace {

const double kA = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);

StateMatrix h3() {
  return StateMatrix::normalized(
      {{0.498328, 0.316483, 0.329301}, {0.0, 0.441108, 0.316483}, {0.0, 0.0, 0.498328}});
}

double sq(double x) { return x * x; }

double squared_norm(const ComplexVector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

}  // namespace

TEST_CASE("paradox type names") {
  CHECK(parse_paradox_type("I") == ParadoxType::kI);
  CHECK(parse_paradox_type("2") == ParadoxType::kII);
  CHECK(to_string(ParadoxType::kII) == "II");
  CHECK_THROWS_AS(parse_paradox_type("III"), std::invalid_argument);
}

TEST_CASE("state construction") {
  CHECK_THROWS_AS(StateMatrix::from_amplitudes(ComplexMatrix::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(StateMatrix::normalized(ComplexMatrix(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(StateMatrix::normalized(ComplexMatrix(2, 3)), std::invalid_argument);
  CHECK(frobenius_norm(StateMatrix::normalized(ComplexMatrix::identity(3)).amplitudes()) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("block split of H3") {
  const StateMatrix h = StateMatrix::from_amplitudes(
      {{0.498328, 0.316483, 0.329301}, {0.0, 0.441108, 0.316483}, {0.0, 0.0, 0.498328}}, 1e-5);
  const Blocks b = block_split(h);
  CHECK(b.h11 == Complex(0.498328));
  CHECK(b.h12 == ComplexVector{0.316483, 0.329301});
  CHECK(b.h21 == ComplexVector{0.0, 0.0});
  CHECK(b.t == ComplexVector{0.441108, 0.316483});
  CHECK(b.h22 == ComplexMatrix{{0.441108, 0.316483}, {0.0, 0.498328}});
  CHECK_THROWS_AS(block_split(StateMatrix::normalized(ComplexMatrix::identity(1))),
                  std::invalid_argument);
}

TEST_CASE("closed forms") {
  const double x = (3.0 - std::sqrt(5.0)) / 2.0;
  const double z = std::sqrt(5.0) - 2.0;
  CHECK(std::abs(theorem1_norm_bound(x, x, z) - 0.09016994375) < 1e-10);
  CHECK(theorem1_norm_bound(0.0, 0.5, 0.5) == 0.0);
  CHECK(theorem1_norm_bound(0.5, 0.5, 0.0) == 0.0);
  CHECK_THROWS_AS(theorem1_norm_bound(-0.1, 0.5, 0.5), std::invalid_argument);

  CHECK(std::abs(analytic_max() - 0.0901699437494742) < 1e-16);
  CHECK(std::abs(2.0 * analytic_max() + 11.0 - 5.0 * std::sqrt(5.0)) < 1e-12);
  CHECK(analytic_max() < 1.0 / 11.0);

  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    double a = u(g), b = u(g), c = u(g);
    const double s = a + b + c;
    CHECK(theorem1_norm_bound(a / s, b / s, c / s) <= 0.09016994376);
  }
}

TEST_CASE("derived optimal Type-I state") {
  const StateMatrix h0 = derived_optimal_type1_state(0.0);
  CHECK(std::abs(h0(0, 0)) == 0.0);
  CHECK(std::abs(h0(0, 1) - 0.6180340) < 1e-7);
  CHECK(std::abs(h0(1, 0) - 0.6180340) < 1e-7);
  CHECK(std::abs(h0(1, 1) - 0.4858683) < 1e-7);
  CHECK(std::abs(frobenius_norm(h0.amplitudes()) - 1.0) < 1e-12);
  const double p0 = type1_probability(h0);
  CHECK(std::abs(p0 - analytic_max()) < 1e-10);
  CHECK(std::abs(type1_probability(derived_optimal_type1_state(std::numbers::pi)) - p0) < 1e-12);
  for (double theta : {0.3, 1.0, 2.5, -1.7}) {
    CHECK(std::abs(type1_probability(derived_optimal_type1_state(theta)) - analytic_max()) < 1e-10);
  }
}

TEST_CASE("Type-I settings in dimension 2") {
  const double a = 0.3, b = -0.7, c = 0.5;
  const StateMatrix h = StateMatrix::normalized({{0.0, a}, {b, c}});
  const SettingPair s = type1_settings(h);
  // u row is proportional to (c, -a), v column to (c, -b).
  const double n = std::hypot(a, c);
  const double nb = std::hypot(b, c);
  CHECK(std::abs(std::abs(s.u(0, 0) * (c / n) + s.u(0, 1) * (-a / n)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(s.v(0, 0) * (c / nb) + s.v(1, 0) * (-b / nb)) - 1.0) < 1e-12);
  CHECK(s.u(0, 0).real() >= 0.0);
  CHECK(s.u(0, 0).imag() == doctest::Approx(0.0));

  // |u11|^2 = 1 / (1 + |h12 H22^-1|^2) at the optimum.
  const StateMatrix opt = derived_optimal_type1_state(0.0);
  const double ratio = kA / std::sqrt(1.0 - 2.0 * kA * kA);
  CHECK(std::abs(std::norm(type1_settings(opt).u(0, 0)) - 1.0 / (1.0 + ratio * ratio)) < 1e-12);

  // Maximally entangled state without |11>: u11 is forced to zero.
  const StateMatrix bell = StateMatrix::normalized({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(std::abs(type1_settings(bell).u(0, 0)) < 1e-12);
  CHECK(type1_probability(bell) < 1e-24);

  // The optimal norm split reaches the bound.
  const StateMatrix split = StateMatrix::normalized({{0.0, kA}, {kA, std::sqrt(std::sqrt(5.0) - 2.0)}});
  CHECK(std::abs(type1_probability(split) - 0.09016994) < 1e-8);
}

TEST_CASE("Type-I constraint bookkeeping") {
  const StateMatrix h = StateMatrix::normalized({{0.0, 0.4, 0.2}, {0.0, 0.3, 0.1}, {0.0, 0.0, 0.5}});
  const SettingPair id{ComplexMatrix::identity(3), ComplexMatrix::identity(3)};
  const ConstraintReport r = type1_constraint_residuals(h, id);
  REQUIRE(r.residuals.size() == 5);
  CHECK(r.residuals[0].first == "h11");
  CHECK(r.residuals[1].first == "h'(1,2)");
  CHECK(r.residuals[1].second == doctest::Approx(std::abs(h(0, 1))));
  CHECK(r.residuals[2].second == doctest::Approx(std::abs(h(0, 2))));
  CHECK(r.residuals[3].first == "h''(2,1)");

  CHECK_THROWS_AS(type1_settings(StateMatrix::normalized(ComplexMatrix::identity(2))),
                  ConstraintViolation);
  CHECK_THROWS_AS(transform_state(h, SettingPair{ComplexMatrix(3, 3), ComplexMatrix::identity(3)}),
                  std::invalid_argument);
}

TEST_CASE("Type-I invariants on random states") {
  std::mt19937_64 g(101);
  for (std::size_t k = 2; k <= 6; ++k) {
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      const StateMatrix h = testing::random_type1_state(g, k);
      const SettingPair s = type1_settings(h);
      const ProbabilityTable t = transform_state(h, s);
      worst = std::max(worst, t.type1());
      if (trial % 10 != 0) continue;
      CHECK(std::abs(t.total() - 1.0) < 1e-9);
      CHECK(type1_constraint_residuals(h, s).max_residual < 1e-8);

      const Blocks b = block_split(h);
      const double h22 = sq(frobenius_norm(b.h22));
      CHECK(std::norm(s.u(0, 0)) <= h22 / (h22 + squared_norm(b.h12)) + 1e-9);
      CHECK(std::abs(type1_closed_form(h) - t.type1()) < 1e-9);
    }
    CAPTURE(k);
    CHECK(worst <= analytic_max() + 1e-9);
  }
}

TEST_CASE("Type-II settings") {
  SUBCASE("diagonal state") {
    for (std::size_t k = 2; k <= 5; ++k) {
      const StateMatrix h = StateMatrix::normalized(ComplexMatrix::identity(k));
      const SettingPair s = type2_settings(h);
      CHECK(type2_constraint_residuals(h, s).max_residual < 1e-15);
      CHECK(std::abs(transform_state(h, s).total() - 1.0) < 1e-12);
      const IdentityCheck q = q12_identity_check(h);
      CHECK(q.lhs < 1e-15);
      CHECK(q.rhs < 1e-15);
    }
  }
  SUBCASE("H3") {
    const StateMatrix h = h3();
    CHECK(type2_constraint_residuals(h, type2_settings(h)).max_residual < 1e-8);
    CHECK(std::abs(type2_probabilities(h).partial(3) - 0.141327) < 1e-4);
    const IdentityCheck q = q12_identity_check(h);
    CHECK(std::abs(q.lhs - q.rhs) < 1e-9);
  }
  SUBCASE("two-dimensional optimum") {
    const StateMatrix h =
        StateMatrix::normalized({{kA, std::sqrt(1.0 - 2.0 * kA * kA)}, {0.0, kA}});
    const ProbabilityTable t = type2_probabilities(h);
    CHECK(std::abs(t.pair12() - 0.09016994) < 1e-6);
    CHECK(t.full_pii() == t.pair12());
  }
  SUBCASE("non-triangular input") {
    const StateMatrix h = StateMatrix::normalized({{1.0, 0.0}, {0.5, 1.0}});
    CHECK_THROWS_AS(type2_settings(h), ConstraintViolation);
    const ConstraintReport r = type2_state_residuals(h);
    REQUIRE(r.residuals.size() == 1);
    CHECK(r.residuals[0].first == "h(2,1)");
  }
}

TEST_CASE("Type-II invariants on random states") {
  std::mt19937_64 g(202);
  for (std::size_t k = 2; k <= 6; ++k) {
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      const StateMatrix h = testing::random_upper_triangular(g, k, trial % 2 == 0);
      const SettingPair s = type2_settings(h);
      const ProbabilityTable t = transform_state(h, s);
      worst = std::max(worst, t.pair12());
      if (trial % 10 != 0) continue;
      CHECK(std::abs(t.total() - 1.0) < 1e-9);
      CHECK(type2_constraint_residuals(h, s).max_residual < 1e-8);
      CHECK(unitarity_residual(s.u) < 1e-12);
      CHECK(unitarity_residual(s.v) < 1e-12);
    }
    CAPTURE(k);
    CHECK(worst <= analytic_max() + 1e-9);
  }
}

TEST_CASE("Type-II proof identities") {
  std::mt19937_64 g(303);
  for (std::size_t k = 2; k <= 5; ++k) {
    for (int trial = 0; trial < 1000; ++trial) {
      const StateMatrix h = testing::random_upper_triangular(g, k);
      const IdentityCheck q = q12_identity_check(h);
      CHECK(std::abs(q.lhs - q.rhs) < 1e-9);
      if (vector_norm(block_split(h).t) > 1e-4) {
        const IdentityCheck v = v12_formula_check(h);
        CHECK(std::abs(v.lhs - v.rhs) < 1e-8);
      }
    }
  }

  // k = 2 reduces to |h12|^2 / (|h11|^2 + |h12|^2).
  const StateMatrix two = StateMatrix::normalized({{0.6, Complex(0.3, 0.2)}, {0.0, 0.5}});
  const IdentityCheck v2 = v12_formula_check(two);
  const double expect = std::norm(two(0, 1)) / (std::norm(two(0, 0)) + std::norm(two(0, 1)));
  CHECK(std::abs(v2.lhs - expect) < 1e-12);
  CHECK(std::abs(v2.rhs - expect) < 1e-12);

  // h12 parallel to t.
  const Complex c(0.7, -0.4);
  const StateMatrix par = StateMatrix::normalized(
      {{0.5, c * 0.3, c * 0.2}, {0.0, 0.3, 0.2}, {0.0, 0.0, 0.6}});
  const Blocks b = block_split(par);
  const double h12 = squared_norm(b.h12);
  CHECK(std::abs(v12_formula_check(par).lhs - h12 / (std::norm(b.h11) + h12)) < 1e-9);

  CHECK_THROWS_AS(v12_formula_check(StateMatrix::normalized({{1.0, 1.0}, {0.0, 0.0}})),
                  std::invalid_argument);
}

TEST_CASE("basis completion does not change the aggregates") {
  std::mt19937_64 g(404);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 3 + trial % 4;
    ComplexMatrix m = testing::random_upper_triangular(g, k).amplitudes();
    // Zero a trailing block of rows, or a column, to make H rank deficient.
    const std::size_t zeroed = 1 + trial % (k - 1);
    if (trial % 2 == 0) {
      for (std::size_t i = k - zeroed; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m(i, j) = 0.0;
      }
    } else {
      const std::size_t col = 1 + trial % (k - 1);
      for (std::size_t i = 0; i < k; ++i) m(i, col) = 0.0;
    }
    const StateMatrix h = StateMatrix::normalized(std::move(m));
    const ProbabilityTable a = type2_probabilities(h, 1e-10, CompletionOrder::kCanonical);
    const ProbabilityTable b = type2_probabilities(h, 1e-10, CompletionOrder::kReversed);
    CAPTURE(k);
    CAPTURE(trial);
    CHECK(std::abs(a.pair12() - b.pair12()) < 1e-9);
    for (std::size_t n = 2; n <= k; ++n) CHECK(std::abs(a.partial(n) - b.partial(n)) < 1e-9);
  }
}

TEST_CASE("golden matrices with zero rows") {
  const StateMatrix h34 = StateMatrix::normalized({{0.498328, 0.316483, 0.329301, 0.0},
                                                   {0.0, 0.441108, 0.316483, 0.0},
                                                   {0.0, 0.0, 0.498328, 0.0},
                                                   {0.0, 0.0, 0.0, 0.0}});
  CHECK(std::abs(type2_probabilities(h34).partial(3) - 0.141327) < 1e-4);

  const StateMatrix h35 = StateMatrix::normalized(
      {{0.49832, 0.316487, 0.232321, 0.187338, 0.139177},
       {0.0, 0.441109, 0.223283, 0.18005, 0.133762},
       {0.0, 0.0, 0.351577, 0.283503, 0.210619},
       {0.0, 0.0, 0.0, 0.0, 0.0},
       {0.0, 0.0, 0.0, 0.0, 0.0}});
  // Columns 3..5 agree only to the printed digits; a looser dependence
  // threshold recognizes them as one direction.
  const SettingPair s = type2_settings(h35, 1e-5);
  CHECK(type2_constraint_residuals(h35, s).max_residual < 1e-6);
  CHECK(std::abs(type2_probabilities(h35, 1e-5).partial(3) - 0.141327) < 1e-4);
}
