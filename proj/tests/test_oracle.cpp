#include <cmath>

#include "doctest.h"
#include "hardy/optim.hpp"
#include "hardy/oracle.hpp"

using namespace hardy;
using namespace hardy::oracle;

TEST_CASE("grid oracle") {
  const OracleReport r = grid_maximize_norm_bound(2000);
  CHECK(std::abs(r.best_value - 0.0901699) < 1e-6);
  REQUIRE(r.best_point.size() == 3);
  CHECK(std::abs(r.best_point[0] - 0.381966) < 1e-3);
  CHECK(std::abs(r.best_point[1] - 0.381966) < 1e-3);
  CHECK(std::abs(r.best_point[2] - 0.236068) < 1e-3);
  CHECK(r.best_value <= analytic_max() + 1e-9);

  CHECK(grid_maximize_norm_bound(10).best_value <= 0.0901700);
  double previous = 0.0;
  for (std::size_t res : {10u, 20u, 40u, 80u, 160u, 320u}) {
    const double v = grid_maximize_norm_bound(res).best_value;
    CHECK(v >= previous);
    previous = v;
  }
  CHECK_THROWS_AS(grid_maximize_norm_bound(9), std::invalid_argument);
}

TEST_CASE("exhaustive dimension-2 oracle") {
  const OracleReport r = exhaustive_type1_dim2(1000);
  CHECK(std::abs(r.best_value - 0.0901699) < 1e-5);
  CHECK(r.best_value <= analytic_max() + 1e-9);
  REQUIRE(r.best_point.size() == 3);
  CHECK(std::abs(r.best_point[0] - 0.618034) < 2e-3);
  CHECK(std::abs(r.best_point[1] - 0.618034) < 2e-3);
  CHECK(std::abs(r.best_point[2] - 0.485868) < 2e-3);
  CHECK(exhaustive_type1_dim2(50).best_value <= analytic_max() + 1e-9);
  CHECK_THROWS_AS(exhaustive_type1_dim2(49), std::invalid_argument);

  const auto opt = optim::maximize(optim::Objective::type1(),
                                   optim::Parametrization(ParadoxType::kI, 2), {});
  CHECK(std::abs(r.best_value - opt.best_value) < 1e-4);
}

TEST_CASE("random sampling oracle") {
  const OracleReport one = random_state_sampling(ParadoxType::kI, 2, 200000, 1);
  CHECK(one.best_value >= 0.085);
  CHECK(one.best_value <= 0.0901700);

  const OracleReport two = random_state_sampling(ParadoxType::kII, 2, 200000, 1,
                                                 {Quantity::Kind::kPair12, 0});
  CHECK(two.best_value <= 0.0901700);

  const OracleReport three = random_state_sampling(ParadoxType::kII, 3, 100000, 2,
                                                   {Quantity::Kind::kPartialSum, 3});
  CHECK(three.best_value <= 0.141327 + 1e-4);
  CHECK(three.quantity == "partial_sum(3)");

  const OracleReport a = random_state_sampling(ParadoxType::kII, 4, 20000, 9,
                                               {Quantity::Kind::kPair12, 0}, 1);
  const OracleReport b = random_state_sampling(ParadoxType::kII, 4, 20000, 9,
                                               {Quantity::Kind::kPair12, 0}, 4);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_point == b.best_point);
  REQUIRE(a.seed.has_value());
  CHECK(*a.seed == 9);

  CHECK_THROWS_AS(random_state_sampling(ParadoxType::kI, 2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_state_sampling(ParadoxType::kII, 2, 10, 1, {Quantity::Kind::kPartialSum, 3}),
                  std::invalid_argument);
}
