#include "hardy/oracle.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hardy::oracle {

namespace {

constexpr std::size_t kChunk = 4096;

struct Best {
  double value = -1.0;
  std::vector<double> point;
};

// Runs body(i) for i in [0, count) and returns per-index results.
template <class Body>
std::vector<Best> sweep(std::size_t count, std::size_t threads, Body&& body) {
  std::vector<Best> out(count);
  std::size_t workers = threads != 0 ? threads : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) out[i] = body(i);
      });
    }
  }
  return out;
}

// Index order with strict improvement: the earliest maximizer wins.
Best reduce(const std::vector<Best>& parts) {
  Best best;
  for (const auto& p : parts) {
    if (p.value > best.value) best = p;
  }
  return best;
}

std::string describe(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(9);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

double measure(const Quantity& q, ParadoxType type, const StateMatrix& h) {
  if (type == ParadoxType::kI) return type1_probability(h);
  const ProbabilityTable t = type2_probabilities(h);
  switch (q.kind) {
    case Quantity::Kind::kPair12: return t.pair12();
    case Quantity::Kind::kPartialSum: return t.partial(q.n);
    case Quantity::Kind::kFullPII: return t.full_pii();
    case Quantity::Kind::kTypeI: break;
  }
  throw std::invalid_argument("quantity does not apply to Type-II states");
}

}  // namespace

std::string Quantity::label() const {
  switch (kind) {
    case Kind::kTypeI: return "P_I";
    case Kind::kPair12: return "pair12";
    case Kind::kPartialSum: return "partial_sum(" + std::to_string(n) + ")";
    case Kind::kFullPII: return "full_PII";
  }
  return "unknown";
}

OracleReport grid_maximize_norm_bound(std::size_t resolution, std::size_t threads) {
  if (resolution < 10) throw std::invalid_argument("grid resolution must be >= 10");
  const double inv = 1.0 / static_cast<double>(resolution);
  auto parts = sweep(resolution + 1, threads, [&](std::size_t i) {
    Best b;
    for (std::size_t j = 0; i + j <= resolution; ++j) {
      const double x = static_cast<double>(i) * inv;
      const double y = static_cast<double>(j) * inv;
      const double z = static_cast<double>(resolution - i - j) * inv;
      const double v = theorem1_norm_bound(x, y, z);
      if (v > b.value) b = {v, {x, y, z}};
    }
    return b;
  });
  const Best best = reduce(parts);

  OracleReport r;
  r.method = "grid";
  r.paradox_type = ParadoxType::kI;
  r.quantity = "norm_bound";
  r.resolution_or_samples = resolution;
  r.best_value = best.value;
  r.best_point = best.point;
  r.best_point_description = "(|h12|^2, |h21|^2, |H22|^2) = " + describe(best.point);
  return r;
}

OracleReport random_state_sampling(ParadoxType type, std::size_t dim, std::size_t samples,
                                   std::uint64_t seed, Quantity quantity, std::size_t threads) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (type == ParadoxType::kI) quantity = {Quantity::Kind::kTypeI, 0};
  if (type == ParadoxType::kII && quantity.kind == Quantity::Kind::kTypeI) {
    quantity = {Quantity::Kind::kPair12, 0};
  }
  if (quantity.kind == Quantity::Kind::kPartialSum && (quantity.n < 2 || quantity.n > dim)) {
    throw std::invalid_argument("partial-sum order must lie in [2, dim]");
  }

  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (type == ParadoxType::kI ? (i != 0 || j != 0) : j >= i) slots.emplace_back(i, j);
    }
  }

  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  auto parts = sweep(chunks, threads, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal;
    Best b;
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    std::vector<double> g(slots.size());
    for (std::size_t s = c * kChunk; s < end; ++s) {
      double n2 = 0.0;
      for (auto& x : g) {
        x = normal(gen);
        n2 += x * x;
      }
      if (n2 == 0.0) continue;
      ComplexMatrix m(dim, dim);
      for (std::size_t k = 0; k < slots.size(); ++k) m(slots[k].first, slots[k].second) = g[k];
      const StateMatrix h = StateMatrix::normalized(std::move(m));
      const double v = measure(quantity, type, h);
      if (v > b.value) {
        b.value = v;
        b.point.assign(h.amplitudes().entries().size(), 0.0);
        for (std::size_t k = 0; k < b.point.size(); ++k) b.point[k] = h.amplitudes().entries()[k].real();
      }
    }
    return b;
  });
  const Best best = reduce(parts);

  OracleReport r;
  r.method = "sampling";
  r.paradox_type = type;
  r.dim = dim;
  r.quantity = quantity.label();
  r.resolution_or_samples = samples;
  r.best_value = best.value;
  r.best_point = best.point;
  r.best_point_description = "state (row-major) = " + describe(best.point);
  r.seed = seed;
  return r;
}

OracleReport exhaustive_type1_dim2(std::size_t resolution, std::size_t threads) {
  if (resolution < 50) throw std::invalid_argument("exhaustive resolution must be >= 50");
  const double step = std::numbers::pi / 2.0 / static_cast<double>(resolution);
  auto parts = sweep(resolution + 1, threads, [&](std::size_t a) {
    Best b;
    const double theta = static_cast<double>(a) * step;
    for (std::size_t c = 0; c <= resolution; ++c) {
      const double phi = static_cast<double>(c) * step;
      const double h12 = std::sin(theta) * std::cos(phi);
      const double h21 = std::sin(theta) * std::sin(phi);
      const double h22 = std::cos(theta);
      const StateMatrix h = StateMatrix::normalized(ComplexMatrix{{0.0, h12}, {h21, h22}});
      const double v = type1_probability(h);
      if (v > b.value) b = {v, {h12, h21, h22}};
    }
    return b;
  });
  const Best best = reduce(parts);

  OracleReport r;
  r.method = "exhaustive";
  r.paradox_type = ParadoxType::kI;
  r.dim = 2;
  r.quantity = "P_I";
  r.resolution_or_samples = resolution;
  r.best_value = best.value;
  r.best_point = best.point;
  r.best_point_description = "(|h12|, |h21|, |h22|) = " + describe(best.point);
  return r;
}

}  // namespace hardy::oracle
