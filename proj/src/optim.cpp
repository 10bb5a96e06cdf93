#include "hardy/optim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace hardy::optim {

namespace {

std::vector<std::pair<std::size_t, std::size_t>> pattern_slots(ParadoxType type, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const bool free = type == ParadoxType::kI ? !(i == 0 && j == 0) : j >= i;
      if (free) slots.emplace_back(i, j);
    }
  }
  return slots;
}

std::mt19937_64 restart_generator(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart),
                    static_cast<std::uint32_t>(restart >> 32)};
  return std::mt19937_64(seq);
}

double unit_uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::size_t worker_count(std::size_t requested, std::size_t tasks) {
  std::size_t n = requested != 0 ? requested : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return std::min(n, tasks);
}

// Runs task(i) for i in [0, count) on a pool; each slot written by one task.
template <class Task>
void run_indexed(std::size_t count, std::size_t threads, Task&& task) {
  const std::size_t workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string Objective::name() const {
  switch (kind) {
    case ObjectiveKind::kTypeI: return "P_I";
    case ObjectiveKind::kPair12: return "pair12";
    case ObjectiveKind::kPartialSum: return "partial_sum";
    case ObjectiveKind::kFullPII: return "full_PII";
  }
  return "unknown";
}

std::string Objective::label() const {
  if (kind == ObjectiveKind::kPartialSum) return name() + "(" + std::to_string(target_n) + ")";
  return name();
}

ParadoxType Objective::paradox_type() const {
  return kind == ObjectiveKind::kTypeI ? ParadoxType::kI : ParadoxType::kII;
}

Objective Objective::parse(const std::string& name, std::size_t target_n) {
  if (name == "P_I") return type1();
  if (name == "pair12") return pair12();
  if (name == "full_PII") return full_pii();
  if (name == "partial_sum") {
    if (target_n < 2) throw std::invalid_argument("partial_sum needs target_n >= 2");
    return partial_sum(target_n);
  }
  throw std::invalid_argument("unknown objective '" + name + "'");
}

double evaluate(const Objective& objective, const StateMatrix& h, double tol) {
  switch (objective.kind) {
    case ObjectiveKind::kTypeI: return type1_probability(h, tol);
    case ObjectiveKind::kPair12: return type2_probabilities(h, tol).pair12();
    case ObjectiveKind::kPartialSum:
      if (objective.target_n > h.dim()) {
        throw std::invalid_argument("partial_sum order exceeds the state dimension");
      }
      return type2_probabilities(h, tol).partial(objective.target_n);
    case ObjectiveKind::kFullPII: return type2_probabilities(h, tol).full_pii();
  }
  throw std::logic_error("unhandled objective");
}

std::optional<double> analytic_bound(const Objective& objective) {
  if (objective.kind == ObjectiveKind::kTypeI || objective.kind == ObjectiveKind::kPair12) {
    return analytic_max();
  }
  return std::nullopt;
}

std::string to_string(Mode m) { return m == Mode::kComplex ? "complex" : "real"; }

Parametrization::Parametrization(ParadoxType type, std::size_t dim, Mode mode)
    : type_(type), dim_(dim), mode_(mode), slots_(pattern_slots(type, dim)) {
  if (dim < 2) throw std::invalid_argument("parametrization needs dimension >= 2");
}

std::size_t Parametrization::free_parameters() const {
  return mode_ == Mode::kComplex ? 2 * slots_.size() - 1 : slots_.size();
}

StateMatrix Parametrization::embed(std::span<const double> params) const {
  if (params.size() != free_parameters()) {
    throw std::invalid_argument("expected " + std::to_string(free_parameters()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  const std::size_t s = slots_.size();
  double norm2 = 0.0;
  for (std::size_t i = 0; i < s; ++i) norm2 += params[i] * params[i];
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw std::invalid_argument("cannot embed a zero parameter vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  ComplexMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < s; ++i) {
    const double mag = std::abs(params[i]) * inv;
    const double phase = (mode_ == Mode::kComplex && i > 0) ? params[s + i - 1] : 0.0;
    const auto [r, c] = slots_[i];
    m(r, c) = phase == 0.0 ? Complex(mag, 0.0) : std::polar(mag, phase);
  }
  return StateMatrix::normalized(std::move(m));
}

namespace {

struct RestartOutcome {
  LocalSearchResult search;
};

RestartOutcome run_restart(const Objective& objective, const Parametrization& p,
                           const OptimizationConfig& cfg, std::size_t restart) {
  auto gen = restart_generator(cfg.seed, restart);
  const std::size_t slots = p.slot_count();
  std::vector<double> magnitudes(slots);
  for (auto& m : magnitudes) m = unit_uniform(gen);

  const Parametrization real_p(p.paradox_type(), p.dim());
  auto real_objective = [&](const std::vector<double>& x) {
    return evaluate(objective, real_p.embed(x), cfg.gs_tol);
  };
  LocalSearchResult real = nelder_mead_maximize(real_objective, magnitudes, cfg.initial_scale,
                                                cfg.max_iterations, cfg.tolerance);
  if (p.mode() == Mode::kRealNonnegative) return {std::move(real)};

  // Complex mode: polish the real optimum with zero phases (never worse than
  // real mode), and separately search from random phases.
  auto complex_objective = [&](const std::vector<double>& x) {
    return evaluate(objective, p.embed(x), cfg.gs_tol);
  };
  std::vector<double> polished_start(real.x);
  polished_start.resize(p.free_parameters(), 0.0);
  LocalSearchResult polished = nelder_mead_maximize(complex_objective, polished_start,
                                                    cfg.initial_scale, cfg.max_iterations,
                                                    cfg.tolerance);

  std::vector<double> random_start(magnitudes);
  for (std::size_t i = 1; i < slots; ++i) {
    random_start.push_back(2.0 * std::numbers::pi * unit_uniform(gen));
  }
  LocalSearchResult explored = nelder_mead_maximize(complex_objective, random_start,
                                                    cfg.initial_scale, cfg.max_iterations,
                                                    cfg.tolerance);
  return {explored.value > polished.value ? std::move(explored) : std::move(polished)};
}

}  // namespace

OptimizationResult maximize(const Objective& objective, const Parametrization& p,
                            const OptimizationConfig& cfg) {
  if (objective.paradox_type() != p.paradox_type()) {
    throw std::invalid_argument("objective " + objective.label() +
                                " does not apply to paradox type " + to_string(p.paradox_type()));
  }
  if (cfg.restarts == 0) throw std::invalid_argument("restarts must be positive");
  if (cfg.max_iterations == 0 || !(cfg.tolerance > 0.0) || !(cfg.initial_scale > 0.0)) {
    throw std::invalid_argument("optimization config fields must be positive");
  }
  if (objective.kind == ObjectiveKind::kPartialSum &&
      (objective.target_n < 2 || objective.target_n > p.dim())) {
    throw std::invalid_argument("partial_sum order must lie in [2, dim]");
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  run_indexed(cfg.restarts, cfg.threads,
              [&](std::size_t r) { outcomes[r] = run_restart(objective, p, cfg, r); });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].search.value > outcomes[best].search.value) best = r;
  }

  OptimizationResult result;
  result.objective = objective;
  result.paradox_type = p.paradox_type();
  result.mode = p.mode();
  result.dim = p.dim();
  const auto& winner = outcomes[best].search;
  if (p.mode() == Mode::kComplex) {
    result.best_state = p.embed(winner.x);
  } else {
    result.best_state = Parametrization(p.paradox_type(), p.dim()).embed(winner.x);
  }
  result.best_value = evaluate(objective, result.best_state, cfg.gs_tol);
  result.bound = analytic_bound(objective);
  result.restarts_used = cfg.restarts;
  result.seed = cfg.seed;
  result.converged = winner.converged;
  result.wall_ms = elapsed_ms(start);
  return result;
}

ScanReport scan_dimensions(const Objective& objective, std::size_t target_n, std::size_t dim_lo,
                           std::size_t dim_hi, const OptimizationConfig& cfg, Mode mode) {
  if (dim_lo > dim_hi) throw std::invalid_argument("empty dimension range");
  const bool grows = objective.kind == ObjectiveKind::kFullPII;
  if (!grows && (target_n < 2 || dim_lo < target_n)) {
    throw std::invalid_argument("dimensions must satisfy dim >= target_n >= 2");
  }
  if (grows && dim_lo < 2) throw std::invalid_argument("dimensions must be >= 2");

  auto run = [&](std::size_t dim) {
    OptimizationConfig c = cfg;
    if (dim >= 6) c.restarts = std::max<std::size_t>(c.restarts, 256);
    return maximize(objective, Parametrization(objective.paradox_type(), dim, mode), c);
  };

  ScanReport report;
  report.objective = objective;
  report.target_n = grows ? dim_lo : target_n;
  for (std::size_t dim = dim_lo; dim <= dim_hi; ++dim) {
    OptimizationResult r = run(dim);
    ScanRow row;
    row.dim = dim;
    row.best_value = r.best_value;
    row.seed = r.seed;
    row.restarts = r.restarts_used;
    row.wall_ms = r.wall_ms;
    row.result = std::move(r);
    report.rows.push_back(std::move(row));
  }

  if (grows || dim_lo == report.target_n) {
    report.reference_value = report.rows.front().best_value;
  } else {
    report.reference_value = run(report.target_n).best_value;
  }
  for (auto& row : report.rows) row.deviation = std::abs(row.best_value - report.reference_value);
  return report;
}

StandardFormReport standard_form_check(const OptimizationResult& r, std::size_t target_n,
                                       double reference_value, double tol, double value_tol) {
  if (r.paradox_type != ParadoxType::kII || r.best_state.dim() != r.dim || r.dim < target_n) {
    throw std::invalid_argument("standard_form_check needs a Type-II result with dim >= target_n");
  }
  StandardFormReport out;
  out.singular_values = singular_values(r.best_state.amplitudes());
  for (double s : out.singular_values) {
    if (s > tol) ++out.numerical_rank;
  }
  out.rank_ok = out.numerical_rank <= target_n;
  out.value_ok = std::abs(r.best_value - reference_value) <= value_tol;
  return out;
}

double finite_difference_probe(const Objective& objective, const StateMatrix& h, double step,
                               double tol) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_difference_probe: step must be positive");
  const auto slots = pattern_slots(objective.paradox_type(), h.dim());
  const std::size_t k = h.dim();

  std::vector<double> x;
  x.reserve(2 * slots.size());
  for (const auto& [i, j] : slots) {
    x.push_back(h(i, j).real());
    x.push_back(h(i, j).imag());
  }
  auto f = [&](const std::vector<double>& y) {
    ComplexMatrix m(k, k);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      m(slots[s].first, slots[s].second) = Complex(y[2 * s], y[2 * s + 1]);
    }
    return evaluate(objective, StateMatrix::normalized(std::move(m)), tol);
  };

  double xnorm2 = 0.0;
  for (double v : x) xnorm2 += v * v;
  const double xnorm = std::sqrt(xnorm2);

  std::vector<double> grad(x.size());
  std::vector<double> y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] + step;
    const double up = f(y);
    y[i] = x[i] - step;
    const double down = f(y);
    y[i] = x[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  double radial = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) radial += grad[i] * x[i] / xnorm;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = grad[i] - radial * x[i] / xnorm;
    norm2 += g * g;
  }
  return std::sqrt(norm2);
}

}  // namespace hardy::optim
