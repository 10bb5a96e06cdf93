#include "hardy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "hardy/hardy.hpp"
#include "hardy/io.hpp"
#include "hardy/optim.hpp"
#include "hardy/oracle.hpp"

namespace hardy::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kScanDeviationTol = 2e-4;
constexpr double kReevaluationTol = 1e-9;
constexpr double kBoundSlack = 1e-9;

std::string fmt(double v, int precision = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string output_dir() {
  const char* dir = std::getenv("HARDY_OUT_DIR");
  return dir != nullptr && *dir != '\0' ? dir : ".";
}

std::string in_output_dir(const std::string& name) {
  const std::filesystem::path dir(output_dir());
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string objective_tag(const optim::Objective& o) {
  return o.kind == optim::ObjectiveKind::kPartialSum ? "partial_sum" + std::to_string(o.target_n)
                                                     : o.name();
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  static const std::regex range(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, range)) throw UsageError("--dims expects a..b, got '" + s + "'");
  const std::size_t lo = std::stoul(m[1].str());
  const std::size_t hi = m[2].matched ? std::stoul(m[2].str()) : lo;
  if (lo > hi) throw UsageError("--dims range " + s + " is empty");
  return {lo, hi};
}

ParadoxType paradox_flag(const std::string& s) {
  try {
    return parse_paradox_type(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

optim::Objective objective_flag(const std::string& name, std::size_t target_n, ParadoxType type) {
  optim::Objective o;
  try {
    o = optim::Objective::parse(name, target_n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.paradox_type() != type) {
    throw UsageError("objective " + name + " does not apply to Type-" + to_string(type));
  }
  return o;
}

void print_residual_violations(const ConstraintReport& r, double tol, std::ostream& out) {
  out << "constraint violation (Type-" << to_string(r.paradox_type) << ", tolerance "
      << fmt(tol, 3) << "):\n";
  for (const auto& [name, value] : r.residuals) {
    if (value > tol) out << "  " << name << " = " << fmt(value, 6) << "\n";
  }
}

void print_table(const ProbabilityTable& t, std::ostream& out) {
  out << "probability table p(i,j) = |q_ij|^2 (row i = A2 outcome, column j = B2 outcome):\n";
  for (std::size_t i = 0; i < t.dim(); ++i) {
    out << " ";
    for (std::size_t j = 0; j < t.dim(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.8f", t.p(i, j));
      out << buf;
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------- bound

int cmd_bound(std::ostream& out) {
  const double split = (3.0 - std::sqrt(5.0)) / 2.0;
  out << "max P_I = max P_II(1,2) = (5*sqrt(5) - 11)/2 = " << fmt(analytic_max(), 15) << "\n";
  out << "optimal norm split: |h12|^2 = |h21|^2 = (3-sqrt(5))/2 = " << fmt(split, 15)
      << ", |H22|^2 = sqrt(5) - 2 = " << fmt(std::sqrt(5.0) - 2.0, 15) << "\n";
  out << "optimal Type-I state: a|01> + a|10> + e^{i theta} sqrt(1-2a^2)|11>, a = "
      << fmt(std::sqrt(split), 15) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
  std::string path;
  std::string type;
  std::size_t target_n = 0;
  bool renormalize = false;
  double gs_tol = 1e-10;
  double constraint_tol = 1e-6;
  std::string out_path;
  bool json = false;
};

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const ParadoxType type = paradox_flag(o.type);
  const StateMatrix h = io::state_from_matrix(io::parse_state(io::read_text_file(o.path)),
                                              o.renormalize);
  const std::size_t k = h.dim();
  if (k < 2) throw UsageError("states must have dimension >= 2");

  io::ResultFile rf;
  rf.paradox = type;
  rf.dim = k;
  rf.state = h.amplitudes();
  rf.converged = true;

  ConstraintReport report;
  std::optional<ProbabilityTable> table;
  if (type == ParadoxType::kI) {
    if (std::abs(h(0, 0)) > o.constraint_tol) {
      print_residual_violations({ParadoxType::kI, {{"h11", std::abs(h(0, 0))}}, std::abs(h(0, 0))},
                                o.constraint_tol, out);
      return kExitCheckFailed;
    }
    const SettingPair s = type1_settings(h, o.gs_tol, o.constraint_tol);
    report = type1_constraint_residuals(h, s);
    table.emplace(transform_state(h, s));
    rf.objective = "P_I";
    rf.target_n = 1;
    rf.best_value = table->type1();
    rf.bound = analytic_max();
  } else {
    const std::size_t n = o.target_n == 0 ? k : o.target_n;
    if (n < 2 || n > k) throw UsageError("--target-n must lie in [2, dim]");
    const ConstraintReport state = type2_state_residuals(h);
    if (state.max_residual > o.constraint_tol) {
      print_residual_violations(state, o.constraint_tol, out);
      return kExitCheckFailed;
    }
    const SettingPair s = type2_settings(h, o.gs_tol, CompletionOrder::kCanonical, o.constraint_tol);
    report = type2_constraint_residuals(h, s);
    table.emplace(transform_state(h, s));
    rf.objective = n == 2 ? "pair12" : "partial_sum";
    rf.target_n = n;
    rf.best_value = table->partial(n);
    if (n == 2) rf.bound = analytic_max();
  }
  if (report.max_residual > o.constraint_tol) {
    print_residual_violations(report, o.constraint_tol, out);
    return kExitCheckFailed;
  }

  if (!o.out_path.empty()) io::write_text_file(o.out_path, io::result_to_json(rf));
  if (o.json) {
    out << io::result_to_json(rf);
    return kExitOk;
  }

  out << "paradox " << to_string(type) << ", dim " << k << ", gs_tol " << fmt(o.gs_tol, 3) << "\n";
  out << "constraint max_residual = " << fmt(report.max_residual, 3) << "\n";
  print_table(*table, out);
  out << "P_I = " << fmt(table->type1()) << "\n";
  out << "pair12 = " << fmt(table->pair12()) << "\n";
  if (type == ParadoxType::kII) {
    out << "partial_sum(" << rf.target_n << ") = " << fmt(table->partial(rf.target_n)) << "\n";
  }
  out << "full_PII = " << fmt(table->full_pii()) << "\n";
  out << "total = " << fmt(table->total(), 15) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeOptions {
  std::string type;
  std::size_t dim = 0;
  std::string objective;
  std::size_t target_n = 0;
  optim::OptimizationConfig cfg;
  bool complex = false;
  std::string out_path;
};

int cmd_optimize(const OptimizeOptions& o, std::ostream& out) {
  const ParadoxType type = paradox_flag(o.type);
  const std::string name =
      !o.objective.empty() ? o.objective : (type == ParadoxType::kI ? "P_I" : "pair12");
  const optim::Objective objective = objective_flag(name, o.target_n, type);
  if (o.dim < 2) throw UsageError("--dim must be >= 2");
  if (objective.kind == optim::ObjectiveKind::kPartialSum && objective.target_n > o.dim) {
    throw UsageError("--target-n exceeds --dim");
  }
  const optim::Mode mode = o.complex ? optim::Mode::kComplex : optim::Mode::kRealNonnegative;

  const optim::OptimizationResult r =
      optim::maximize(objective, optim::Parametrization(type, o.dim, mode), o.cfg);
  const io::ResultFile rf = io::to_result_file(r);

  const std::string path =
      !o.out_path.empty()
          ? o.out_path
          : in_output_dir("opt_" + to_string(type) + "_" + objective_tag(objective) + "_k" +
                          std::to_string(o.dim) + "_seed" + std::to_string(o.cfg.seed) + ".json");
  io::write_text_file(path, io::result_to_json(rf));

  out << objective.label() << " " << o.dim << " " << fmt(r.best_value, 12) << " "
      << (r.bound ? fmt(*r.bound, 12) : "NA") << " "
      << (r.bound ? fmt(*r.bound - r.best_value, 3) : "NA") << "\n";
  out << "wrote " << path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- scan

struct ScanOptions {
  std::string type = "II";
  std::string objective = "partial_sum";
  std::size_t target_n = 0;
  std::string dims;
  optim::OptimizationConfig cfg;
  bool complex = false;
  std::string csv_path;
  bool save_results = false;
};

int cmd_scan(const ScanOptions& o, std::ostream& out) {
  const ParadoxType type = paradox_flag(o.type);
  if (o.objective == "full_PII") {
    throw UsageError("full_PII grows with the dimension; scan checks dimension independence only");
  }
  std::size_t target_n = o.target_n;
  if (target_n == 0) {
    if (o.objective == "partial_sum") throw UsageError("partial_sum scans need --target-n");
    target_n = 2;
  }
  const optim::Objective objective = objective_flag(o.objective, target_n, type);
  if (objective.kind != optim::ObjectiveKind::kPartialSum && target_n != 2) {
    throw UsageError(o.objective + " scans use --target-n 2");
  }
  const auto [lo, hi] = parse_dims(o.dims);
  if (lo < target_n) throw UsageError("--dims must start at or above --target-n");

  const optim::Mode mode = o.complex ? optim::Mode::kComplex : optim::Mode::kRealNonnegative;
  const optim::ScanReport report = optim::scan_dimensions(objective, target_n, lo, hi, o.cfg, mode);

  std::string csv = "paradox,objective,target_n,dim,best_value,abs_dev_from_ref,seed,restarts,wall_ms\n";
  bool ok = true;
  for (const auto& row : report.rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", row.wall_ms);
    csv += to_string(type) + "," + objective.name() + "," + std::to_string(target_n) + "," +
           std::to_string(row.dim) + "," + io::format_double(row.best_value) + "," +
           io::format_double(row.deviation) + "," + std::to_string(row.seed) + "," +
           std::to_string(row.restarts) + "," + wall + "\n";
    ok = ok && row.deviation < kScanDeviationTol;
  }
  const std::string tag = "scan_" + to_string(type) + "_" + objective_tag(objective) + "_k" +
                          std::to_string(lo) + "-" + std::to_string(hi) + "_seed" +
                          std::to_string(o.cfg.seed);
  const std::string csv_path = !o.csv_path.empty() ? o.csv_path : in_output_dir(tag + ".csv");
  io::write_text_file(csv_path, csv);
  if (o.save_results) {
    for (const auto& row : report.rows) {
      io::write_text_file(in_output_dir(tag + "_dim" + std::to_string(row.dim) + ".json"),
                          io::result_to_json(io::to_result_file(row.result)));
    }
  }

  out << "scan " << objective.label() << " reference(dim " << target_n
      << ") = " << fmt(report.reference_value, 12) << "\n";
  for (const auto& row : report.rows) {
    out << "  dim " << row.dim << "  best " << fmt(row.best_value, 12) << "  |dev| "
        << fmt(row.deviation, 3) << (row.deviation < kScanDeviationTol ? "" : "  BREACH") << "\n";
  }
  out << "wrote " << csv_path << "\n";
  if (!ok) {
    out << "deviation breach: some dimension differs from the reference by >= "
        << fmt(kScanDeviationTol, 3) << " (dimension dependence candidate)\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string path;
  double gs_tol = 1e-10;
  double constraint_tol = 1e-6;
  double reference = 0.0;
  bool has_reference = false;
  std::size_t threads = 0;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const io::ResultFile rf = io::parse_result(io::read_text_file(o.path));
  const optim::Objective objective = rf.objective_spec();
  if (objective.paradox_type() != rf.paradox) {
    throw io::ParseError("objective " + rf.objective + " does not match paradox " +
                         to_string(rf.paradox));
  }

  int failures = 0;
  auto check = [&](bool pass, const std::string& name, const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    if (!pass) ++failures;
  };

  const double norm = frobenius_norm(rf.state);
  check(std::abs(norm - 1.0) <= 1e-9, "normalization", "|H| = " + fmt(norm, 17));
  const StateMatrix h = StateMatrix::normalized(rf.state);

  double recomputed = 0.0;
  bool evaluated = true;
  try {
    recomputed = optim::evaluate(objective, h, o.gs_tol);
  } catch (const std::exception& e) {
    evaluated = false;
    check(false, "re-evaluation", std::string("could not evaluate: ") + e.what());
  }
  if (evaluated) {
    const double gap = std::abs(recomputed - rf.best_value);
    check(gap <= kReevaluationTol, "re-evaluation",
          (gap <= kReevaluationTol ? "" : "re-evaluation mismatch: ") + std::string("file ") +
              fmt(rf.best_value, 17) + ", recomputed " + fmt(recomputed, 17));
  }

  ConstraintReport report;
  try {
    if (rf.paradox == ParadoxType::kI) {
      report = type1_constraint_residuals(h, type1_settings(h, o.gs_tol, o.constraint_tol));
    } else {
      report = type2_constraint_residuals(
          h, type2_settings(h, o.gs_tol, CompletionOrder::kCanonical, o.constraint_tol));
    }
    check(report.max_residual <= o.constraint_tol, "constraints",
          "max residual " + fmt(report.max_residual, 3));
  } catch (const ConstraintViolation& e) {
    check(false, "constraints", e.what());
  }

  if (const auto bound = optim::analytic_bound(objective)) {
    const bool recorded = rf.bound && std::abs(*rf.bound - *bound) <= 1e-15;
    check(recorded && rf.best_value <= *bound + kBoundSlack, "bound",
          "bound saturation: " + fmt(rf.best_value, 6) + "/" + fmt(*bound, 6) +
              (recorded ? "" : " (recorded bound missing or wrong)"));
  }

  if (objective.kind == optim::ObjectiveKind::kPartialSum) {
    double reference = rf.best_value;
    std::string source = "own value (dim == target_n)";
    if (o.has_reference) {
      reference = o.reference;
      source = "--reference";
    } else if (rf.dim != objective.target_n) {
      optim::OptimizationConfig cfg;
      cfg.seed = rf.seed;
      cfg.restarts = std::max<std::size_t>(rf.restarts, 1);
      cfg.threads = o.threads;
      cfg.gs_tol = o.gs_tol;
      reference = optim::maximize(objective,
                                  optim::Parametrization(ParadoxType::kII, objective.target_n),
                                  cfg)
                      .best_value;
      source = "optimized at dim " + std::to_string(objective.target_n);
    }
    optim::OptimizationResult r;
    r.objective = objective;
    r.paradox_type = rf.paradox;
    r.dim = rf.dim;
    r.best_value = rf.best_value;
    r.best_state = h;
    const auto sf = optim::standard_form_check(r, objective.target_n, reference);
    std::string sv;
    for (double s : sf.singular_values) sv += (sv.empty() ? "" : " ") + fmt(s, 6);
    check(sf.rank_ok, "standard form rank",
          "rank_ok " + std::string(sf.rank_ok ? "true" : "false") + ", " +
              std::to_string(sf.numerical_rank) + " singular values above 1e-4 [" + sv + "]");
    check(sf.value_ok, "standard form value",
          "value_ok " + std::string(sf.value_ok ? "true" : "false") + ", reference " +
              fmt(reference, 10) + " (" + source + ")");
  }

  out << (failures == 0 ? "verify: all checks passed\n"
                        : "verify: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- oracle

struct OracleOptions {
  std::string method;
  std::string type = "I";
  std::size_t dim = 2;
  std::size_t samples = 100000;
  std::size_t resolution = 0;
  std::uint64_t seed = 0;
  std::string objective;
  std::size_t target_n = 0;
  std::string csv_path;
  std::size_t threads = 0;
};

int cmd_oracle(const OracleOptions& o, std::ostream& out) {
  const ParadoxType type = paradox_flag(o.type);
  oracle::OracleReport r;
  std::optional<double> bound;
  if (o.method == "grid") {
    r = oracle::grid_maximize_norm_bound(o.resolution == 0 ? 2000 : o.resolution, o.threads);
    bound = analytic_max();
  } else if (o.method == "exhaustive") {
    r = oracle::exhaustive_type1_dim2(o.resolution == 0 ? 1000 : o.resolution, o.threads);
    bound = analytic_max();
  } else if (o.method == "sampling") {
    oracle::Quantity q;
    if (type == ParadoxType::kII) {
      const std::string name = o.objective.empty() ? "pair12" : o.objective;
      if (name == "pair12") {
        q = {oracle::Quantity::Kind::kPair12, 0};
        bound = analytic_max();
      } else if (name == "partial_sum") {
        if (o.target_n < 2 || o.target_n > o.dim) throw UsageError("--target-n must lie in [2, dim]");
        q = {oracle::Quantity::Kind::kPartialSum, o.target_n};
      } else if (name == "full_PII") {
        q = {oracle::Quantity::Kind::kFullPII, 0};
      } else {
        throw UsageError("sampling objective must be pair12, partial_sum or full_PII");
      }
    } else {
      if (!o.objective.empty() && o.objective != "P_I") throw UsageError("Type-I sampling measures P_I");
      bound = analytic_max();
    }
    if (o.dim < 2) throw UsageError("--dim must be >= 2");
    if (o.samples == 0) throw UsageError("--samples must be >= 1");
    r = oracle::random_state_sampling(type, o.dim, o.samples, o.seed, q, o.threads);
  } else {
    throw UsageError("--method must be grid, sampling or exhaustive");
  }

  out << "oracle method=" << r.method << " paradox=" << to_string(r.paradox_type)
      << " dim=" << (r.dim ? std::to_string(r.dim) : std::string("any")) << " quantity=" << r.quantity
      << (r.method == "sampling" ? " samples=" : " resolution=") << r.resolution_or_samples;
  if (r.seed) out << " seed=" << *r.seed;
  out << "\n";
  out << "best_value = " << fmt(r.best_value, 12) << "\n";
  out << "best_point " << r.best_point_description << "\n";
  const bool within = !bound || r.best_value <= *bound + kBoundSlack;
  if (bound) {
    out << "analytic bound = " << fmt(*bound, 12) << (within ? " (not exceeded)" : " (EXCEEDED)")
        << "\n";
  }
  if (!o.csv_path.empty()) {
    io::write_text_file(o.csv_path,
                        "method,paradox,dim,quantity,resolution_or_samples,seed,best_value\n" +
                            r.method + "," + to_string(r.paradox_type) + "," +
                            std::to_string(r.dim) + "," + r.quantity + "," +
                            std::to_string(r.resolution_or_samples) + "," +
                            (r.seed ? std::to_string(*r.seed) : std::string()) + "," +
                            io::format_double(r.best_value) + "\n");
  }
  return within ? kExitOk : kExitCheckFailed;
}

void add_optimizer_flags(CLI::App* sub, optim::OptimizationConfig& cfg) {
  sub->add_option("--restarts", cfg.restarts, "Independent Nelder-Mead starts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  sub->add_option("--max-iterations", cfg.max_iterations, "Iteration budget per start")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--tolerance", cfg.tolerance, "Simplex value-spread tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--scale", cfg.initial_scale, "Initial simplex scale")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy-paradox nonlocality probabilities: bounds, evaluation, optimization"};
  app.name("hardy");
  app.require_subcommand(1);

  auto* bound = app.add_subcommand("bound", "Print the dimension-independent maximum");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a state file under a paradox type");
  eval_cmd->add_option("state", eval.path, "StateFile JSON")->required();
  eval_cmd->add_option("--type", eval.type, "I or II")->required();
  eval_cmd->add_option("--target-n", eval.target_n, "Partial-sum order (Type-II; default dim)");
  eval_cmd->add_flag("--renormalize", eval.renormalize, "Rescale states whose norm is within 1e-3 of 1");
  eval_cmd->add_option("--gs-tol", eval.gs_tol, "Gram-Schmidt dependence threshold")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--constraint-tol", eval.constraint_tol, "Constraint residual tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--out", eval.out_path, "Also write a ResultFile");
  eval_cmd->add_flag("--json", eval.json, "Print the ResultFile JSON instead of the table");

  OptimizeOptions opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Maximize a Hardy probability");
  opt_cmd->add_option("--type", opt.type, "I or II")->required();
  opt_cmd->add_option("--dim", opt.dim, "Outcomes per party")->required();
  opt_cmd->add_option("--objective", opt.objective, "P_I | pair12 | partial_sum | full_PII");
  opt_cmd->add_option("--target-n", opt.target_n, "Partial-sum order");
  add_optimizer_flags(opt_cmd, opt.cfg);
  opt_cmd->add_flag("--complex", opt.complex, "Search complex amplitudes");
  opt_cmd->add_option("--out", opt.out_path, "ResultFile path (default $HARDY_OUT_DIR or .)");

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Check dimension independence of a maximum");
  scan_cmd->add_option("--type", scan.type, "I or II")->capture_default_str();
  scan_cmd->add_option("--objective", scan.objective, "partial_sum | pair12 | P_I")
      ->capture_default_str();
  scan_cmd->add_option("--target-n", scan.target_n, "Reference dimension / partial-sum order");
  scan_cmd->add_option("--dims", scan.dims, "Dimension range a..b")->required();
  add_optimizer_flags(scan_cmd, scan.cfg);
  scan_cmd->add_flag("--complex", scan.complex, "Search complex amplitudes");
  scan_cmd->add_option("--csv", scan.csv_path, "CSV path (default $HARDY_OUT_DIR or .)");
  scan_cmd->add_flag("--save-results", scan.save_results, "Write one ResultFile per dimension");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a ResultFile");
  verify_cmd->add_option("result", verify.path, "ResultFile JSON")->required();
  verify_cmd->add_option("--gs-tol", verify.gs_tol, "Gram-Schmidt dependence threshold")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--constraint-tol", verify.constraint_tol, "Constraint residual tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* ref_opt = verify_cmd->add_option("--reference", verify.reference,
                                         "Reference partial-sum maximum at dim == target_n");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads for the reference run");

  OracleOptions orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force baselines");
  oracle_cmd->add_option("--method", orc.method, "grid | sampling | exhaustive")->required();
  oracle_cmd->add_option("--type", orc.type, "I or II")->capture_default_str();
  oracle_cmd->add_option("--dim", orc.dim, "Dimension (sampling)")->capture_default_str();
  oracle_cmd->add_option("--samples", orc.samples, "Sample count")->capture_default_str();
  oracle_cmd->add_option("--resolution", orc.resolution,
                         "Grid resolution (default 2000 grid, 1000 exhaustive)");
  oracle_cmd->add_option("--seed", orc.seed, "Sampling seed")->capture_default_str();
  oracle_cmd->add_option("--objective", orc.objective, "Type-II sampling quantity");
  oracle_cmd->add_option("--target-n", orc.target_n, "Partial-sum order");
  oracle_cmd->add_option("--csv", orc.csv_path, "Also write a one-row CSV");
  oracle_cmd->add_option("--threads", orc.threads, "Worker threads")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hardy: " << e.what() << "\n";
    return kExitUsage;
  }

  verify.has_reference = ref_opt->count() > 0;

  try {
    if (bound->parsed()) return cmd_bound(out);
    if (eval_cmd->parsed()) return cmd_eval(eval, out);
    if (opt_cmd->parsed()) return cmd_optimize(opt, out);
    if (scan_cmd->parsed()) return cmd_scan(scan, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
    if (oracle_cmd->parsed()) return cmd_oracle(orc, out);
  } catch (const ConstraintViolation& e) {
    out << "constraint violation: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "hardy: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hardy::cli
