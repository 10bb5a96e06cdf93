#include "hardy/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hardy::io {

namespace {

using nlohmann::json;

std::string pad(int indent, int level) {
  return indent > 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : std::string();
}

std::string grid_to_json(const ComplexMatrix& m, bool imag) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += format_double(imag ? m(i, j).imag() : m(i, j).real());
    }
    s += ']';
  }
  return s + "]";
}

std::string state_body(const ComplexMatrix& m, int indent, int level) {
  bool has_imag = false;
  for (const auto& z : m.entries()) has_imag = has_imag || z.imag() != 0.0;
  const std::string nl = indent > 0 ? "\n" : "";
  const std::string sep = indent > 0 ? ": " : ":";
  const std::string in = pad(indent, level + 1);
  std::string s = "{" + nl;
  s += in + "\"kind\"" + sep + "\"state\"," + nl;
  s += in + "\"rows\"" + sep + std::to_string(m.rows()) + "," + nl;
  s += in + "\"cols\"" + sep + std::to_string(m.cols()) + "," + nl;
  s += in + "\"re\"" + sep + grid_to_json(m, false);
  if (has_imag) s += "," + nl + in + "\"im\"" + sep + grid_to_json(m, true);
  s += nl + pad(indent, level) + "}";
  return s;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::size_t get_size(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(std::string("field '") + name + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double get_double(const json& v, const char* name) {
  if (!v.is_number()) throw ParseError(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

std::vector<double> read_grid(const json& g, std::size_t rows, std::size_t cols, const char* name) {
  if (!g.is_array() || g.size() != rows) {
    throw ParseError(std::string("'") + name + "' must have " + std::to_string(rows) + " rows");
  }
  std::vector<double> out;
  out.reserve(rows * cols);
  for (const auto& row : g) {
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(std::string("'") + name + "' rows must have " + std::to_string(cols) +
                       " entries");
    }
    for (const auto& x : row) out.push_back(get_double(x, name));
  }
  return out;
}

ComplexMatrix state_from_json(const json& j) {
  if (field(j, "kind") != "state") throw ParseError("kind must be \"state\"");
  const std::size_t rows = get_size(j, "rows");
  const std::size_t cols = get_size(j, "cols");
  if (rows == 0 || cols == 0) throw ParseError("state shape must be positive");
  const auto re = read_grid(field(j, "re"), rows, cols, "re");
  std::vector<double> im(rows * cols, 0.0);
  if (j.contains("im")) im = read_grid(j.at("im"), rows, cols, "im");
  std::vector<Complex> entries(rows * cols);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
  try {
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string state_to_json(const ComplexMatrix& m, int indent) { return state_body(m, indent, 0); }

ComplexMatrix parse_state(const std::string& text) { return state_from_json(parse_json(text)); }

StateMatrix state_from_matrix(ComplexMatrix m, bool renormalize) {
  if (!m.square()) throw ParseError("state must be square");
  const double norm = frobenius_norm(m);
  const double gap = std::abs(norm - 1.0);
  std::ostringstream os;
  os.precision(17);
  if (gap <= 1e-6) return StateMatrix::normalized(std::move(m));
  if (renormalize && gap <= 1e-3) return StateMatrix::normalized(std::move(m));
  os << "state norm " << norm << " is not 1 within " << (renormalize ? "1e-3" : "1e-6")
     << (renormalize ? "" : " (use --renormalize for transcribed states)");
  throw ParseError(os.str());
}

optim::Objective ResultFile::objective_spec() const {
  try {
    return optim::Objective::parse(objective, target_n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

ResultFile to_result_file(const optim::OptimizationResult& r) {
  ResultFile f;
  f.paradox = r.paradox_type;
  f.objective = r.objective.name();
  switch (r.objective.kind) {
    case optim::ObjectiveKind::kTypeI: f.target_n = 1; break;
    case optim::ObjectiveKind::kPair12: f.target_n = 2; break;
    case optim::ObjectiveKind::kPartialSum: f.target_n = r.objective.target_n; break;
    case optim::ObjectiveKind::kFullPII: f.target_n = r.dim; break;
  }
  f.dim = r.dim;
  f.best_value = r.best_value;
  f.bound = r.bound;
  f.state = r.best_state.amplitudes();
  f.seed = r.seed;
  f.restarts = r.restarts_used;
  f.converged = r.converged;
  f.wall_ms = r.wall_ms;
  return f;
}

std::string result_to_json(const ResultFile& r) {
  std::string s = "{\n";
  auto line = [&](const char* key, const std::string& value, bool last = false) {
    s += "  \"" + std::string(key) + "\": " + value + (last ? "\n" : ",\n");
  };
  line("kind", "\"opt_result\"");
  line("paradox", "\"" + to_string(r.paradox) + "\"");
  line("objective", "\"" + r.objective + "\"");
  line("target_n", std::to_string(r.target_n));
  line("dim", std::to_string(r.dim));
  line("best_value", format_double(r.best_value));
  line("bound", r.bound ? format_double(*r.bound) : "null");
  line("state", state_body(r.state, 2, 1));
  line("seed", std::to_string(r.seed));
  line("restarts", std::to_string(r.restarts));
  line("converged", r.converged ? "true" : "false");
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
  line("wall_ms", wall);
  line("tool_version", "\"" + r.tool_version + "\"", true);
  return s + "}\n";
}

ResultFile parse_result(const std::string& text) {
  const json j = parse_json(text);
  if (field(j, "kind") != "opt_result") throw ParseError("kind must be \"opt_result\"");
  ResultFile r;
  const json& paradox = field(j, "paradox");
  if (paradox == "I") {
    r.paradox = ParadoxType::kI;
  } else if (paradox == "II") {
    r.paradox = ParadoxType::kII;
  } else {
    throw ParseError("paradox must be \"I\" or \"II\"");
  }
  const json& objective = field(j, "objective");
  if (!objective.is_string()) throw ParseError("objective must be a string");
  r.objective = objective.get<std::string>();
  r.target_n = get_size(j, "target_n");
  r.dim = get_size(j, "dim");
  r.best_value = get_double(field(j, "best_value"), "best_value");
  const json& bound = field(j, "bound");
  if (!bound.is_null()) r.bound = get_double(bound, "bound");
  r.state = state_from_json(field(j, "state"));
  const json& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw ParseError("seed must be a nonnegative integer");
  }
  r.seed = seed.get<std::uint64_t>();
  r.restarts = get_size(j, "restarts");
  const json& converged = field(j, "converged");
  if (!converged.is_boolean()) throw ParseError("converged must be a boolean");
  r.converged = converged.get<bool>();
  r.wall_ms = get_double(field(j, "wall_ms"), "wall_ms");
  const json& version = field(j, "tool_version");
  if (!version.is_string()) throw ParseError("tool_version must be a string");
  r.tool_version = version.get<std::string>();

  if (r.state.rows() != r.dim || r.state.cols() != r.dim) {
    throw ParseError("state shape does not match dim");
  }
  (void)r.objective_spec();
  return r;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace hardy::io
