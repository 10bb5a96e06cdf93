#pragma once

// Nelder-Mead with dimension-adaptive coefficients (Gao & Han). Included from
// optim.hpp; not a standalone header.

#include <algorithm>
#include <numeric>
#include <type_traits>
#include <vector>

namespace hardy::optim {

namespace detail {

template <class F>
struct Simplex {
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;  // negated objective, minimized

  void build(F& f, const std::vector<double>& center, double scale) {
    const std::size_t n = center.size();
    vertices.assign(n + 1, center);
    values.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) vertices[i + 1][i] += scale;
    for (std::size_t i = 0; i <= n; ++i) values[i] = -f(vertices[i]);
  }

  void sort() {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> v2;
    std::vector<double> f2;
    v2.reserve(idx.size());
    f2.reserve(idx.size());
    for (std::size_t i : idx) {
      v2.push_back(std::move(vertices[i]));
      f2.push_back(values[i]);
    }
    vertices = std::move(v2);
    values = std::move(f2);
  }
};

}  // namespace detail

template <class F>
LocalSearchResult nelder_mead_maximize(F&& f, std::vector<double> x0, double scale,
                                       std::size_t max_iterations, double tolerance) {
  using Fn = std::remove_reference_t<F>;
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  detail::Simplex<Fn> s;
  s.build(f, x0, scale);
  s.sort();

  LocalSearchResult out;
  double last_rebuild_best = s.values.front();
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto along = [&](double t, std::vector<double>& dst) {
    const auto& worst = s.vertices.back();
    for (std::size_t i = 0; i < n; ++i) dst[i] = centroid[i] + t * (centroid[i] - worst[i]);
  };

  while (out.iterations < max_iterations) {
    if (s.values.back() - s.values.front() <= tolerance) {
      // Converged locally; rebuild to escape false convergence on flat ridges.
      if (last_rebuild_best - s.values.front() <= tolerance && out.iterations > 0) {
        out.converged = true;
        break;
      }
      last_rebuild_best = s.values.front();
      const std::vector<double> best = s.vertices.front();
      s.build(f, best, scale);
      s.sort();
      ++out.iterations;
      continue;
    }
    ++out.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += s.vertices[v][i];
    }
    for (auto& c : centroid) c /= dn;

    along(alpha, trial);
    const double fr = -f(trial);
    if (fr < s.values.front()) {
      along(beta, trial2);
      const double fe = -f(trial2);
      if (fe < fr) {
        s.vertices.back() = trial2;
        s.values.back() = fe;
      } else {
        s.vertices.back() = trial;
        s.values.back() = fr;
      }
    } else if (fr < s.values[n - 1]) {
      s.vertices.back() = trial;
      s.values.back() = fr;
    } else {
      const bool outside = fr < s.values.back();
      along(outside ? gamma : -gamma, trial2);
      const double fc = -f(trial2);
      if (fc < (outside ? fr : s.values.back())) {
        s.vertices.back() = trial2;
        s.values.back() = fc;
      } else {
        const std::vector<double> best = s.vertices.front();
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i) {
            s.vertices[v][i] = best[i] + delta * (s.vertices[v][i] - best[i]);
          }
          s.values[v] = -f(s.vertices[v]);
        }
      }
    }
    s.sort();
  }

  out.x = s.vertices.front();
  out.value = -s.values.front();
  return out;
}

}  // namespace hardy::optim
