#include "revsum/optim.h"

#include <cmath>
#include <deque>
#include <numeric>

namespace revsum {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion: returns -H g.
std::vector<double> search_direction(const std::deque<Correction>& history, const std::vector<double>& g) {
  std::vector<double> q = g;
  std::vector<double> alpha(history.size());
  for (size_t m = history.size(); m-- > 0;) {
    const auto& c = history[m];
    alpha[m] = c.rho * dot(c.s, q);
    for (size_t i = 0; i < q.size(); ++i) q[i] -= alpha[m] * c.y[i];
  }
  if (!history.empty()) {
    const auto& last = history.back();
    double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (size_t m = 0; m < history.size(); ++m) {
    const auto& c = history[m];
    double beta = c.rho * dot(c.y, q);
    for (size_t i = 0; i < q.size(); ++i) q[i] += (alpha[m] - beta) * c.s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, std::vector<double> x0, const LbfgsOptions& options) {
  const size_t n = x0.size();
  LbfgsResult result;
  result.x = std::move(x0);
  std::vector<double> g(n);
  result.value = f(result.x, g);
  result.gradient_norm = std::sqrt(dot(g, g));
  if (n == 0 || result.gradient_norm < options.gradient_tolerance) {
    result.converged = true;
    return result;
  }

  std::deque<Correction> history;
  std::vector<double> x_new(n), g_new(n);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::vector<double> d = search_direction(history, g);
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      history.clear();
      d = g;
      for (double& v : d) v = -v;
      slope = -result.gradient_norm * result.gradient_norm;
    }
    double step = history.empty() ? std::min(1.0, 1.0 / result.gradient_norm) : 1.0;

    bool accepted = false;
    double f_new = 0.0;
    for (int bt = 0; bt < options.max_backtracks; ++bt) {
      for (size_t i = 0; i < n; ++i) x_new[i] = result.x[i] + step * d[i];
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= result.value + options.armijo * step * slope &&
          f_new < result.value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    result.iterations = iter + 1;
    if (!accepted) break;  // no further decrease is representable

    Correction c{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (size_t i = 0; i < n; ++i) {
      c.s[i] = x_new[i] - result.x[i];
      c.y[i] = g_new[i] - g[i];
    }
    double sy = dot(c.s, c.y);
    if (sy > 1e-12 * std::sqrt(dot(c.s, c.s) * dot(c.y, c.y))) {
      c.rho = 1.0 / sy;
      history.push_back(std::move(c));
      if (static_cast<int>(history.size()) > options.history) history.pop_front();
    }

    result.x.swap(x_new);
    g.swap(g_new);
    result.value = f_new;
    result.gradient_norm = std::sqrt(dot(g, g));
    if (result.gradient_norm < options.gradient_tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace revsum
