#pragma once

#include <functional>
#include <span>
#include <vector>

namespace revsum {

struct LbfgsOptions {
  int max_iterations = 50;
  double gradient_tolerance = 1e-5;  // on the Euclidean gradient norm
  int history = 7;
  int max_backtracks = 60;
  double armijo = 1e-4;
};

struct LbfgsResult {
  std::vector<double> x;  // best iterate seen
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Returns f(x) and writes the gradient into `grad`. May return a
// non-finite value for points outside the domain; those are rejected by the
// line search.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

// Limited-memory BFGS with a backtracking Armijo line search. Every accepted
// step strictly decreases the objective, so the returned value is never
// above f(x0).
LbfgsResult minimize_lbfgs(const Objective& f, std::vector<double> x0, const LbfgsOptions& options = {});

}  // namespace revsum
