#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace reid {

struct NelderMeadOptions {
  int max_iterations = 100;
  double min_diameter = 1e-3;  // stop once every pair of vertices is this close
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  std::optional<double> lower_bound;  // coordinates are clamped to it when set
};

struct NelderMeadResult {
  std::vector<double> best;  // best point ever evaluated
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  std::vector<double> best_history;  // best value after each iteration
};

using Objective = std::function<double(const std::vector<double>&)>;

// Minimizes `f` starting from `simplex` (n + 1 points of dimension n).
NelderMeadResult nelder_mead(const Objective& f, std::vector<std::vector<double>> simplex,
                             const NelderMeadOptions& options = {});

}  // namespace reid
