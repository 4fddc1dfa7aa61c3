#include "reid/parsing/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reid/error.hpp"

namespace reid {

namespace {

using Point = std::vector<double>;

Point lerp(const Point& from, const Point& to, double t) {
  Point out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[i] = from[i] + t * (to[i] - from[i]);
  return out;
}

double diameter(const std::vector<Point>& simplex) {
  double best = 0.0;
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    for (std::size_t j = i + 1; j < simplex.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < simplex[i].size(); ++k) s += (simplex[i][k] - simplex[j][k]) * (simplex[i][k] - simplex[j][k]);
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<std::vector<double>> simplex,
                             const NelderMeadOptions& options) {
  const std::size_t n = simplex.empty() ? 0 : simplex.front().size();
  if (n == 0 || simplex.size() != n + 1) throw InvalidArgument("simplex needs n + 1 points of dimension n >= 1");
  for (const auto& p : simplex) {
    if (p.size() != n) throw InvalidArgument("simplex points differ in dimension");
  }

  NelderMeadResult result;
  auto clamp = [&](Point p) {
    if (options.lower_bound) {
      for (auto& v : p) v = std::max(v, *options.lower_bound);
    }
    return p;
  };
  auto eval = [&](const Point& p) {
    const double v = f(p);
    ++result.evaluations;
    if (result.evaluations == 1 || v < result.value) {
      result.value = v;
      result.best = p;
    }
    return v;
  };

  for (auto& p : simplex) p = clamp(p);
  std::vector<double> values;
  for (const auto& p : simplex) values.push_back(eval(p));

  std::vector<std::size_t> order(n + 1);
  while (result.iterations < options.max_iterations && diameter(simplex) >= options.min_diameter) {
    ++result.iterations;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Point> sp;
    std::vector<double> sv;
    for (auto i : order) {
      sp.push_back(simplex[i]);
      sv.push_back(values[i]);
    }
    simplex = std::move(sp);
    values = std::move(sv);

    Point centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    const Point& worst = simplex[n];
    const Point xr = clamp(lerp(centroid, worst, -options.reflection));
    const double fr = eval(xr);

    if (fr < values[0]) {
      const Point xe = clamp(lerp(centroid, xr, options.expansion));
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        values[n] = fe;
      } else {
        simplex[n] = xr;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = xr;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      const Point xc = outside ? clamp(lerp(centroid, xr, options.contraction))
                               : clamp(lerp(centroid, worst, options.contraction));
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[n])) {
        simplex[n] = xc;
        values[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          simplex[i] = clamp(lerp(simplex[0], simplex[i], options.shrink));
          values[i] = eval(simplex[i]);
        }
      }
    }
    result.best_history.push_back(result.value);
  }
  return result;
}

}  // namespace reid
