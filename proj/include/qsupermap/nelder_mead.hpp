// Copyright 2026 The qsupermap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace qsm {

struct NelderMeadOptions {
  int max_iterations = 2000;
  /// Stop once the simplex values span less than this.
  double f_tolerance = 1e-10;
  /// ... and the simplex vertices lie within this of the best vertex.
  double x_tolerance = 1e-8;
  double initial_step = 0.25;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` with the classic reflection / expansion / contraction /
/// shrink simplex (coefficients 1, 2, 1/2, 1/2).
template <typename F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& start,
                             const NelderMeadOptions& opts = {}) {
  const Eigen::Index n = start.size();
  std::vector<Eigen::VectorXd> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  NelderMeadResult res;

  auto eval = [&](const Eigen::VectorXd& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  for (Eigen::Index i = 0; i < n; ++i) {
    simplex[i + 1](i) += opts.initial_step;
  }
  for (Eigen::Index i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<Eigen::Index> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<Eigen::VectorXd> s(n + 1);
    std::vector<double> v(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) {
      s[i] = std::move(simplex[order[i]]);
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  for (res.iterations = 0; res.iterations < opts.max_iterations;
       ++res.iterations) {
    sort_simplex();

    double x_spread = 0.0;
    for (Eigen::Index i = 1; i <= n; ++i) {
      x_spread = std::max(x_spread,
                          (simplex[i] - simplex[0]).lpNorm<Eigen::Infinity>());
    }
    if (values[n] - values[0] <= opts.f_tolerance &&
        x_spread <= opts.x_tolerance) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[n]);
    const double fr = eval(reflected);
    if (fr < values[0]) {
      const Eigen::VectorXd expanded =
          centroid + 2.0 * (centroid - simplex[n]);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[n] = expanded;
        values[n] = fe;
      } else {
        simplex[n] = reflected;
        values[n] = fr;
      }
      continue;
    }
    if (fr < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = fr;
      continue;
    }

    const bool outside = fr < values[n];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[n] - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : values[n])) {
      simplex[n] = contracted;
      values[n] = fc;
      continue;
    }

    for (Eigen::Index i = 1; i <= n; ++i) {
      simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
      values[i] = eval(simplex[i]);
    }
  }

  sort_simplex();
  res.x = simplex[0];
  res.value = values[0];
  return res;
}

}  // namespace qsm
