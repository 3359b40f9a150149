/*
 * demo/limit_demo.cpp
 *
 * Copyright 2026 The expectile-toolkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 *
 * Limit laws of the sample expectile under three population regimes:
 * smooth discrete (normal), atom at the expectile (two-scale normal
 * mixture), and heavy Student t tails (alpha-stable).
 */

#include <cstdio>

#include "expectiles/expectile.hpp"

int main() {
  const expectiles::DiscreteDistribution law({0.0, 1.0, 2.0}, {0.4, 0.5, 0.1});

  const double mu7 = expectiles::discrete_expectile(law, 0.7);
  const expectiles::NormalLimit normal = expectiles::normal_covariance(law, {0.7});
  std::printf("tau 0.7: mu = %.17g, derivative = %.17g, normal limit sigma^2 = %.17g\n",
              mu7, expectiles::expectile_derivative(law, 0.7), normal.sigma[0][0]);

  const double mu8 = expectiles::discrete_expectile(law, 0.8);
  const expectiles::MixtureLimit mixture = expectiles::mixture_limit(law, 0.8);
  std::printf("tau 0.8: mu = %g sits on an atom; mixture limit sigma1 = %.17g, "
              "sigma2 = %.17g, sd_w = %.17g\n",
              mu8, mixture.sigma1, mixture.sigma2, mixture.sd_w);

  const expectiles::StudentT heavy(1.5);
  const double mu = expectiles::solve_expectile(heavy, 0.8);
  const double c = expectiles::t_tail_constant(1.5);
  const expectiles::StableLimit stable =
      expectiles::stable_limit(1.5, c, c, 0.8, heavy.cdf(mu));
  std::printf("t(1.5) tau 0.8: mu = %.17g, stable limit alpha = %g, "
              "beta~ = %.17g, rate n^%.17g\n",
              mu, stable.alpha, stable.beta_tilde, stable.rate_exponent);
  return 0;
}
