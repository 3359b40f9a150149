/*
 * demo/curve_demo.cpp
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
 * Sample expectiles: the breakpoint table, curve evaluation, and the
 * inverse map from a value back to its asymmetry level.
 */

#include <cstdio>
#include <vector>

#include "expectiles/expectile.hpp"

int main() {
  const expectiles::SortedSample sample(
      {0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0});

  std::printf("breakpoints (tau*, order statistic):\n");
  const expectiles::BreakpointTable table = expectiles::breakpoints(sample);
  for (std::size_t j = 0; j < table.size(); ++j)
    std::printf("  %.17g  ->  %g\n", table.taus[j], table.anchors[j]);

  std::printf("expectile curve:\n");
  const expectiles::ExpectileCurve curve(sample);
  for (double tau : {0.1, 0.25, 0.5, 0.7, 0.8, 0.95}) {
    const double value = curve(tau);
    std::printf("  mu(%.2f) = %.17g   tau_of -> %.17g\n", tau, value,
                expectiles::tau_of(sample, value));
  }

  std::printf("slope from the right at the tied value 1: %.17g\n",
              expectiles::curve_derivative(sample, 0.8, expectiles::Side::right));
  return 0;
}
