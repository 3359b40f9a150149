/*
 * include/expectiles/expectile.hpp
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
 */

#ifndef EXPECTILES_EXPECTILE_HPP_
#define EXPECTILES_EXPECTILE_HPP_

#include "expectiles/asymptotics.hpp"
#include "expectiles/distributions.hpp"
#include "expectiles/empirical.hpp"
#include "expectiles/io.hpp"
#include "expectiles/quadrature.hpp"
#include "expectiles/rng.hpp"
#include "expectiles/simulation.hpp"
#include "expectiles/special_functions.hpp"
#include "expectiles/stable.hpp"

#endif  // EXPECTILES_EXPECTILE_HPP_
