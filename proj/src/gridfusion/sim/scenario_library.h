/*
 * Copyright 2026 The Gridfusion Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRIDFUSION_SIM_SCENARIO_LIBRARY_H_
#define GRIDFUSION_SIM_SCENARIO_LIBRARY_H_

#include <optional>
#include <string>
#include <vector>

#include "gridfusion/sim/scenario.h"

namespace gridfusion {

// Names of the built-in scenarios, in suite order.
std::vector<std::string> BuiltinScenarioNames();

// nullopt for unknown names.
std::optional<Scenario> BuiltinScenario(const std::string& name);

}  // namespace gridfusion

#endif  // GRIDFUSION_SIM_SCENARIO_LIBRARY_H_
