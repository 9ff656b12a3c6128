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

#ifndef GRIDFUSION_SIM_SCENARIO_IO_H_
#define GRIDFUSION_SIM_SCENARIO_IO_H_

#include <string>

#include "gridfusion/sim/scenario.h"

namespace gridfusion {

// YAML scenario files. Errors are reported as Error(kParse) with a message
// of the form "<source>:<line>:<column>: <field>: <problem>".
Scenario ParseScenario(const std::string& text, const std::string& source_name = "<string>");
Scenario LoadScenarioFile(const std::string& path);

std::string SerializeScenario(const Scenario& scenario);
void SaveScenarioFile(const Scenario& scenario, const std::string& path);

}  // namespace gridfusion

#endif  // GRIDFUSION_SIM_SCENARIO_IO_H_
