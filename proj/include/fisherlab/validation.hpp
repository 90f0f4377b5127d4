// Copyright 2026 The FisherLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fisherlab::validation {

struct Check {
    std::string name;
    bool mandatory;
    bool passed;
    double metric;    // observed error (or value) that was compared
    double tolerance; // bound the metric had to respect
    std::string detail;
};

struct Options {
    bool strict_p2 = false;
    int threads = 1;
    std::uint64_t seed = 0;
    int random_draws = 1000;
};

/// Cross-checks every closed form against the simulation.
std::vector<Check> run_all(const Options &options);

} // namespace fisherlab::validation
