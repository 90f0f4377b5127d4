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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fisherlab::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 2,
    kNumerical = 3,
    kValidation = 4,
};

/// Runs the command line. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

enum class Quantity { qfi, cfi, ratio, threshold, feasibility, figure2, figure3, figure4 };
enum class Format { csv, json };

std::optional<Quantity> parse_quantity(std::string_view name);

/// Parses "a,b,c" or "lo:hi:count" into a sorted grid. An empty string yields
/// an empty grid. Only plain decimal notation is accepted.
std::vector<double> parse_grid(std::string_view text);

/// Strict decimal number (digits with optional sign and fraction).
double parse_decimal(std::string_view text);

struct SweepSpec {
    Quantity quantity = Quantity::qfi;
    std::vector<int> n_values{1};
    std::vector<double> phi{0.7853981633974483};
    std::vector<double> eta_p{1.0};
    std::vector<double> eta{1.0};
    std::vector<double> eta_d{1.0};
    std::string axis = "eta_p";
    std::string output; // empty: standard output
    Format format = Format::csv;
    int threads = 0;
    unsigned long long seed = 0;
    int starts = 20;

    /// Throws std::invalid_argument on unsorted grids or out-of-range values.
    void validate() const;
};

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Evaluates a sweep into a table whose row order follows the grid order.
Table evaluate_sweep(const SweepSpec &spec);

/// CSV: comma separated, LF endings, 17 significant digits.
std::string to_csv(const Table &table);
std::string to_json(const Table &table, Quantity quantity);

} // namespace fisherlab::cli
