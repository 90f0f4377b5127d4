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

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fisherlab::comb {

inline constexpr int kMaxN = 66;

namespace detail {

// Pascal's triangle in exact 64-bit integers; C(66, 33) < 2^63.
struct BinomialTable {
    std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> value{};
    constexpr BinomialTable() {
        for(int n = 0; n <= kMaxN; ++n) {
            value[n][0] = 1;
            for(int k = 1; k <= n; ++k) value[n][k] = value[n - 1][k - 1] + (k < n ? value[n - 1][k] : 0);
        }
    }
};

struct FactorialTable {
    std::array<double, kMaxN + 1> value{};
    std::array<double, kMaxN + 1> sqrt_value{};
    FactorialTable() {
        // Exact in 64-bit integers through 20!, then one rounding per step.
        std::uint64_t exact = 1;
        value[0] = 1.0;
        for(int n = 1; n <= kMaxN; ++n) {
            if(n <= 20) {
                exact *= static_cast<std::uint64_t>(n);
                value[n] = static_cast<double>(exact);
            } else {
                value[n] = value[n - 1] * n;
            }
        }
        for(int n = 0; n <= kMaxN; ++n) sqrt_value[n] = std::sqrt(value[n]);
    }
};

inline constexpr BinomialTable kBinomial{};

inline const FactorialTable &factorials() {
    static const FactorialTable table;
    return table;
}

inline void check_range(int n) {
    if(n < 0 || n > kMaxN) throw std::out_of_range("combinatorics: argument outside [0, 66]");
}

} // namespace detail

inline std::uint64_t binomial_exact(int n, int k) {
    detail::check_range(n);
    if(k < 0 || k > n) return 0;
    return detail::kBinomial.value[n][k];
}

inline double binomial(int n, int k) { return static_cast<double>(binomial_exact(n, k)); }

inline double factorial(int n) {
    detail::check_range(n);
    return detail::factorials().value[n];
}

inline double sqrt_factorial(int n) {
    detail::check_range(n);
    return detail::factorials().sqrt_value[n];
}

/// C(n, k) p^k (1-p)^(n-k), with 0^0 = 1.
inline double binomial_pmf(int n, int k, double p) {
    if(k < 0 || k > n) return 0.0;
    const double success = k == 0 ? 1.0 : std::pow(p, k);
    const double failure = n - k == 0 ? 1.0 : std::pow(1.0 - p, n - k);
    return binomial(n, k) * success * failure;
}

} // namespace fisherlab::comb
