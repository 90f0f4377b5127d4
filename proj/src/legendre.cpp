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

#include "fisherlab/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace fisherlab::legendre {

namespace {

void check_domain(int n, double x) {
    if(n < 0) throw std::domain_error("legendre: negative degree");
    if(!(std::abs(x) <= 1.0)) throw std::domain_error("legendre: |x| must not exceed 1");
}

} // namespace

double legendre(int n, double x) {
    check_domain(n, x);
    if(n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for(int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double legendre_derivative(int n, double x) {
    check_domain(n, x);
    // P'_{k+1} = P'_{k-1} + (2k+1) P_k
    if(n == 0) return 0.0;
    double p_prev = 1.0, p_cur = x;   // P_{k-1}, P_k
    double d_prev = 0.0, d_cur = 1.0; // P'_{k-1}, P'_k
    for(int k = 1; k < n; ++k) {
        const double d_next = d_prev + (2 * k + 1) * p_cur;
        const double p_next = ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1);
        d_prev = d_cur;
        d_cur = d_next;
        p_prev = p_cur;
        p_cur = p_next;
    }
    return d_cur;
}

double assoc_legendre(int n, int l, double x) {
    check_domain(n, x);
    if(l < 0 || l > n) throw std::domain_error("assoc_legendre: order must satisfy 0 <= l <= n");
    // P_l^l = (-1)^l (2l-1)!! (1-x^2)^(l/2)
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double pll = 1.0;
    for(int k = 1; k <= l; ++k) pll *= -(2 * k - 1) * s;
    if(n == l) return pll;
    double prev = pll;
    double cur = x * (2 * l + 1) * pll; // P_{l+1}^l
    for(int k = l + 2; k <= n; ++k) {
        const double next = ((2 * k - 1) * x * cur - (k + l - 1) * prev) / (k - l);
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace fisherlab::legendre
