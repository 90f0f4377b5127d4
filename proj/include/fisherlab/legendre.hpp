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

namespace fisherlab::legendre {

/// P_n(x) for |x| <= 1 by the three-term recurrence.
double legendre(int n, double x);

/// dP_n/dx, finite at x = +-1.
double legendre_derivative(int n, double x);

/// Associated Legendre P_n^l(x) including the Condon-Shortley phase (-1)^l.
double assoc_legendre(int n, int l, double x);

} // namespace fisherlab::legendre
