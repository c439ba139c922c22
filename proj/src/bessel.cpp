// SPDX-License-Identifier: Apache-2.0
//
// ucadf - direction finding with switched uniform circular arrays
// Copyright (C) 2026 The ucadf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <algorithm>
#include <cmath>
#include <string>

#include "ucadf/error.hpp"
#include "ucadf/virtual_transform.hpp"

namespace ucadf {

double bessel_jn(int order, double x)
{
    if (std::abs(order) > bessel_max_order)
        throw ConfigError("Bessel order " + std::to_string(order) + " outside |n| <= 64");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw ConfigError("Bessel argument must be finite and non-negative");

    const int n = std::abs(order);
    const double sign = (order < 0 && (n % 2)) ? -1.0 : 1.0;
    if (x == 0.0)
        return n == 0 ? sign : 0.0;

    // Start far enough above both n and x that the recurrence has converged
    // onto the minimal solution.
    const double top = std::max(static_cast<double>(n), x);
    int start = static_cast<int>(top + 30.0 + 2.0 * std::sqrt(40.0 * top));
    start += start % 2; // even, so the normalisation sum ends on J_0

    constexpr double big = 1e250;
    double j_next = 0.0, j_cur = 1e-300, result = 0.0, norm = 0.0;
    for (int k = start; k > 0; --k)
    {
        const double j_prev = (2.0 * k / x) * j_cur - j_next; // J_{k-1}
        j_next = j_cur;
        j_cur = j_prev;
        if (k - 1 == n)
            result = j_cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0 * j_cur;
        if (std::abs(j_cur) > big)
        {
            j_cur /= big;
            j_next /= big;
            result /= big;
            norm /= big;
        }
    }
    norm += j_cur; // J_0
    return sign * result / norm;
}

} // namespace ucadf
