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

// Reference implementations for the tests. Written from the defining formulas
// with plain loops and no Eigen so they share no code with the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

constexpr double pi = 3.14159265358979323846;

// 50-term power series sum_k (-1)^k (x/2)^(2k+|n|) / (k! (k+|n|)!) in long double.
inline double bessel_series(int n, double x)
{
    const int an = n < 0 ? -n : n;
    long double half = static_cast<long double>(x) / 2.0L;
    long double term = 1.0L;
    for (int i = 1; i <= an; ++i)
        term *= half / static_cast<long double>(i);
    long double sum = 0.0L;
    for (int k = 0; k < 50; ++k)
    {
        sum += term;
        term *= -half * half / (static_cast<long double>(k + 1) * static_cast<long double>(k + 1 + an));
    }
    const double v = static_cast<double>(sum);
    return (n < 0 && (an % 2)) ? -v : v;
}

// exp(j 2pi r/lambda cos(theta - 2pi m/N)), element by element.
inline std::vector<cplx> uca_steering(int n, double radius_wl, double theta)
{
    std::vector<cplx> out(n);
    for (int m = 0; m < n; ++m)
    {
        const double gm = 2.0 * pi * m / n;
        const double x = radius_wl * std::cos(gm), y = radius_wl * std::sin(gm);
        out[m] = std::polar(1.0, 2.0 * pi * (x * std::cos(theta) + y * std::sin(theta)));
    }
    return out;
}

inline std::vector<cplx> ula_steering(int n, double theta)
{
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = std::polar(1.0, -(i - n / 2) * theta);
    return out;
}

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<cplx>(c)); }

inline Mat mul(const Mat &a, const Mat &b)
{
    Mat out = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j)
                out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Mat adjoint(const Mat &a)
{
    Mat out = zeros(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j)
            out[j][i] = std::conj(a[i][j]);
    return out;
}

// Gaussian elimination with partial pivoting, single right-hand side.
inline std::vector<cplx> solve(Mat a, std::vector<cplx> b)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (std::abs(a[piv][col]) == 0.0)
            throw std::runtime_error("singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r)
        {
            const cplx f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;)
    {
        cplx s = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

// Least-squares B for ||At - B A||_F, one row of B at a time from the normal
// equations (A A^H) b_i^H = A (row i of At)^H.
inline Mat least_squares_rows(const Mat &a, const Mat &at)
{
    const std::size_t n = a.size(), l = a[0].size();
    const Mat gram = mul(a, adjoint(a));
    Mat b = zeros(at.size(), n);
    for (std::size_t i = 0; i < at.size(); ++i)
    {
        std::vector<cplx> rhs(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t t = 0; t < l; ++t)
                rhs[r] += a[r][t] * std::conj(at[i][t]);
        const auto x = solve(gram, rhs);
        for (std::size_t c = 0; c < n; ++c)
            b[i][c] = std::conj(x[c]);
    }
    return b;
}

// (1/h) sum_{i<h} C[i:i+L, i:i+L], L = N-h+1
inline Mat forward_smooth(const Mat &c, int h)
{
    const std::size_t l = c.size() - static_cast<std::size_t>(h) + 1;
    Mat out = zeros(l, l);
    for (int i = 0; i < h; ++i)
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t k = 0; k < l; ++k)
                out[r][k] += c[r + i][k + i] / static_cast<double>(h);
    return out;
}

// (C + flip(C)^*)/2 with rows and columns reversed
inline Mat forward_backward(const Mat &c)
{
    const std::size_t n = c.size();
    Mat out = zeros(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            out[r][k] = 0.5 * (c[r][k] + std::conj(c[n - 1 - r][n - 1 - k]));
    return out;
}

inline double frobenius(const Mat &a)
{
    double s = 0.0;
    for (const auto &row : a)
        for (const auto &v : row)
            s += std::norm(v);
    return std::sqrt(s);
}

inline double frobenius_diff(const Mat &a, const Mat &b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j)
            s += std::norm(a[i][j] - b[i][j]);
    return std::sqrt(s);
}

} // namespace oracle
