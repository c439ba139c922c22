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

// Conversions between the Eigen types and the oracle containers.

#pragma once

#include <random>

#include "oracles.hpp"
#include "ucadf/array_geometry.hpp"

namespace testutil {

inline oracle::Mat to_mat(const ucadf::CMatrix &m)
{
    auto out = oracle::zeros(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

inline ucadf::CMatrix from_mat(const oracle::Mat &m)
{
    ucadf::CMatrix out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j)
            out(i, j) = m[i][j];
    return out;
}

inline ucadf::CMatrix random_matrix(std::mt19937_64 &rng, int rows, int cols)
{
    std::normal_distribution<double> g;
    ucadf::CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
        {
            const double re = g(rng), im = g(rng);
            m(i, j) = {re, im};
        }
    return m;
}

inline ucadf::CMatrix random_hermitian(std::mt19937_64 &rng, int n)
{
    const ucadf::CMatrix x = random_matrix(rng, n, n);
    return (x + x.adjoint()) / 2.0;
}

inline ucadf::CMatrix exchange(int n) { return ucadf::CMatrix::Identity(n, n).rowwise().reverse(); }

// |<a, b>| / (|a| |b|)
inline double cosine_similarity(const ucadf::CVector &a, const ucadf::CVector &b)
{
    return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

} // namespace testutil
