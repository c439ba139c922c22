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

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ucadf/array_geometry.hpp"
#include "ucadf/coherence_recovery.hpp"

namespace ucadf {

inline constexpr int bessel_max_order = 64;

// Integer-order Bessel function of the first kind, J_n(x) for |n| <= 64 and
// x >= 0. Miller's downward recurrence normalised with
// J_0 + 2 sum_k J_2k = 1.
double bessel_jn(int order, double x);

// Phase-mode (beamspace) transform of the UCA. Row i corresponds to mode
// n = i - h; F holds exp(-j n gamma_m)/sqrt(N) and J the diagonal
// 1/(sqrt(N) j^n J_n(k r)), so J F a(theta) ~ exp(-j n theta).
struct BeamspaceTransform
{
    CMatrix f_matrix;    // (2h+1) x N
    CVector j_diagonal;  // 2h+1
    int h = 0;

    CMatrix combined() const { return j_diagonal.asDiagonal() * f_matrix; }
};

inline constexpr double default_bessel_floor = 1e-3;

BeamspaceTransform build_beamspace(const ArrayGeometry &geometry, int h, double bessel_floor = default_bessel_floor);

// J F R_X
CVector ideal_virtual_transform(const BeamspaceTransform &transform, const CVector &snapshot);

// Measured and virtual steering vectors at the probing angles, one column
// per angle.
struct CalibrationSet
{
    std::vector<double> angles_rad; // strictly increasing in [0, 2pi)
    CMatrix measured_steering;      // N x L
    CMatrix virtual_steering;       // N x L

    int n_elements() const { return static_cast<int>(measured_steering.rows()); }
    int n_angles() const { return static_cast<int>(angles_rad.size()); }
    bool underdetermined() const { return n_angles() < n_elements(); }
};

struct CalibrationMatrix
{
    CMatrix b_matrix;          // N x N
    double residual = 0.0;     // ||A~ - B A||_F
    std::vector<double> source_angles_rad;
    std::string created_at;    // ISO 8601 UTC
    bool pseudo_inverse = false;  // solved with the truncated-SVD fallback
    bool underdetermined = false; // fewer probing angles than elements
    double condition_number = 0.0; // cond(A A^H)

    int n_elements() const { return static_cast<int>(b_matrix.rows()); }
    std::vector<std::string> flags() const;
};

struct CalibrationOptions
{
    double condition_cap = 1e8;
    bool allow_pseudo_inverse = true;
};

// Least-squares B minimising ||A~ - B A||_F: B^H = (A A^H)^{-1} A A~^H.
CalibrationMatrix solve_calibration(const CalibrationSet &calset, const CalibrationOptions &options = {});

// Builds A from single-source snapshots (columns normalised to unit norm) and
// A~ from the virtual ULA steering of the same angles. Angles are wrapped to
// [0, 2pi) and sorted.
CalibrationSet measure_steering_matrix(const std::vector<std::pair<double, Snapshot>> &snapshots_by_angle);
CalibrationSet measure_steering_matrix(const std::map<double, Snapshot> &snapshots_by_angle);

// B R_X
CVector apply_calibration(const CalibrationMatrix &cal, const CVector &snapshot);

// Calibration learned from the noiseless ideal array model at the given
// probing spacing. Stands in for a measured calibration when the array is
// assumed perfect.
CalibrationMatrix ideal_calibration(const ArrayGeometry &geometry, double spacing_rad);

// Current UTC time as ISO 8601, honouring SOURCE_DATE_EPOCH when set.
std::string utc_timestamp();

} // namespace ucadf
