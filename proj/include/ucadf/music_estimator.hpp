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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ucadf/array_geometry.hpp"

namespace ucadf {

// h forward sub-arrays of length N-h+1, optional forward-backward pass, and
// the number of signals assumed present.
struct SmoothingConfig
{
    int h = 3;
    bool forward_backward = true;
    int n_expected = 1;

    int subarray_length(int n_virtual) const { return n_virtual - h + 1; }
    void validate(int n_virtual) const;
};

struct SpectrumPeak
{
    double angle_rad = 0.0;
    double power = 0.0;
    std::size_t index = 0; // grid index
};

struct MusicSpectrum
{
    std::vector<double> probe_angles_rad;
    std::vector<double> power;
    std::vector<SpectrumPeak> peaks; // descending power, >= min separation apart
    double sll_db = 0.0;
    bool clamped = false; // some denominator hit the exact-orthogonality clamp
    std::int64_t chunk_id = 0;
};

struct DoaEstimate
{
    double angle_rad = 0.0;
    double sll_db = 0.0;
    double power = 0.0;
};

// Low-pass DoA tracking state. Updates with an SLL below hold_threshold_db
// are ignored apart from recording the SLL.
struct DoaTrack
{
    double smoothed_angle_rad = 0.0;
    double alpha = 0.5;
    double last_sll_db = 0.0;
    double hold_threshold_db = 3.0;
    bool initialized = false;
};

inline constexpr double music_denominator_floor = 1e-30;
inline constexpr int default_peak_separation = 3;

// x x^H
CMatrix covariance(const CVector &virtual_snapshot);

// Mean of x_i x_i^H over several snapshots.
CMatrix average_covariance(std::span<const CVector> virtual_snapshots);

// (1/h) sum_{i<h} C[i:i+N-h, i:i+N-h]
CMatrix forward_smooth(const CMatrix &c, int h);

// (C_f + J conj(C_f) J) / 2 with J the exchange matrix.
CMatrix forward_backward(const CMatrix &c_f);

// forward_smooth, then forward_backward when enabled.
CMatrix smooth_covariance(const CMatrix &c, const SmoothingConfig &config);

// Eigenvectors of the L_sub - n_expected smallest eigenvalues, as columns.
// Eigenpairs come from an SVD of the Hermitian PSD input and are ordered by
// descending value before slicing.
CMatrix noise_subspace(const CMatrix &c_smoothed, int n_expected);

// [0, 360) degrees in steps of step_deg, returned in radians.
std::vector<double> make_angle_grid(double step_deg);

// Circular strict local maxima, strongest first, at least min_separation grid
// steps from every stronger accepted peak.
std::vector<SpectrumPeak> find_peaks(std::span<const double> power, std::span<const double> angles_rad,
                                     int min_separation = default_peak_separation);

// 1 / |a^H Vn Vn^H a| over the grid, with a the virtual ULA sub-array steering
// vector starting at first_index and sized to the noise subspace rows.
MusicSpectrum music_spectrum(const CMatrix &noise, std::span<const double> grid_rad, int first_index,
                             int min_separation = default_peak_separation);

// Strongest peak and its SLL, or nothing for a spectrum without peaks.
std::optional<DoaEstimate> estimate_doa(const MusicSpectrum &spectrum);

DoaTrack track_doa(DoaTrack state, double estimate_rad, double sll_db);

} // namespace ucadf
