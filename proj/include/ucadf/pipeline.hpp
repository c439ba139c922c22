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

#include <optional>
#include <span>
#include <vector>

#include "ucadf/coherence_recovery.hpp"
#include "ucadf/music_estimator.hpp"
#include "ucadf/virtual_transform.hpp"

namespace ucadf {

struct EstimatorConfig
{
    SmoothingConfig smoothing;
    double grid_step_deg = 0.5;
    int min_peak_separation = default_peak_separation;
    double track_alpha = 0.5;
    double hold_threshold_db = 3.0;
};

struct ChunkEstimate
{
    Snapshot snapshot;
    CVector virtual_snapshot;
    MusicSpectrum spectrum;
    std::optional<DoaEstimate> estimate;
};

// Chunk -> snapshot -> calibrated virtual array -> smoothed MUSIC -> DoA.
// Immutable after construction; process() may be called concurrently.
class DoaEstimator
{
public:
    DoaEstimator(CalibrationMatrix calibration, EstimatorConfig config);

    const CalibrationMatrix &calibration() const { return calibration_; }
    const EstimatorConfig &config() const { return config_; }
    const std::vector<double> &grid() const { return grid_; }
    int n_elements() const { return calibration_.n_elements(); }

    ChunkEstimate process(const TdmChunk &chunk) const;
    ChunkEstimate process_snapshot(const Snapshot &snapshot) const;

    // One spectrum from the covariance averaged over several snapshots; used
    // when independent sources need time diversity beyond one chunk.
    MusicSpectrum process_averaged(std::span<const Snapshot> snapshots) const;

    MusicSpectrum spectrum_from_covariance(const CMatrix &c) const;

private:
    CalibrationMatrix calibration_;
    EstimatorConfig config_;
    std::vector<double> grid_;
};

// Sequential low-pass tracker over per-chunk estimates, in chunk order.
class DoaTracker
{
public:
    DoaTracker(double alpha, double hold_threshold_db);

    // Returns true when the estimate moved the track (not held or missing).
    bool update(const std::optional<DoaEstimate> &estimate);

    const DoaTrack &state() const { return state_; }

private:
    DoaTrack state_;
};

} // namespace ucadf
