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

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ucadf/music_estimator.hpp"
#include "ucadf/tdm_signal_sim.hpp"
#include "ucadf/virtual_transform.hpp"

namespace ucadf {

// --- recordings -----------------------------------------------------------
//
// A recording is a JSON sidecar `<base>.json` plus a raw payload
// `<base>.cf32`. The payload holds little-endian float32 values, interleaved
// per sample as ref_I, ref_Q, arr_I, arr_Q, chunks concatenated in order.

inline constexpr const char *sample_format_cf32 = "cf32le_ref_arr";

struct RecordingHeader
{
    int n_elements = 8;
    RadioConfig radio;
    int samples_per_slot = 10000;
    int margin_samples = 4000;

    std::size_t chunk_length() const
    {
        return static_cast<std::size_t>(n_elements) * static_cast<std::size_t>(samples_per_slot);
    }
    TdmSchedule schedule() const { return {n_elements, samples_per_slot, margin_samples, {}}; }
};

struct Recording
{
    RecordingHeader header;
    std::vector<TdmChunk> chunks;
};

struct RecordingPaths
{
    std::filesystem::path sidecar;
    std::filesystem::path payload;
};

// Accepts the base path or either of the two file names.
RecordingPaths recording_paths(const std::filesystem::path &path);

// Header taken from the first chunk.
Recording make_recording(std::vector<TdmChunk> chunks);

void write_recording(const Recording &recording, const std::filesystem::path &path);
Recording read_recording(const std::filesystem::path &path);

// --- calibration file -----------------------------------------------------

std::string calibration_to_json(const CalibrationMatrix &cal);
CalibrationMatrix calibration_from_json(const std::string &text);
void save_calibration(const CalibrationMatrix &cal, const std::filesystem::path &path);
CalibrationMatrix load_calibration(const std::filesystem::path &path);

// --- CSV outputs ----------------------------------------------------------

// `angle_deg,power_db` per grid point, then `# peak,<deg>,<db>` lines and
// `# sll_db,<value>`.
void write_spectrum_csv(std::ostream &out, const MusicSpectrum &spectrum);

struct TrackRow
{
    std::int64_t chunk_id = 0;
    double time_s = 0.0;
    std::optional<double> estimate_deg;
    double sll_db = 0.0;
    double track_deg = 0.0;
    bool held = false;
};

// `chunk,time_s,est_deg,sll_db,track_deg,held`
void write_track_csv(std::ostream &out, std::span<const TrackRow> rows);

} // namespace ucadf
