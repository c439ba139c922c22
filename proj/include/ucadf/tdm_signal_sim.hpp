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
#include <vector>

#include "ucadf/array_geometry.hpp"

namespace ucadf {

// One far-field continuous-wave source.
struct SourceSpec
{
    double amplitude = 1.0;     // linear, >= 0
    double phase_cycles = 0.0;  // initial phase in cycles
    double frequency_hz = 50e3; // baseband tone frequency, nominally the IF
    double azimuth_rad = 0.0;
};

// Slot layout of one acquisition chunk. Each of the n_slots antennas is
// connected for samples_per_slot samples; the first margin_samples of every
// slot are discarded as switching transients.
struct TdmSchedule
{
    int n_slots = 8;
    int samples_per_slot = 10000;
    int margin_samples = 4000;
    // Per-slot sampling phase in cycles. Empty means "draw uniformly from
    // [0, 1) for every chunk".
    std::vector<double> slot_phases;

    int used_samples() const { return samples_per_slot - margin_samples; }
    std::size_t chunk_length() const
    {
        return static_cast<std::size_t>(n_slots) * static_cast<std::size_t>(samples_per_slot);
    }
    void validate() const;
};

// Deviations from the ideal receiver. Empty vectors and matrices mean neutral
// (zero error, unit gain, identity coupling).
struct ImperfectionSpec
{
    double noise_sigma = 0.0;                 // complex noise std per sample, both channels
    std::vector<double> switch_phase_error_deg; // static per-port rotation, |e| <= 3 deg
    CMatrix coupling;                          // N x N, applied to the steering vector
    CVector per_port_gain;                     // N complex gains
    // Extra per-slot phase on the array channel only, uniform in +-value
    // cycles. Breaks the shared sampling clock assumption; robustness studies only.
    double differential_phase_cycles = 0.0;

    void validate(int n_elements) const;
    // diag(gain * switch rotation) * coupling, N x N
    CMatrix port_response(int n_elements) const;
};

inline constexpr double max_switch_phase_error_deg = 3.0;

// One acquisition frame: both receiver channels over all switch positions.
struct TdmChunk
{
    std::vector<cdouble> reference_channel;
    std::vector<cdouble> array_channel;
    TdmSchedule schedule;
    RadioConfig radio;
    std::int64_t chunk_id = 0;
    double timestamp_s = 0.0;
    // Ground-truth azimuth of the first source when the chunk is synthetic.
    std::optional<double> truth_azimuth_rad;
};

// Generates one chunk from the far-field signal model. Sample t of slot m:
//   ref[t] = sum_p a_p exp(j 2pi (f_p t/f_s + phi_p + phi_m)) + n_r
//   arr[t] = sum_p a_p exp(j 2pi (f_p t/f_s + phi_p + phi_m)) * (P a(theta_p))_m + n_a
// where P is ImperfectionSpec::port_response and t counts from chunk start.
TdmChunk simulate_chunk(const ArrayGeometry &geometry, const RadioConfig &radio,
                        const std::vector<SourceSpec> &sources, const TdmSchedule &schedule,
                        const ImperfectionSpec &imperfections, std::uint64_t seed, std::int64_t chunk_id = 0);

// Per-chunk copies of `sources` with the azimuth of the first (target) source
// replaced by successive trajectory values. Other sources keep their azimuth.
std::vector<std::vector<SourceSpec>> apply_doa_motion(const std::vector<SourceSpec> &sources,
                                                      const std::vector<double> &azimuth_trajectory_rad);

// Time-domain noise sigma that yields the requested SNR on the averaged
// pseudo-coherent snapshot of a unit-steering source of the given amplitude.
double noise_sigma_for_snapshot_snr(double amplitude, int used_samples, double snapshot_snr_db);

// Seed of chunk `index` within a run seeded with `base_seed`.
std::uint64_t chunk_seed(std::uint64_t base_seed, std::uint64_t index);

} // namespace ucadf
