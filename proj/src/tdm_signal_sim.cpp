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

#include "ucadf/tdm_signal_sim.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ucadf/error.hpp"

namespace ucadf {

void TdmSchedule::validate() const
{
    if (n_slots < 1)
        throw ConfigError("schedule needs at least one slot");
    if (samples_per_slot < 1 || margin_samples < 0)
        throw ConfigError("samples_per_slot must be positive and margin_samples non-negative");
    if (margin_samples >= samples_per_slot)
        throw ConfigError("margin_samples (" + std::to_string(margin_samples) +
                          ") leaves no usable samples in a slot of " + std::to_string(samples_per_slot));
    if (!slot_phases.empty() && slot_phases.size() != static_cast<std::size_t>(n_slots))
        throw ConfigError("slot_phases must be empty or hold one phase per slot");
}

void ImperfectionSpec::validate(int n_elements) const
{
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw ConfigError("noise_sigma must be a finite non-negative number");
    if (!switch_phase_error_deg.empty())
    {
        if (switch_phase_error_deg.size() != static_cast<std::size_t>(n_elements))
            throw ConfigError("switch_phase_error_deg needs one entry per port");
        for (double e : switch_phase_error_deg)
            if (!(std::abs(e) <= max_switch_phase_error_deg))
                throw ConfigError("switch phase error " + std::to_string(e) + " deg exceeds the +-3 deg hardware bound");
    }
    if (coupling.size() != 0 && (coupling.rows() != n_elements || coupling.cols() != n_elements))
        throw ConfigError("coupling matrix must be N x N");
    if (per_port_gain.size() != 0 && per_port_gain.size() != n_elements)
        throw ConfigError("per_port_gain needs one entry per port");
    if (!(differential_phase_cycles >= 0.0))
        throw ConfigError("differential_phase_cycles must be non-negative");
}

CMatrix ImperfectionSpec::port_response(int n_elements) const
{
    CMatrix response = coupling.size() ? coupling : CMatrix::Identity(n_elements, n_elements);
    for (int m = 0; m < n_elements; ++m)
    {
        cdouble g = per_port_gain.size() ? per_port_gain(m) : cdouble(1.0);
        if (!switch_phase_error_deg.empty())
            g *= std::polar(1.0, deg_to_rad(switch_phase_error_deg[m]));
        response.row(m) *= g;
    }
    return response;
}

namespace {

// exp(j*2*pi*cycles) with the argument reduced to one period first
cdouble unit_phasor(double cycles)
{
    return std::polar(1.0, two_pi * (cycles - std::floor(cycles)));
}

} // namespace

TdmChunk simulate_chunk(const ArrayGeometry &geometry, const RadioConfig &radio,
                        const std::vector<SourceSpec> &sources, const TdmSchedule &schedule,
                        const ImperfectionSpec &imperfections, std::uint64_t seed, std::int64_t chunk_id)
{
    const int n = geometry.n_elements();
    schedule.validate();
    imperfections.validate(n);
    if (schedule.n_slots != n)
        throw ConfigError("schedule has " + std::to_string(schedule.n_slots) + " slots for a " +
                          std::to_string(n) + "-element array");
    if (sources.empty())
        throw ConfigError("at least one source is required");
    for (const auto &s : sources)
    {
        if (!(s.amplitude >= 0.0))
            throw ConfigError("source amplitude must be non-negative");
        if (!(std::abs(s.frequency_hz) < 0.5 * radio.f_s_hz()))
            throw ConfigError("source frequency " + std::to_string(s.frequency_hz) + " Hz is not below Nyquist");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    TdmChunk chunk;
    chunk.schedule = schedule;
    chunk.radio = radio;
    chunk.chunk_id = chunk_id;
    chunk.timestamp_s = static_cast<double>(chunk_id) * static_cast<double>(schedule.chunk_length()) / radio.f_s_hz();
    chunk.truth_azimuth_rad = wrap_angle(sources.front().azimuth_rad);

    if (chunk.schedule.slot_phases.empty())
    {
        chunk.schedule.slot_phases.resize(n);
        for (auto &phi : chunk.schedule.slot_phases)
            phi = unit(rng);
    }
    std::vector<double> differential(n, 0.0);
    if (imperfections.differential_phase_cycles > 0.0)
    {
        std::uniform_real_distribution<double> d(-imperfections.differential_phase_cycles,
                                                 imperfections.differential_phase_cycles);
        for (auto &v : differential)
            v = d(rng);
    }

    // Per-source response of every port: P * a(theta_p)
    const CMatrix port = imperfections.port_response(n);
    std::vector<CVector> response;
    response.reserve(sources.size());
    for (const auto &s : sources)
        response.push_back(port * ideal_uca_steering(geometry, s.azimuth_rad));

    const std::size_t len = schedule.chunk_length();
    chunk.reference_channel.assign(len, cdouble{});
    chunk.array_channel.assign(len, cdouble{});

    const double fs = radio.f_s_hz();
    for (int m = 0; m < n; ++m)
    {
        const double phi_m = chunk.schedule.slot_phases[m];
        const cdouble diff = unit_phasor(differential[m]);
        const std::size_t begin = static_cast<std::size_t>(m) * schedule.samples_per_slot;
        const std::size_t end = begin + schedule.samples_per_slot;
        for (std::size_t t = begin; t < end; ++t)
        {
            cdouble ref{}, arr{};
            for (std::size_t p = 0; p < sources.size(); ++p)
            {
                const auto &s = sources[p];
                const cdouble tone =
                    s.amplitude * unit_phasor(s.frequency_hz * static_cast<double>(t) / fs + s.phase_cycles + phi_m);
                ref += tone;
                arr += tone * response[p](m);
            }
            chunk.reference_channel[t] = ref;
            chunk.array_channel[t] = arr * diff;
        }
    }

    if (imperfections.noise_sigma > 0.0)
    {
        std::normal_distribution<double> noise(0.0, imperfections.noise_sigma / std::sqrt(2.0));
        for (std::size_t t = 0; t < len; ++t)
        {
            chunk.reference_channel[t] += cdouble(noise(rng), noise(rng));
            chunk.array_channel[t] += cdouble(noise(rng), noise(rng));
        }
    }
    return chunk;
}

std::vector<std::vector<SourceSpec>> apply_doa_motion(const std::vector<SourceSpec> &sources,
                                                      const std::vector<double> &azimuth_trajectory_rad)
{
    if (sources.empty())
        throw ConfigError("at least one source is required");
    if (azimuth_trajectory_rad.empty())
        throw ConfigError("azimuth trajectory is empty");
    std::vector<std::vector<SourceSpec>> out;
    out.reserve(azimuth_trajectory_rad.size());
    for (double az : azimuth_trajectory_rad)
    {
        out.push_back(sources);
        out.back().front().azimuth_rad = az;
    }
    return out;
}

double noise_sigma_for_snapshot_snr(double amplitude, int used_samples, double snapshot_snr_db)
{
    if (!(amplitude > 0.0) || used_samples < 1)
        throw ConfigError("snapshot SNR needs a positive amplitude and sample count");
    // Per-sample variance of (a s + n_a)(a + n_r)^* about a^2 s is 2 a^2 s2 + s2^2
    // with s2 = sigma^2; the mean over U samples divides it by U.
    const double a2 = amplitude * amplitude;
    const double snr = std::pow(10.0, snapshot_snr_db / 10.0);
    const double var = a2 * (std::sqrt(1.0 + used_samples / snr) - 1.0);
    return std::sqrt(var);
}

std::uint64_t chunk_seed(std::uint64_t base_seed, std::uint64_t index)
{
    // splitmix64 finalizer over the combined value
    std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace ucadf
