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

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ucadf/coherence_recovery.hpp"
#include "ucadf/error.hpp"
#include "ucadf/tdm_signal_sim.hpp"

using namespace ucadf;
using doctest::Approx;

namespace {

const RadioConfig radio;
const ArrayGeometry geo = ArrayGeometry::from_wavelengths(8, 0.5, radio);

SourceSpec source_at(double deg, double amplitude = 1.0)
{
    SourceSpec s;
    s.amplitude = amplitude;
    s.azimuth_rad = deg_to_rad(deg);
    return s;
}

} // namespace

TEST_CASE("slicing removes the margin")
{
    TdmChunk chunk;
    chunk.schedule.n_slots = 2;
    chunk.schedule.samples_per_slot = 4;
    chunk.schedule.margin_samples = 1;
    for (int i = 0; i < 8; ++i)
    {
        chunk.array_channel.emplace_back(i, 0);
        chunk.reference_channel.emplace_back(0, i);
    }
    const auto blocks = slice_chunk(chunk);
    REQUIRE(blocks.size() == 2);
    for (int m = 0; m < 2; ++m)
    {
        CHECK(blocks[m].antenna_index == m);
        REQUIRE(blocks[m].array_samples.size() == 3);
        REQUIRE(blocks[m].reference_samples.size() == 3);
        for (int k = 0; k < 3; ++k)
        {
            CHECK(blocks[m].array_samples[k].real() == 4 * m + 1 + k);
            CHECK(blocks[m].reference_samples[k].imag() == 4 * m + 1 + k);
        }
    }

    chunk.array_channel.pop_back();
    CHECK_THROWS_AS(slice_chunk(chunk), DataError);
    chunk.array_channel.emplace_back();
    chunk.schedule.margin_samples = 4;
    CHECK_THROWS_AS(slice_chunk(chunk), DataError);
}

TEST_CASE("default schedule gives eight blocks of 6000")
{
    const auto chunk = simulate_chunk(geo, radio, {source_at(0.0)}, TdmSchedule{}, {}, 1);
    const auto blocks = slice_chunk(chunk);
    REQUIRE(blocks.size() == 8);
    for (const auto &b : blocks)
    {
        CHECK(b.array_samples.size() == 6000);
        CHECK(b.reference_samples.size() == 6000);
    }
}

TEST_CASE("pseudo-coherent product")
{
    const std::vector<cdouble> x = {{0, 1}, {0, 1}};
    const auto p = pseudo_coherent({0, x, x});
    REQUIRE(p.size() == 2);
    CHECK(p[0] == cdouble(1, 0));
    CHECK(p[1] == cdouble(1, 0));

    // constant over t and independent of the tone and slot phase
    const auto chunk = simulate_chunk(geo, radio, {source_at(70.0, 1.5)}, TdmSchedule{}, {}, 4);
    const auto a = ideal_uca_steering(geo, deg_to_rad(70.0));
    for (const auto &b : slice_chunk(chunk))
    {
        const auto prod = pseudo_coherent(b);
        for (std::size_t t = 0; t < prod.size(); t += 97)
            CHECK(std::abs(prod[t] - 2.25 * a(b.antenna_index)) < 1e-9);
    }
}

TEST_CASE("snapshot of constant blocks")
{
    const cdouble c(0.3, -0.7);
    std::vector<std::vector<cdouble>> storage(4, std::vector<cdouble>(5, c));
    const std::vector<cdouble> ones(5, cdouble(1.0));
    std::vector<SlotBlock> blocks;
    for (int m : {2, 0, 3, 1})
        blocks.push_back({m, storage[m], ones});
    const auto s = snapshot(blocks, 7, 1.5);
    REQUIRE(s.values.size() == 4);
    for (int m = 0; m < 4; ++m)
        CHECK(std::abs(s.values(m) - c) < 1e-15);
    CHECK(s.chunk_id == 7);
    CHECK(s.timestamp_s == 1.5);

    blocks[1].antenna_index = 2;
    CHECK_THROWS_AS(snapshot(blocks), DataError);
    blocks[1].antenna_index = 9;
    CHECK_THROWS_AS(snapshot(blocks), DataError);
}

TEST_CASE("snapshot equals a^2 times the steering vector")
{
    for (double az : {0.0, 33.0, 181.5, 300.0})
        for (double amp : {1.0, 0.5, 3.0})
        {
            const auto chunk = simulate_chunk(geo, radio, {source_at(az, amp)}, TdmSchedule{}, {}, 17);
            const auto s = recover_snapshot(chunk);
            const auto want = oracle::uca_steering(8, 0.5, deg_to_rad(az));
            REQUIRE(s.values.size() == 8);
            for (int m = 0; m < 8; ++m)
                CHECK(std::abs(s.values(m) - amp * amp * want[m]) < 1e-9);
        }
}

TEST_CASE("source phase offset cancels")
{
    SourceSpec s = source_at(25.0);
    const auto base = recover_snapshot(simulate_chunk(geo, radio, {s}, TdmSchedule{}, {}, 3));
    for (double phase : {0.1, 0.37, 0.9})
    {
        s.phase_cycles = phase;
        const auto shifted = recover_snapshot(simulate_chunk(geo, radio, {s}, TdmSchedule{}, {}, 3));
        CHECK((shifted.values - base.values).norm() < 1e-9);
    }
}

TEST_CASE("two tones: cross terms average out")
{
    SourceSpec s1 = source_at(30.0, 1.0), s2 = source_at(150.0, 0.5);
    s2.frequency_hz = 120e3;
    s2.phase_cycles = 0.4;
    TdmSchedule sched;
    sched.slot_phases = {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75};
    const auto s = recover_snapshot(simulate_chunk(geo, radio, {s1, s2}, sched, {}, 1));

    // Product and mean evaluated directly from the signal model.
    const auto st1 = oracle::uca_steering(8, 0.5, s1.azimuth_rad);
    const auto st2 = oracle::uca_steering(8, 0.5, s2.azimuth_rad);
    for (int m = 0; m < 8; ++m)
    {
        oracle::cplx acc = 0.0;
        for (int k = 4000; k < 10000; ++k)
        {
            const double t = (m * 10000.0 + k) / 1e6;
            const double phi = sched.slot_phases[m];
            const auto x1 = std::exp(oracle::cplx(0, 2 * oracle::pi * (50e3 * t + phi)));
            const auto x2 = 0.5 * std::exp(oracle::cplx(0, 2 * oracle::pi * (120e3 * t + 0.4 + phi)));
            acc += (x1 * st1[m] + x2 * st2[m]) * std::conj(x1 + x2);
        }
        acc /= 6000.0;
        CHECK(std::abs(s.values(m) - acc) < 1e-9);
        CHECK(std::abs(s.values(m) - (st1[m] + 0.25 * st2[m])) < 1e-2);
    }
}

TEST_CASE("slot phases cancel")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 360.0);
    for (int trial = 0; trial < 10; ++trial)
    {
        const std::vector<SourceSpec> src = {source_at(u(rng), 1.0), source_at(u(rng), 0.3)};
        const auto a = recover_snapshot(simulate_chunk(geo, radio, src, TdmSchedule{}, {}, 2 * trial));
        const auto b = recover_snapshot(simulate_chunk(geo, radio, src, TdmSchedule{}, {}, 2 * trial + 1));
        CHECK((a.values - b.values).norm() < 1e-9);
    }
}

TEST_CASE("noise-only snapshot shrinks as one over sqrt(U)")
{
    ImperfectionSpec imp;
    imp.noise_sigma = 1.0;
    auto rms = [&](int used) {
        TdmSchedule sched;
        sched.samples_per_slot = used + 10;
        sched.margin_samples = 10;
        double acc = 0.0;
        for (int trial = 0; trial < 100; ++trial)
            acc += recover_snapshot(simulate_chunk(geo, radio, {source_at(0.0, 0.0)}, sched, imp, 1000 + trial))
                       .values.squaredNorm();
        return std::sqrt(acc / 100.0);
    };
    const double ratio = rms(100) / rms(1600);
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("snapshot snr matches the requested value")
{
    ImperfectionSpec imp;
    TdmSchedule sched;
    sched.samples_per_slot = 1600;
    sched.margin_samples = 100;
    imp.noise_sigma = noise_sigma_for_snapshot_snr(1.0, sched.used_samples(), 10.0);
    const auto clean = recover_snapshot(simulate_chunk(geo, radio, {source_at(12.0)}, sched, {}, 1));
    double err = 0.0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial)
        err += (recover_snapshot(simulate_chunk(geo, radio, {source_at(12.0)}, sched, imp, 50 + trial)).values -
                clean.values)
                   .squaredNorm();
    const double snr_db = 10.0 * std::log10(clean.values.squaredNorm() / (err / trials));
    CHECK(snr_db == Approx(10.0).epsilon(0.05));
}
