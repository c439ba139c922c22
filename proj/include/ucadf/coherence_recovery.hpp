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
#include <span>
#include <vector>

#include "ucadf/tdm_signal_sim.hpp"

namespace ucadf {

// Usable samples of one switch slot, margin already removed. The spans view
// into the chunk the block was sliced from and must not outlive it.
struct SlotBlock
{
    int antenna_index = 0;
    std::span<const cdouble> array_samples;
    std::span<const cdouble> reference_samples;
};

// Pseudo-coherent N-element snapshot of one chunk.
struct Snapshot
{
    CVector values;
    std::int64_t chunk_id = 0;
    double timestamp_s = 0.0;
};

// Splits a chunk into one block per antenna, in switching order.
std::vector<SlotBlock> slice_chunk(const TdmChunk &chunk);

// Array samples times the conjugated reference samples.
std::vector<cdouble> pseudo_coherent(const SlotBlock &block);

// Mean pseudo-coherent product per antenna. Blocks may come in any order but
// every antenna 0..N-1 must appear exactly once.
Snapshot snapshot(std::span<const SlotBlock> blocks, std::int64_t chunk_id = 0, double timestamp_s = 0.0);

// slice_chunk followed by snapshot.
Snapshot recover_snapshot(const TdmChunk &chunk);

} // namespace ucadf
