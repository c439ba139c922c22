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

#include "ucadf/coherence_recovery.hpp"

#include <string>

#include "ucadf/error.hpp"

namespace ucadf {

std::vector<SlotBlock> slice_chunk(const TdmChunk &chunk)
{
    const auto &sched = chunk.schedule;
    if (sched.n_slots < 1 || sched.samples_per_slot < 1 || sched.margin_samples < 0)
        throw DataError("chunk schedule is malformed");
    if (sched.margin_samples >= sched.samples_per_slot)
        throw DataError("chunk schedule leaves zero usable samples per slot (margin " +
                        std::to_string(sched.margin_samples) + " of " + std::to_string(sched.samples_per_slot) + ")");
    const std::size_t len = sched.chunk_length();
    if (chunk.reference_channel.size() != len || chunk.array_channel.size() != len)
        throw DataError("chunk holds " + std::to_string(chunk.reference_channel.size()) + "/" +
                        std::to_string(chunk.array_channel.size()) + " samples, schedule expects " +
                        std::to_string(len));

    const std::span<const cdouble> ref(chunk.reference_channel);
    const std::span<const cdouble> arr(chunk.array_channel);
    const auto used = static_cast<std::size_t>(sched.used_samples());

    std::vector<SlotBlock> blocks(static_cast<std::size_t>(sched.n_slots));
    for (int m = 0; m < sched.n_slots; ++m)
    {
        const std::size_t begin = static_cast<std::size_t>(m) * sched.samples_per_slot + sched.margin_samples;
        blocks[m] = {m, arr.subspan(begin, used), ref.subspan(begin, used)};
    }
    return blocks;
}

std::vector<cdouble> pseudo_coherent(const SlotBlock &block)
{
    if (block.array_samples.size() != block.reference_samples.size())
        throw DataError("slot block channels differ in length");
    std::vector<cdouble> out(block.array_samples.size());
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = block.array_samples[t] * std::conj(block.reference_samples[t]);
    return out;
}

Snapshot snapshot(std::span<const SlotBlock> blocks, std::int64_t chunk_id, double timestamp_s)
{
    const auto n = static_cast<int>(blocks.size());
    if (n == 0)
        throw DataError("no slot blocks");

    Snapshot snap{CVector::Zero(n), chunk_id, timestamp_s};
    std::vector<bool> seen(blocks.size(), false);
    for (const auto &block : blocks)
    {
        const int m = block.antenna_index;
        if (m < 0 || m >= n)
            throw DataError("antenna index " + std::to_string(m) + " outside 0.." + std::to_string(n - 1));
        if (seen[m])
            throw DataError("duplicate block for antenna " + std::to_string(m));
        seen[m] = true;
        if (block.array_samples.size() != block.reference_samples.size())
            throw DataError("slot block channels differ in length");
        if (block.array_samples.empty())
            throw DataError("slot block for antenna " + std::to_string(m) + " is empty");

        // same as the mean of pseudo_coherent(block), without the temporary
        cdouble acc{};
        for (std::size_t t = 0; t < block.array_samples.size(); ++t)
            acc += block.array_samples[t] * std::conj(block.reference_samples[t]);
        snap.values(m) = acc / static_cast<double>(block.array_samples.size());
    }
    return snap;
}

Snapshot recover_snapshot(const TdmChunk &chunk)
{
    const auto blocks = slice_chunk(chunk);
    return snapshot(blocks, chunk.chunk_id, chunk.timestamp_s);
}

} // namespace ucadf
