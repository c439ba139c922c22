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

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ucadf/error.hpp"
#include "ucadf/io.hpp"

namespace ucadf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::size_t bytes_per_sample = 16; // 2 channels x 2 components x float32

void put_f32_le(char *dst, float v)
{
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap32(bits);
    std::memcpy(dst, &bits, 4);
}

float get_f32_le(const char *src)
{
    std::uint32_t bits;
    std::memcpy(&bits, src, 4);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap32(bits);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

template <class T>
T field(const json &j, const char *key, const fs::path &where)
{
    if (!j.contains(key))
        throw DataError(where.string() + ": missing field '" + key + "'");
    try
    {
        return j.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw DataError(where.string() + ": field '" + key + "' has the wrong type");
    }
}

} // namespace

RecordingPaths recording_paths(const fs::path &path)
{
    fs::path base = path;
    if (base.extension() == ".json" || base.extension() == ".cf32")
        base.replace_extension();
    return {fs::path(base).concat(".json"), fs::path(base).concat(".cf32")};
}

Recording make_recording(std::vector<TdmChunk> chunks)
{
    Recording rec;
    if (!chunks.empty())
    {
        const auto &c = chunks.front();
        rec.header.n_elements = c.schedule.n_slots;
        rec.header.radio = c.radio;
        rec.header.samples_per_slot = c.schedule.samples_per_slot;
        rec.header.margin_samples = c.schedule.margin_samples;
    }
    rec.chunks = std::move(chunks);
    return rec;
}

void write_recording(const Recording &recording, const fs::path &path)
{
    const auto &h = recording.header;
    h.schedule().validate();
    const std::size_t len = h.chunk_length();
    for (const auto &c : recording.chunks)
    {
        if (c.schedule.n_slots != h.n_elements || c.schedule.samples_per_slot != h.samples_per_slot ||
            c.schedule.margin_samples != h.margin_samples)
            throw DataError("chunk " + std::to_string(c.chunk_id) + " schedule differs from the recording header");
        if (c.reference_channel.size() != len || c.array_channel.size() != len)
            throw DataError("chunk " + std::to_string(c.chunk_id) + " length differs from the recording header");
    }

    const auto paths = recording_paths(path);
    json chunks = json::array();
    for (const auto &c : recording.chunks)
    {
        json entry = {{"chunk_id", c.chunk_id}, {"timestamp_s", c.timestamp_s}};
        if (c.truth_azimuth_rad)
            entry["truth_azimuth_deg"] = rad_to_deg(*c.truth_azimuth_rad);
        chunks.push_back(entry);
    }
    const json sidecar = {
        {"n_elements", h.n_elements},
        {"f_tx_hz", h.radio.f_tx_hz()},
        {"f_rx_hz", h.radio.f_rx_hz()},
        {"f_s_hz", h.radio.f_s_hz()},
        {"samples_per_slot", h.samples_per_slot},
        {"margin_samples", h.margin_samples},
        {"n_chunks", recording.chunks.size()},
        {"sample_format", sample_format_cf32},
        {"payload", paths.payload.filename().string()},
        {"chunks", chunks},
    };

    std::ofstream payload(paths.payload, std::ios::binary | std::ios::trunc);
    if (!payload)
        throw IoError("cannot open " + paths.payload.string() + " for writing");
    std::vector<char> buf(len * bytes_per_sample);
    for (const auto &c : recording.chunks)
    {
        for (std::size_t t = 0; t < len; ++t)
        {
            char *p = buf.data() + t * bytes_per_sample;
            put_f32_le(p, static_cast<float>(c.reference_channel[t].real()));
            put_f32_le(p + 4, static_cast<float>(c.reference_channel[t].imag()));
            put_f32_le(p + 8, static_cast<float>(c.array_channel[t].real()));
            put_f32_le(p + 12, static_cast<float>(c.array_channel[t].imag()));
        }
        payload.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    if (!payload.flush())
        throw IoError("failed writing " + paths.payload.string());

    std::ofstream side(paths.sidecar, std::ios::trunc);
    if (!side)
        throw IoError("cannot open " + paths.sidecar.string() + " for writing");
    side << sidecar.dump(2) << '\n';
    if (!side.flush())
        throw IoError("failed writing " + paths.sidecar.string());
}

Recording read_recording(const fs::path &path)
{
    const auto paths = recording_paths(path);
    std::ifstream side(paths.sidecar);
    if (!side)
        throw IoError("cannot open recording sidecar " + paths.sidecar.string());
    json j;
    try
    {
        j = json::parse(side);
    }
    catch (const json::parse_error &e)
    {
        throw DataError(paths.sidecar.string() + ": " + e.what());
    }

    const auto format = field<std::string>(j, "sample_format", paths.sidecar);
    if (format != sample_format_cf32)
        throw DataError(paths.sidecar.string() + ": unsupported sample format '" + format + "'");

    Recording rec;
    auto &h = rec.header;
    h.n_elements = field<int>(j, "n_elements", paths.sidecar);
    h.samples_per_slot = field<int>(j, "samples_per_slot", paths.sidecar);
    h.margin_samples = field<int>(j, "margin_samples", paths.sidecar);
    try
    {
        h.radio = RadioConfig(field<double>(j, "f_tx_hz", paths.sidecar), field<double>(j, "f_rx_hz", paths.sidecar),
                              field<double>(j, "f_s_hz", paths.sidecar));
        h.schedule().validate();
    }
    catch (const ConfigError &e)
    {
        throw DataError(paths.sidecar.string() + ": " + e.what());
    }
    const auto n_chunks = field<std::size_t>(j, "n_chunks", paths.sidecar);

    fs::path payload_path = paths.payload;
    if (j.contains("payload") && j["payload"].is_string())
        payload_path = paths.sidecar.parent_path() / j["payload"].get<std::string>();
    std::error_code ec;
    const auto actual = fs::file_size(payload_path, ec);
    if (ec)
        throw IoError("cannot open recording payload " + payload_path.string());

    const std::size_t len = h.chunk_length();
    const std::uintmax_t expected = static_cast<std::uintmax_t>(n_chunks) * len * bytes_per_sample;
    if (actual < expected)
        throw DataError("truncated payload " + payload_path.string() + ": expected " + std::to_string(expected) +
                        " bytes, found " + std::to_string(actual));
    if (actual > expected)
        throw DataError("payload/sidecar mismatch for " + payload_path.string() + ": sidecar implies " +
                        std::to_string(expected) + " bytes, payload has " + std::to_string(actual));

    json chunk_meta = j.contains("chunks") ? j["chunks"] : json::array();
    if (!chunk_meta.is_array() || (!chunk_meta.empty() && chunk_meta.size() != n_chunks))
        throw DataError(paths.sidecar.string() + ": chunk metadata count differs from n_chunks");

    std::ifstream payload(payload_path, std::ios::binary);
    if (!payload)
        throw IoError("cannot open recording payload " + payload_path.string());
    std::vector<char> buf(len * bytes_per_sample);
    rec.chunks.reserve(n_chunks);
    for (std::size_t k = 0; k < n_chunks; ++k)
    {
        if (!payload.read(buf.data(), static_cast<std::streamsize>(buf.size())))
            throw IoError("failed reading " + payload_path.string());
        TdmChunk c;
        c.schedule = h.schedule();
        c.radio = h.radio;
        c.chunk_id = static_cast<std::int64_t>(k);
        c.timestamp_s = static_cast<double>(k) * static_cast<double>(len) / h.radio.f_s_hz();
        c.reference_channel.resize(len);
        c.array_channel.resize(len);
        for (std::size_t t = 0; t < len; ++t)
        {
            const char *p = buf.data() + t * bytes_per_sample;
            c.reference_channel[t] = {get_f32_le(p), get_f32_le(p + 4)};
            c.array_channel[t] = {get_f32_le(p + 8), get_f32_le(p + 12)};
        }
        if (!chunk_meta.empty())
        {
            const auto &m = chunk_meta[k];
            if (m.contains("chunk_id"))
                c.chunk_id = m["chunk_id"].get<std::int64_t>();
            if (m.contains("timestamp_s"))
                c.timestamp_s = m["timestamp_s"].get<double>();
            if (m.contains("truth_azimuth_deg"))
                c.truth_azimuth_rad = wrap_angle(deg_to_rad(m["truth_azimuth_deg"].get<double>()));
        }
        rec.chunks.push_back(std::move(c));
    }
    return rec;
}

void write_spectrum_csv(std::ostream &out, const MusicSpectrum &spectrum)
{
    out << "angle_deg,power_db\n";
    for (std::size_t i = 0; i < spectrum.power.size(); ++i)
        out << fmt(rad_to_deg(spectrum.probe_angles_rad[i])) << ',' << fmt(10.0 * std::log10(spectrum.power[i]))
            << '\n';
    for (const auto &p : spectrum.peaks)
        out << "# peak," << fmt(rad_to_deg(p.angle_rad)) << ',' << fmt(10.0 * std::log10(p.power)) << '\n';
    out << "# sll_db," << fmt(spectrum.sll_db) << '\n';
}

void write_track_csv(std::ostream &out, std::span<const TrackRow> rows)
{
    out << "chunk,time_s,est_deg,sll_db,track_deg,held\n";
    for (const auto &r : rows)
        out << r.chunk_id << ',' << fmt(r.time_s) << ',' << (r.estimate_deg ? fmt(*r.estimate_deg) : "nan") << ','
            << fmt(r.sll_db) << ',' << fmt(r.track_deg) << ',' << (r.held ? 1 : 0) << '\n';
}

} // namespace ucadf
