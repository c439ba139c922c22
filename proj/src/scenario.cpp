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

#include "ucadf/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ucadf/error.hpp"

namespace ucadf {

namespace {

class Reader
{
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    std::string where(const YAML::Mark &mark) const
    {
        if (mark.is_null())
            return source_ + ": ";
        return source_ + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1) + ": ";
    }

    [[noreturn]] void fail(const YAML::Node &node, const std::string &msg) const
    {
        throw ConfigError(where(node.Mark()) + msg);
    }

    void require_map(const YAML::Node &node, const std::string &name) const
    {
        if (!node.IsMap())
            fail(node, "'" + name + "' must be a mapping");
    }

    void allow_keys(const YAML::Node &map, std::initializer_list<const char *> keys, const std::string &name) const
    {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto &kv : map)
        {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key))
                throw ConfigError(where(kv.first.Mark()) + "unknown key '" + key + "' in '" + name + "'");
        }
    }

    template <class T>
    T scalar(const YAML::Node &node, const std::string &name) const
    {
        if (!node.IsScalar())
            fail(node, "'" + name + "' must be a scalar");
        try
        {
            return node.as<T>();
        }
        catch (const YAML::Exception &)
        {
            fail(node, "'" + name + "' has an invalid value '" + node.Scalar() + "'");
        }
    }

    template <class T>
    void optional(const YAML::Node &map, const char *key, T &out) const
    {
        if (const auto n = map[key])
            out = scalar<T>(n, key);
    }

    std::vector<double> numbers(const YAML::Node &node, const std::string &name) const
    {
        if (!node.IsSequence())
            fail(node, "'" + name + "' must be a list of numbers");
        std::vector<double> out;
        for (const auto &v : node)
            out.push_back(scalar<double>(v, name));
        return out;
    }

    cdouble complex_value(const YAML::Node &node, const std::string &name) const
    {
        if (node.IsScalar())
            return {scalar<double>(node, name), 0.0};
        if (!node.IsSequence() || node.size() != 2)
            fail(node, "'" + name + "' entries must be [re, im] pairs");
        return {scalar<double>(node[0], name), scalar<double>(node[1], name)};
    }

    // Runs `check` and re-throws configuration errors at the node position.
    template <class F>
    void validate_at(const YAML::Node &node, F &&check) const
    {
        try
        {
            check();
        }
        catch (const ConfigError &e)
        {
            fail(node, e.what());
        }
    }

private:
    std::string source_;
};

void parse_geometry(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "geometry");
    r.allow_keys(n, {"n_elements", "radius_wavelengths", "radius_m"}, "geometry");
    r.optional(n, "n_elements", cfg.n_elements);
    r.optional(n, "radius_wavelengths", cfg.radius_wavelengths);
    if (n["radius_m"])
        cfg.radius_m = r.scalar<double>(n["radius_m"], "radius_m");
    if (cfg.n_elements < 2)
        r.fail(n["n_elements"] ? n["n_elements"] : n, "n_elements must be at least 2");
    if (!((cfg.radius_m ? *cfg.radius_m : cfg.radius_wavelengths) > 0.0))
        r.fail(n, "array radius must be positive");
}

void parse_radio(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "radio");
    r.allow_keys(n, {"f_tx_hz", "f_rx_hz", "f_s_hz"}, "radio");
    double f_tx = cfg.radio.f_tx_hz(), f_rx = cfg.radio.f_rx_hz(), f_s = cfg.radio.f_s_hz();
    r.optional(n, "f_tx_hz", f_tx);
    r.optional(n, "f_rx_hz", f_rx);
    r.optional(n, "f_s_hz", f_s);
    r.validate_at(n, [&] { cfg.radio = RadioConfig(f_tx, f_rx, f_s); });
}

void parse_schedule(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "schedule");
    r.allow_keys(n, {"samples_per_slot", "margin_samples", "slot_phases_cycles"}, "schedule");
    r.optional(n, "samples_per_slot", cfg.schedule.samples_per_slot);
    r.optional(n, "margin_samples", cfg.schedule.margin_samples);
    if (n["slot_phases_cycles"])
        cfg.schedule.slot_phases = r.numbers(n["slot_phases_cycles"], "slot_phases_cycles");
}

void parse_sources(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    if (!n.IsSequence() || n.size() == 0)
        r.fail(n, "'sources' must be a non-empty list");
    for (const auto &s : n)
    {
        r.require_map(s, "sources[]");
        r.allow_keys(s, {"amplitude", "phase_cycles", "frequency_hz", "azimuth_deg"}, "sources[]");
        SourceSpec src;
        src.frequency_hz = cfg.radio.f_if_hz();
        r.optional(s, "amplitude", src.amplitude);
        r.optional(s, "phase_cycles", src.phase_cycles);
        r.optional(s, "frequency_hz", src.frequency_hz);
        double az_deg = 0.0;
        r.optional(s, "azimuth_deg", az_deg);
        src.azimuth_rad = deg_to_rad(az_deg);
        if (!(src.amplitude >= 0.0))
            r.fail(s["amplitude"], "source amplitude must be non-negative");
        if (!(std::abs(src.frequency_hz) < 0.5 * cfg.radio.f_s_hz()))
            r.fail(s["frequency_hz"] ? s["frequency_hz"] : s, "source frequency must be below Nyquist");
        cfg.sources.push_back(src);
    }
}

void parse_chunks(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "chunks");
    r.allow_keys(n, {"count", "trajectory_deg", "sweep"}, "chunks");
    r.optional(n, "count", cfg.n_chunks);
    if (cfg.n_chunks < 0)
        r.fail(n["count"], "chunk count must be non-negative");
    if (n["trajectory_deg"] && n["sweep"])
        r.fail(n, "give either 'trajectory_deg' or 'sweep', not both");
    if (n["trajectory_deg"])
    {
        for (double d : r.numbers(n["trajectory_deg"], "trajectory_deg"))
            cfg.trajectory_rad.push_back(deg_to_rad(d));
        if (cfg.trajectory_rad.empty())
            r.fail(n["trajectory_deg"], "trajectory is empty");
    }
    if (const auto s = n["sweep"])
    {
        r.require_map(s, "sweep");
        r.allow_keys(s, {"start_deg", "step_deg", "count"}, "chunks.sweep");
        double start = 0.0, step = 10.0;
        int count = 36;
        r.optional(s, "start_deg", start);
        r.optional(s, "step_deg", step);
        r.optional(s, "count", count);
        if (count < 1)
            r.fail(s, "sweep count must be positive");
        for (int i = 0; i < count; ++i)
            cfg.trajectory_rad.push_back(deg_to_rad(start + i * step));
    }
}

CMatrix parse_matrix(const Reader &r, const YAML::Node &n, int size)
{
    if (!n.IsSequence() || n.size() != static_cast<std::size_t>(size))
        r.fail(n, "coupling_matrix must have n_elements rows");
    CMatrix m(size, size);
    for (int i = 0; i < size; ++i)
    {
        const auto row = n[i];
        if (!row.IsSequence() || row.size() != static_cast<std::size_t>(size))
            r.fail(row, "coupling_matrix rows must have n_elements entries");
        for (int k = 0; k < size; ++k)
            m(i, k) = r.complex_value(row[k], "coupling_matrix");
    }
    return m;
}

void parse_imperfections(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "imperfections");
    r.allow_keys(n,
                 {"noise_sigma", "snapshot_snr_db", "switch_phase_error_deg", "random_switch_phase_error_deg",
                  "coupling_matrix", "random_coupling", "per_port_gain", "differential_phase_cycles"},
                 "imperfections");
    auto &imp = cfg.imperfections;
    r.optional(n, "noise_sigma", imp.noise_sigma);
    if (n["noise_sigma"] && n["snapshot_snr_db"])
        r.fail(n, "give either 'noise_sigma' or 'snapshot_snr_db', not both");
    if (n["snapshot_snr_db"])
        cfg.snapshot_snr_db = r.scalar<double>(n["snapshot_snr_db"], "snapshot_snr_db");
    if (n["switch_phase_error_deg"])
        imp.switch_phase_error_deg = r.numbers(n["switch_phase_error_deg"], "switch_phase_error_deg");
    r.optional(n, "random_switch_phase_error_deg", cfg.random_switch_error_deg);
    if (!(cfg.random_switch_error_deg >= 0.0 && cfg.random_switch_error_deg <= max_switch_phase_error_deg))
        r.fail(n["random_switch_phase_error_deg"], "random_switch_phase_error_deg must lie in [0, 3]");
    if (n["switch_phase_error_deg"] && n["random_switch_phase_error_deg"])
        r.fail(n, "give either explicit or random switch phase errors, not both");
    if (n["coupling_matrix"])
        imp.coupling = parse_matrix(r, n["coupling_matrix"], cfg.n_elements);
    r.optional(n, "random_coupling", cfg.random_coupling);
    if (!(cfg.random_coupling >= 0.0))
        r.fail(n["random_coupling"], "random_coupling must be non-negative");
    if (n["coupling_matrix"] && n["random_coupling"])
        r.fail(n, "give either 'coupling_matrix' or 'random_coupling', not both");
    if (const auto g = n["per_port_gain"])
    {
        if (!g.IsSequence())
            r.fail(g, "per_port_gain must be a list");
        imp.per_port_gain.resize(static_cast<Eigen::Index>(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i)
            imp.per_port_gain(static_cast<Eigen::Index>(i)) = r.complex_value(g[i], "per_port_gain");
    }
    r.optional(n, "differential_phase_cycles", imp.differential_phase_cycles);
    r.validate_at(n, [&] { imp.validate(cfg.n_elements); });
}

void parse_estimator(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "estimator");
    r.allow_keys(n, {"h", "forward_backward", "n_expected", "grid_deg", "track_alpha", "hold_threshold_db"},
                 "estimator");
    auto &e = cfg.estimator;
    r.optional(n, "h", e.smoothing.h);
    r.optional(n, "forward_backward", e.smoothing.forward_backward);
    r.optional(n, "n_expected", e.smoothing.n_expected);
    r.optional(n, "grid_deg", e.grid_step_deg);
    r.optional(n, "track_alpha", e.track_alpha);
    r.optional(n, "hold_threshold_db", e.hold_threshold_db);
    r.validate_at(n, [&] {
        e.smoothing.validate(cfg.n_elements);
        if (!(e.grid_step_deg > 0.0 && e.grid_step_deg <= 360.0))
            throw ConfigError("grid_deg must lie in (0, 360]");
        if (!(e.track_alpha > 0.0 && e.track_alpha <= 1.0))
            throw ConfigError("track_alpha must lie in (0, 1]");
    });
}

void parse_sweep(const Reader &r, const YAML::Node &n, ScenarioConfig &cfg)
{
    r.require_map(n, "sweep");
    r.allow_keys(n, {"calibration_spacing_deg", "test_start_deg", "test_step_deg", "chunks_per_angle", "bin_width_deg"},
                 "sweep");
    auto &s = cfg.sweep;
    r.optional(n, "calibration_spacing_deg", s.calibration_spacing_deg);
    r.optional(n, "test_start_deg", s.test_start_deg);
    r.optional(n, "test_step_deg", s.test_step_deg);
    r.optional(n, "chunks_per_angle", s.chunks_per_angle);
    r.optional(n, "bin_width_deg", s.bin_width_deg);
    r.validate_at(n, [&] { s.validate(); });
}

} // namespace

std::vector<double> SweepProtocol::calibration_angles_rad() const
{
    std::vector<double> out;
    const int count = static_cast<int>(std::floor(360.0 / calibration_spacing_deg + 1e-9));
    for (int i = 0; i < count; ++i)
        out.push_back(deg_to_rad(i * calibration_spacing_deg));
    return out;
}

std::vector<double> SweepProtocol::test_angles_rad() const
{
    std::vector<double> out;
    const int count = static_cast<int>(std::floor(360.0 / test_step_deg + 1e-9));
    for (int i = 0; i < count; ++i)
        out.push_back(deg_to_rad(wrap_degrees(test_start_deg + i * test_step_deg)));
    return out;
}

void SweepProtocol::validate() const
{
    if (!(calibration_spacing_deg > 0.0 && calibration_spacing_deg <= 360.0))
        throw ConfigError("calibration_spacing_deg must lie in (0, 360]");
    if (!(test_step_deg > 0.0 && test_step_deg <= 360.0))
        throw ConfigError("test_step_deg must lie in (0, 360]");
    if (chunks_per_angle < 1)
        throw ConfigError("chunks_per_angle must be positive");
    const double bins = 360.0 / bin_width_deg;
    if (!(bin_width_deg > 0.0) || std::abs(bins - std::round(bins)) > 1e-9)
        throw ConfigError("bin_width_deg must divide 360");
}

ArrayGeometry ScenarioConfig::geometry() const
{
    const double lambda = radio.wavelength_m();
    return ArrayGeometry(n_elements, radius_m ? *radius_m : radius_wavelengths * lambda, lambda);
}

ImperfectionSpec ScenarioConfig::resolve_imperfections(std::uint64_t draw_seed) const
{
    ImperfectionSpec imp = imperfections;
    std::mt19937_64 rng(chunk_seed(draw_seed, 0x1a2b3c4dull));
    if (random_coupling > 0.0)
    {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        imp.coupling = CMatrix::Identity(n_elements, n_elements);
        for (int i = 0; i < n_elements; ++i)
            for (int k = 0; k < n_elements; ++k)
            {
                const double re = g(rng), im = g(rng);
                imp.coupling(i, k) += random_coupling * cdouble(re, im);
            }
    }
    if (random_switch_error_deg > 0.0)
    {
        std::uniform_real_distribution<double> u(-random_switch_error_deg, random_switch_error_deg);
        imp.switch_phase_error_deg.resize(n_elements);
        for (auto &e : imp.switch_phase_error_deg)
            e = u(rng);
    }
    if (snapshot_snr_db && !sources.empty())
        imp.noise_sigma = noise_sigma_for_snapshot_snr(sources.front().amplitude, schedule.used_samples(),
                                                       *snapshot_snr_db);
    return imp;
}

std::vector<TdmChunk> ScenarioConfig::simulate() const
{
    validate();
    const auto geo = geometry();
    const auto imp = resolve_imperfections(seed);
    std::vector<std::vector<SourceSpec>> per_chunk;
    if (!trajectory_rad.empty())
        per_chunk = apply_doa_motion(sources, trajectory_rad);
    else
        per_chunk.assign(static_cast<std::size_t>(n_chunks), sources);

    std::vector<TdmChunk> chunks;
    chunks.reserve(per_chunk.size());
    for (std::size_t i = 0; i < per_chunk.size(); ++i)
        chunks.push_back(simulate_chunk(geo, radio, per_chunk[i], schedule, imp, chunk_seed(seed, i),
                                        static_cast<std::int64_t>(i)));
    return chunks;
}

std::vector<TdmChunk> ScenarioConfig::simulate_at(const std::vector<double> &azimuths_rad, int chunks_per_angle,
                                                  std::uint64_t draw_seed, std::uint64_t stream) const
{
    validate();
    const auto geo = geometry();
    const auto imp = resolve_imperfections(draw_seed);
    const std::uint64_t stream_seed = chunk_seed(draw_seed, stream);
    std::vector<double> trajectory;
    for (double az : azimuths_rad)
        for (int k = 0; k < chunks_per_angle; ++k)
            trajectory.push_back(az);
    const auto per_chunk = apply_doa_motion(sources, trajectory);

    std::vector<TdmChunk> chunks;
    chunks.reserve(per_chunk.size());
    for (std::size_t i = 0; i < per_chunk.size(); ++i)
        chunks.push_back(simulate_chunk(geo, radio, per_chunk[i], schedule, imp, chunk_seed(stream_seed, i),
                                        static_cast<std::int64_t>(i)));
    return chunks;
}

void ScenarioConfig::validate() const
{
    if (sources.empty())
        throw ConfigError("scenario has no sources");
    (void)geometry();
    TdmSchedule s = schedule;
    s.validate();
    if (s.n_slots != n_elements)
        throw ConfigError("schedule slot count must equal n_elements");
    imperfections.validate(n_elements);
    estimator.smoothing.validate(n_elements);
    sweep.validate();
}

ScenarioConfig parse_scenario(const std::string &text, const std::string &source_name)
{
    const Reader r(source_name);
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (const YAML::ParserException &e)
    {
        throw ConfigError(r.where(e.mark) + e.msg);
    }
    if (!root.IsMap())
        throw ConfigError(r.where(root.Mark()) + "scenario must be a mapping");
    r.allow_keys(root,
                 {"geometry", "radio", "schedule", "sources", "chunks", "imperfections", "estimator", "sweep", "seed"},
                 "scenario");

    ScenarioConfig cfg;
    if (root["geometry"])
        parse_geometry(r, root["geometry"], cfg);
    if (root["radio"])
        parse_radio(r, root["radio"], cfg);
    cfg.schedule.n_slots = cfg.n_elements;
    if (root["schedule"])
        parse_schedule(r, root["schedule"], cfg);
    r.validate_at(root["schedule"] ? root["schedule"] : root, [&] { cfg.schedule.validate(); });
    if (!root["sources"])
        throw ConfigError(r.where(root.Mark()) + "missing required key 'sources'");
    parse_sources(r, root["sources"], cfg);
    if (root["chunks"])
        parse_chunks(r, root["chunks"], cfg);
    if (root["imperfections"])
        parse_imperfections(r, root["imperfections"], cfg);
    if (root["estimator"])
        parse_estimator(r, root["estimator"], cfg);
    else
        r.validate_at(root, [&] { cfg.estimator.smoothing.validate(cfg.n_elements); });
    if (root["sweep"])
        parse_sweep(r, root["sweep"], cfg);
    if (root["seed"])
        cfg.seed = r.scalar<std::uint64_t>(root["seed"], "seed");
    r.validate_at(root, [&] { cfg.validate(); });
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open scenario " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

} // namespace ucadf
