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

#include "ucadf/music_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ucadf/error.hpp"

namespace ucadf {

void SmoothingConfig::validate(int n_virtual) const
{
    if (h < 1 || h > n_virtual - 1)
        throw ConfigError("smoothing h=" + std::to_string(h) + " outside 1.." + std::to_string(n_virtual - 1));
    if (n_expected < 1)
        throw ConfigError("n_expected must be at least 1");
    if (subarray_length(n_virtual) < n_expected + 1)
        throw ConfigError("sub-array length " + std::to_string(subarray_length(n_virtual)) +
                          " leaves no noise subspace for n_expected=" + std::to_string(n_expected));
}

CMatrix covariance(const CVector &virtual_snapshot)
{
    return virtual_snapshot * virtual_snapshot.adjoint();
}

CMatrix average_covariance(std::span<const CVector> virtual_snapshots)
{
    if (virtual_snapshots.empty())
        throw DataError("no snapshots to average");
    const auto n = virtual_snapshots.front().size();
    CMatrix c = CMatrix::Zero(n, n);
    for (const auto &x : virtual_snapshots)
    {
        if (x.size() != n)
            throw DataError("snapshots differ in length");
        c.noalias() += x * x.adjoint();
    }
    return c / static_cast<double>(virtual_snapshots.size());
}

CMatrix forward_smooth(const CMatrix &c, int h)
{
    if (c.rows() != c.cols())
        throw DataError("covariance must be square");
    const auto n = static_cast<int>(c.rows());
    if (h < 1 || h > std::max(1, n - 1))
        throw ConfigError("smoothing h=" + std::to_string(h) + " outside 1.." + std::to_string(n - 1));
    const int len = n - h + 1;
    CMatrix out = CMatrix::Zero(len, len);
    for (int i = 0; i < h; ++i)
        out += c.block(i, i, len, len);
    return out / static_cast<double>(h);
}

CMatrix forward_backward(const CMatrix &c_f)
{
    if (c_f.rows() != c_f.cols())
        throw DataError("forward-backward smoothing needs a square matrix");
    // flip rows and columns, then conjugate
    const CMatrix flipped = c_f.reverse().conjugate();
    return 0.5 * (c_f + flipped);
}

CMatrix smooth_covariance(const CMatrix &c, const SmoothingConfig &config)
{
    config.validate(static_cast<int>(c.rows()));
    CMatrix c_f = forward_smooth(c, config.h);
    return config.forward_backward ? forward_backward(c_f) : c_f;
}

CMatrix noise_subspace(const CMatrix &c_smoothed, int n_expected)
{
    if (c_smoothed.rows() != c_smoothed.cols())
        throw DataError("noise subspace needs a square matrix");
    const auto len = static_cast<int>(c_smoothed.rows());
    if (n_expected < 1 || n_expected >= len)
        throw ConfigError("n_expected=" + std::to_string(n_expected) + " must lie in 1.." + std::to_string(len - 1));

    Eigen::JacobiSVD<CMatrix> svd(c_smoothed, Eigen::ComputeFullU);
    // JacobiSVD already sorts descending; keep the contract explicit anyway.
    const auto &sv = svd.singularValues();
    std::vector<int> order(len);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return sv(l) > sv(r); });

    CMatrix noise(len, len - n_expected);
    for (int i = n_expected; i < len; ++i)
        noise.col(i - n_expected) = svd.matrixU().col(order[i]);
    return noise;
}

std::vector<double> make_angle_grid(double step_deg)
{
    if (!(step_deg > 0.0) || step_deg > 360.0)
        throw ConfigError("grid step must lie in (0, 360] degrees");
    const auto count = static_cast<std::size_t>(std::ceil(360.0 / step_deg - 1e-9));
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = deg_to_rad(static_cast<double>(i) * step_deg);
    return grid;
}

std::vector<SpectrumPeak> find_peaks(std::span<const double> power, std::span<const double> angles_rad,
                                     int min_separation)
{
    if (power.size() != angles_rad.size())
        throw DataError("spectrum power and angle grid differ in length");
    const std::size_t n = power.size();
    std::vector<SpectrumPeak> candidates;
    if (n < 3)
        return candidates;

    for (std::size_t i = 0; i < n; ++i)
    {
        const double left = power[(i + n - 1) % n];
        const double right = power[(i + 1) % n];
        if (power[i] > left && power[i] > right)
            candidates.push_back({angles_rad[i], power[i], i});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const SpectrumPeak &l, const SpectrumPeak &r) { return l.power > r.power; });

    std::vector<SpectrumPeak> peaks;
    for (const auto &c : candidates)
    {
        const bool separated = std::all_of(peaks.begin(), peaks.end(), [&](const SpectrumPeak &p) {
            const std::size_t d = c.index > p.index ? c.index - p.index : p.index - c.index;
            return static_cast<int>(std::min(d, n - d)) >= min_separation;
        });
        if (separated)
            peaks.push_back(c);
    }
    return peaks;
}

MusicSpectrum music_spectrum(const CMatrix &noise, std::span<const double> grid_rad, int first_index, int min_separation)
{
    if (grid_rad.empty())
        throw ConfigError("probe angle grid is empty");
    if (noise.cols() == 0)
        throw ConfigError("noise subspace is empty");

    const auto len = noise.rows();
    const CMatrix noise_h = noise.adjoint();
    MusicSpectrum spec;
    spec.probe_angles_rad.assign(grid_rad.begin(), grid_rad.end());
    spec.power.resize(grid_rad.size());

    CVector a(len);
    for (std::size_t t = 0; t < grid_rad.size(); ++t)
    {
        const double theta = grid_rad[t];
        const cdouble step = std::polar(1.0, -theta);
        a(0) = std::polar(1.0, -first_index * theta);
        for (Eigen::Index i = 1; i < len; ++i)
            a(i) = a(i - 1) * step;
        double denom = (noise_h * a).squaredNorm();
        if (denom < music_denominator_floor)
        {
            denom = music_denominator_floor;
            spec.clamped = true;
        }
        spec.power[t] = 1.0 / denom;
    }

    spec.peaks = find_peaks(spec.power, spec.probe_angles_rad, min_separation);
    if (spec.peaks.size() >= 2)
        spec.sll_db = 10.0 * std::log10(spec.peaks[0].power / spec.peaks[1].power);
    else if (spec.peaks.size() == 1)
    {
        // no competing peak: report the main lobe against the spectrum floor
        const double floor = *std::min_element(spec.power.begin(), spec.power.end());
        spec.sll_db = 10.0 * std::log10(spec.peaks[0].power / floor);
    }
    return spec;
}

std::optional<DoaEstimate> estimate_doa(const MusicSpectrum &spectrum)
{
    if (spectrum.peaks.empty())
        return std::nullopt;
    const auto &top = spectrum.peaks.front();
    return DoaEstimate{top.angle_rad, spectrum.sll_db, top.power};
}

DoaTrack track_doa(DoaTrack state, double estimate_rad, double sll_db)
{
    if (!(state.alpha > 0.0 && state.alpha <= 1.0))
        throw ConfigError("tracking alpha must lie in (0, 1]");
    state.last_sll_db = sll_db;
    if (!state.initialized)
    {
        state.smoothed_angle_rad = wrap_angle(estimate_rad);
        state.initialized = true;
        return state;
    }
    if (sll_db < state.hold_threshold_db)
        return state;

    const double a = state.alpha;
    const double y = a * std::sin(estimate_rad) + (1.0 - a) * std::sin(state.smoothed_angle_rad);
    const double x = a * std::cos(estimate_rad) + (1.0 - a) * std::cos(state.smoothed_angle_rad);
    state.smoothed_angle_rad = wrap_angle(std::atan2(y, x));
    return state;
}

} // namespace ucadf
