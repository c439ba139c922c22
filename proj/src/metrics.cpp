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

#include "ucadf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ucadf/array_geometry.hpp"
#include "ucadf/error.hpp"

namespace ucadf {

namespace {

struct MeanStd
{
    double mean;
    double std;
};

MeanStd mean_std(const std::vector<double> &v)
{
    if (v.empty())
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double sum = 0.0;
    for (double x : v)
        sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double sq = 0.0;
    for (double x : v)
        sq += (x - mean) * (x - mean);
    return {mean, std::sqrt(sq / static_cast<double>(v.size()))};
}

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::size_t SweepResult::missing() const
{
    std::size_t n = 0;
    for (double e : estimated_angles_deg)
        n += std::isnan(e) ? 1 : 0;
    return n;
}

void SweepResult::validate() const
{
    if (estimated_angles_deg.size() != true_angles_deg.size() || sll_values_db.size() != true_angles_deg.size())
        throw DataError("sweep result columns differ in length");
    for (double t : true_angles_deg)
        if (!(t >= 0.0 && t < 360.0))
            throw DataError("true angle " + std::to_string(t) + " deg outside [0, 360)");
    if (!(bin_width_deg > 0.0))
        throw ConfigError("bin width must be positive");
}

std::size_t bin_count(double bin_width_deg)
{
    if (!(bin_width_deg > 0.0))
        throw ConfigError("bin width must be positive");
    const double bins_f = 360.0 / bin_width_deg;
    const auto n_bins = static_cast<std::size_t>(std::llround(bins_f));
    if (n_bins == 0 || std::abs(bins_f - static_cast<double>(n_bins)) > 1e-9)
        throw ConfigError("bin width " + fmt(bin_width_deg) + " deg does not divide 360");
    return n_bins;
}

double wrapped_error_deg(double estimate_deg, double truth_deg)
{
    double d = std::fmod(estimate_deg - truth_deg, 360.0);
    if (d > 180.0)
        d -= 360.0;
    else if (d <= -180.0)
        d += 360.0;
    return d;
}

ErrorStats mean_abs_error(const SweepResult &result)
{
    result.validate();
    std::vector<double> abs_err;
    for (std::size_t i = 0; i < result.size(); ++i)
        if (!std::isnan(result.estimated_angles_deg[i]))
            abs_err.push_back(std::abs(wrapped_error_deg(result.estimated_angles_deg[i], result.true_angles_deg[i])));
    if (abs_err.empty())
        throw DataError("sweep result holds no estimates");
    const auto [m, s] = mean_std(abs_err);
    return {m, s};
}

std::vector<BinStats> binned_stats(const SweepResult &result, BinnedQuantity quantity)
{
    result.validate();
    const double w = result.bin_width_deg;
    const std::size_t n_bins = bin_count(w);

    std::vector<std::vector<double>> values(n_bins);
    for (std::size_t i = 0; i < result.size(); ++i)
    {
        if (std::isnan(result.estimated_angles_deg[i]))
            continue;
        const double truth = wrap_degrees(result.true_angles_deg[i]);
        const auto bin = std::min(n_bins - 1, static_cast<std::size_t>(truth / w));
        values[bin].push_back(quantity == BinnedQuantity::abs_error
                                  ? std::abs(wrapped_error_deg(result.estimated_angles_deg[i], truth))
                                  : result.sll_values_db[i]);
    }

    std::vector<BinStats> out(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b)
    {
        const auto [m, s] = mean_std(values[b]);
        out[b] = {(static_cast<double>(b) + 0.5) * w, values[b].size(), m, s};
    }
    return out;
}

SllStats sll_stats(const SweepResult &result)
{
    result.validate();
    std::vector<double> v;
    for (std::size_t i = 0; i < result.size(); ++i)
        if (!std::isnan(result.estimated_angles_deg[i]))
            v.push_back(result.sll_values_db[i]);
    if (v.empty())
        throw DataError("sweep result holds no SLL values");
    const auto [m, s] = mean_std(v);
    return {m, s};
}

SweepResult pool(std::span<const SweepResult> results)
{
    SweepResult out;
    if (!results.empty())
        out.bin_width_deg = results.front().bin_width_deg;
    for (const auto &r : results)
    {
        r.validate();
        out.true_angles_deg.insert(out.true_angles_deg.end(), r.true_angles_deg.begin(), r.true_angles_deg.end());
        out.estimated_angles_deg.insert(out.estimated_angles_deg.end(), r.estimated_angles_deg.begin(),
                                        r.estimated_angles_deg.end());
        out.sll_values_db.insert(out.sll_values_db.end(), r.sll_values_db.begin(), r.sll_values_db.end());
    }
    return out;
}

void write_report_csv(std::ostream &out, std::span<const LabeledSweep> datasets)
{
    std::vector<SweepResult> all;
    out << "true_deg,est_deg,err_deg,sll_db\n";
    for (const auto &d : datasets)
    {
        d.result.validate();
        for (std::size_t i = 0; i < d.result.size(); ++i)
        {
            const double t = d.result.true_angles_deg[i];
            const double e = d.result.estimated_angles_deg[i];
            out << fmt(t) << ',' << fmt(e) << ',' << fmt(std::isnan(e) ? e : wrapped_error_deg(e, t)) << ','
                << fmt(d.result.sll_values_db[i]) << '\n';
        }
        all.push_back(d.result);
    }

    if (datasets.size() > 1)
    {
        for (const auto &d : datasets)
        {
            const auto err = mean_abs_error(d.result);
            const auto sll = sll_stats(d.result);
            out << "# dataset," << d.label << ',' << d.result.size() << ',' << fmt(err.mae_deg) << ','
                << fmt(err.std_deg) << ',' << fmt(sll.mean_db) << ',' << fmt(sll.std_db) << '\n';
        }
    }

    const SweepResult pooled = pool(all);
    const auto err = mean_abs_error(pooled);
    const auto sll = sll_stats(pooled);
    out << "# samples," << pooled.size() << '\n';
    out << "# missing," << pooled.missing() << '\n';
    out << "# mae_deg," << fmt(err.mae_deg) << '\n';
    out << "# std_deg," << fmt(err.std_deg) << '\n';
    out << "# sll_mean_db," << fmt(sll.mean_db) << '\n';
    out << "# sll_std_db," << fmt(sll.std_db) << '\n';
    const auto err_bins = binned_stats(pooled, BinnedQuantity::abs_error);
    const auto sll_bins = binned_stats(pooled, BinnedQuantity::sll);
    for (std::size_t b = 0; b < err_bins.size(); ++b)
        out << "# bin," << fmt(err_bins[b].center_deg) << ',' << err_bins[b].count << ',' << fmt(err_bins[b].mean)
            << ',' << fmt(err_bins[b].std) << ',' << fmt(sll_bins[b].mean) << ',' << fmt(sll_bins[b].std) << '\n';
}

} // namespace ucadf
