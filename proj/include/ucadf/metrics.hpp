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

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ucadf {

// Angle sweep outcome in degrees. A NaN estimate marks a chunk without a DoA
// and is left out of the statistics.
struct SweepResult
{
    std::vector<double> true_angles_deg;
    std::vector<double> estimated_angles_deg;
    std::vector<double> sll_values_db;
    double bin_width_deg = 60.0;

    std::size_t size() const { return true_angles_deg.size(); }
    std::size_t missing() const;
    void validate() const;
};

// Number of bins of the given width covering [0, 360); throws unless the width divides 360.
std::size_t bin_count(double bin_width_deg);

// est - truth wrapped to (-180, 180]
double wrapped_error_deg(double estimate_deg, double truth_deg);

struct ErrorStats
{
    double mae_deg = 0.0;
    double std_deg = 0.0; // population std of the absolute errors
};

ErrorStats mean_abs_error(const SweepResult &result);

enum class BinnedQuantity
{
    abs_error,
    sll
};

struct BinStats
{
    double center_deg = 0.0;
    std::size_t count = 0;
    double mean = 0.0; // NaN for an empty bin
    double std = 0.0;
};

// Statistics per true-angle bin covering [0, 360).
std::vector<BinStats> binned_stats(const SweepResult &result, BinnedQuantity quantity = BinnedQuantity::abs_error);

struct SllStats
{
    double mean_db = 0.0;
    double std_db = 0.0;
};

// Mean and std taken directly on the dB values.
SllStats sll_stats(const SweepResult &result);

SweepResult pool(std::span<const SweepResult> results);

struct LabeledSweep
{
    std::string label;
    SweepResult result;
};

// Rows `true_deg,est_deg,err_deg,sll_db` for every dataset, then comment
// lines with per-dataset summaries (when more than one), pooled MAE/std, SLL
// mean/std and the per-bin statistics.
void write_report_csv(std::ostream &out, std::span<const LabeledSweep> datasets);

} // namespace ucadf
