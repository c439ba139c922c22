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

#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ucadf/error.hpp"
#include "ucadf/io.hpp"

namespace ucadf {

using nlohmann::json;

std::string calibration_to_json(const CalibrationMatrix &cal)
{
    const auto n = cal.n_elements();
    json b = json::array();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            b.push_back({cal.b_matrix(r, c).real(), cal.b_matrix(r, c).imag()});
    json angles = json::array();
    for (double a : cal.source_angles_rad)
        angles.push_back(rad_to_deg(a));

    const json doc = {
        {"n_elements", n},
        {"angles_deg", angles},
        {"b_matrix", b},
        {"residual", cal.residual},
        {"condition_number", std::isfinite(cal.condition_number) ? json(cal.condition_number) : json(nullptr)},
        {"created_at", cal.created_at},
        {"flags", cal.flags()},
    };
    // nlohmann writes doubles with max_digits10 (17) significant digits
    return doc.dump(2) + "\n";
}

CalibrationMatrix calibration_from_json(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw DataError(std::string("calibration file: ") + e.what());
    }

    CalibrationMatrix cal;
    try
    {
        const int n = j.at("n_elements").get<int>();
        if (n < 1)
            throw DataError("calibration file: n_elements must be positive");
        const auto &b = j.at("b_matrix");
        if (!b.is_array() || b.size() != static_cast<std::size_t>(n) * n)
            throw DataError("calibration file: b_matrix must hold n_elements^2 = " + std::to_string(n * n) +
                            " [re, im] pairs");
        cal.b_matrix.resize(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
            {
                const auto &e = b[static_cast<std::size_t>(r) * n + c];
                if (!e.is_array() || e.size() != 2)
                    throw DataError("calibration file: b_matrix entries must be [re, im] pairs");
                cal.b_matrix(r, c) = {e[0].get<double>(), e[1].get<double>()};
            }
        for (const auto &a : j.at("angles_deg"))
            cal.source_angles_rad.push_back(deg_to_rad(a.get<double>()));
        cal.residual = j.at("residual").get<double>();
        if (j.contains("condition_number"))
            cal.condition_number = j["condition_number"].is_null() ? std::numeric_limits<double>::infinity()
                                                                    : j["condition_number"].get<double>();
        if (j.contains("created_at"))
            cal.created_at = j["created_at"].get<std::string>();
        if (j.contains("flags"))
            for (const auto &f : j["flags"])
            {
                const auto flag = f.get<std::string>();
                cal.pseudo_inverse |= flag == "pseudo_inverse";
                cal.underdetermined |= flag == "underdetermined";
            }
    }
    catch (const json::exception &e)
    {
        throw DataError(std::string("calibration file: ") + e.what());
    }
    return cal;
}

void save_calibration(const CalibrationMatrix &cal, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << calibration_to_json(cal);
    if (!out.flush())
        throw IoError("failed writing " + path.string());
}

CalibrationMatrix load_calibration(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open calibration file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return calibration_from_json(ss.str());
}

} // namespace ucadf
