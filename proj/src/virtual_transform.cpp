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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <string>

#include "ucadf/error.hpp"
#include "ucadf/virtual_transform.hpp"

namespace ucadf {

BeamspaceTransform build_beamspace(const ArrayGeometry &geometry, int h, double bessel_floor)
{
    const int n = geometry.n_elements();
    if (h < 0)
        throw ConfigError("mode order h must be non-negative");
    if (2 * h + 1 > n)
        throw ConfigError("mode order h=" + std::to_string(h) + " needs 2h+1 <= N=" + std::to_string(n));

    const double kr = geometry.wavenumber() * geometry.radius_m();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    BeamspaceTransform t;
    t.h = h;
    t.f_matrix.resize(2 * h + 1, n);
    t.j_diagonal.resize(2 * h + 1);
    for (int i = 0; i < 2 * h + 1; ++i)
    {
        const int mode = i - h;
        const double jn = bessel_jn(mode, kr);
        if (!(std::abs(jn) > bessel_floor))
            throw ConfigError("mode n=" + std::to_string(mode) + " unusable: |J_n(kr)| = " + std::to_string(std::abs(jn)) +
                              " is below the floor " + std::to_string(bessel_floor));
        // j^n for integer n, exact
        static const cdouble j_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const cdouble jn_phase = j_pow[((mode % 4) + 4) % 4];
        t.j_diagonal(i) = 1.0 / (sqrt_n * jn_phase * jn);
        for (int m = 0; m < n; ++m)
            t.f_matrix(i, m) = std::polar(1.0 / sqrt_n, -mode * geometry.element_angle(m));
    }
    return t;
}

CVector ideal_virtual_transform(const BeamspaceTransform &transform, const CVector &snapshot)
{
    if (snapshot.size() != transform.f_matrix.cols())
        throw DataError("snapshot length " + std::to_string(snapshot.size()) + " does not match transform width " +
                        std::to_string(transform.f_matrix.cols()));
    return transform.j_diagonal.asDiagonal() * (transform.f_matrix * snapshot);
}

std::vector<std::string> CalibrationMatrix::flags() const
{
    std::vector<std::string> out;
    if (pseudo_inverse)
        out.emplace_back("pseudo_inverse");
    if (underdetermined)
        out.emplace_back("underdetermined");
    return out;
}

CalibrationMatrix solve_calibration(const CalibrationSet &calset, const CalibrationOptions &options)
{
    const CMatrix &a = calset.measured_steering;
    const CMatrix &a_virt = calset.virtual_steering;
    if (a.cols() == 0)
        throw DataError("calibration set is empty");
    if (a.cols() != a_virt.cols() || a.cols() != static_cast<Eigen::Index>(calset.angles_rad.size()))
        throw DataError("calibration set column counts disagree");
    if (a.rows() != a_virt.rows())
        throw DataError("measured and virtual steering vectors differ in length");

    CalibrationMatrix cal;
    cal.source_angles_rad = calset.angles_rad;
    cal.created_at = utc_timestamp();
    cal.underdetermined = calset.underdetermined();

    const CMatrix gram = a * a.adjoint();
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    cal.condition_number = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

    if (cal.condition_number <= options.condition_cap)
    {
        // B^H = (A A^H)^{-1} A A~^H
        const CMatrix bh = gram.ldlt().solve(a * a_virt.adjoint());
        cal.b_matrix = bh.adjoint();
    }
    else
    {
        if (!options.allow_pseudo_inverse)
            throw NumericError("calibration steering matrix is rank deficient (cond(A A^H) = " +
                               std::to_string(cal.condition_number) + ")");
        // Truncated SVD of A at the same relative level as the condition cap on
        // A A^H, giving the minimum-norm least-squares solution.
        Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        const double cut = sv(0) / std::sqrt(options.condition_cap);
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cut)
                inv(i) = 1.0 / sv(i);
        const CMatrix a_pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
        cal.b_matrix = a_virt * a_pinv;
        cal.pseudo_inverse = true;
    }
    cal.residual = (a_virt - cal.b_matrix * a).norm();
    return cal;
}

CalibrationSet measure_steering_matrix(const std::vector<std::pair<double, Snapshot>> &snapshots_by_angle)
{
    if (snapshots_by_angle.empty())
        throw DataError("no calibration snapshots");

    std::vector<std::pair<double, const Snapshot *>> sorted;
    sorted.reserve(snapshots_by_angle.size());
    for (const auto &[angle, snap] : snapshots_by_angle)
        sorted.emplace_back(wrap_angle(angle), &snap);
    std::sort(sorted.begin(), sorted.end(), [](const auto &l, const auto &r) { return l.first < r.first; });

    const auto n = sorted.front().second->values.size();
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        if (sorted[i].second->values.size() != n)
            throw DataError("calibration snapshots differ in length");
        if (i > 0 && sorted[i].first - sorted[i - 1].first < 1e-12)
            throw DataError("duplicate calibration angle " + std::to_string(rad_to_deg(sorted[i].first)) + " deg");
    }

    CalibrationSet set;
    const auto l = static_cast<Eigen::Index>(sorted.size());
    set.measured_steering.resize(n, l);
    set.virtual_steering.resize(n, l);
    for (Eigen::Index i = 0; i < l; ++i)
    {
        const auto &[angle, snap] = sorted[i];
        const double norm = snap->values.norm();
        if (!(norm > 0.0))
            throw DataError("calibration snapshot at " + std::to_string(rad_to_deg(angle)) + " deg is zero");
        set.angles_rad.push_back(angle);
        set.measured_steering.col(i) = snap->values / norm;
        set.virtual_steering.col(i) = virtual_ula_steering(static_cast<int>(n), angle);
    }
    return set;
}

CalibrationSet measure_steering_matrix(const std::map<double, Snapshot> &snapshots_by_angle)
{
    return measure_steering_matrix(
        std::vector<std::pair<double, Snapshot>>(snapshots_by_angle.begin(), snapshots_by_angle.end()));
}

CVector apply_calibration(const CalibrationMatrix &cal, const CVector &snapshot)
{
    if (snapshot.size() != cal.b_matrix.cols())
        throw DataError("snapshot length " + std::to_string(snapshot.size()) + " does not match calibration for N=" +
                        std::to_string(cal.b_matrix.cols()));
    return cal.b_matrix * snapshot;
}

std::string utc_timestamp()
{
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

CalibrationMatrix ideal_calibration(const ArrayGeometry &geometry, double spacing_rad)
{
    if (!(spacing_rad > 0.0))
        throw ConfigError("calibration spacing must be positive");
    std::vector<std::pair<double, Snapshot>> probes;
    const int count = static_cast<int>(std::floor(two_pi / spacing_rad + 1e-9));
    for (int i = 0; i < count; ++i)
    {
        const double angle = i * spacing_rad;
        probes.emplace_back(angle, Snapshot{ideal_uca_steering(geometry, angle)});
    }
    return solve_calibration(measure_steering_matrix(probes));
}

} // namespace ucadf
