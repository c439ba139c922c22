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

#include "ucadf/array_geometry.hpp"

#include <cmath>
#include <string>

#include "ucadf/error.hpp"

namespace ucadf {

double wrap_angle(double rad)
{
    double w = std::fmod(rad, two_pi);
    if (w < 0.0)
        w += two_pi;
    // fmod of a tiny negative number can round back up to 2pi
    return w >= two_pi ? 0.0 : w;
}

double wrap_degrees(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w >= 360.0 ? 0.0 : w;
}

RadioConfig::RadioConfig() : RadioConfig(2.4e9, 2.4e9 - 50e3, 1e6) {}

RadioConfig::RadioConfig(double f_tx_hz, double f_rx_hz, double f_s_hz)
    : f_tx_(f_tx_hz), f_rx_(f_rx_hz), f_s_(f_s_hz)
{
    if (!(f_tx_ > 0.0) || !(f_rx_ > 0.0) || !(f_s_ > 0.0))
        throw ConfigError("radio frequencies must be positive");
    const double f_if = f_if_hz();
    if (!(f_if > 0.0) || !(f_if < 0.5 * f_s_))
        throw ConfigError("IF frequency " + std::to_string(f_if) + " Hz must lie in (0, f_s/2)");
}

std::vector<Point2> uca_positions(int n_elements, double radius_m)
{
    if (n_elements < 2)
        throw ConfigError("a circular array needs at least 2 elements, got " + std::to_string(n_elements));
    if (!(radius_m > 0.0))
        throw ConfigError("array radius must be positive");

    std::vector<Point2> out(static_cast<std::size_t>(n_elements));
    for (int m = 0; m < n_elements; ++m)
    {
        const double gamma = two_pi * m / n_elements;
        out[m] = {radius_m * std::cos(gamma), radius_m * std::sin(gamma)};
    }
    return out;
}

ArrayGeometry::ArrayGeometry(int n_elements, double radius_m, double wavelength_m)
    : radius_(radius_m), wavelength_(wavelength_m), positions_(uca_positions(n_elements, radius_m))
{
    if (!(wavelength_m > 0.0))
        throw ConfigError("wavelength must be positive");
}

ArrayGeometry ArrayGeometry::from_wavelengths(int n_elements, double radius_wavelengths, const RadioConfig &radio)
{
    const double lambda = radio.wavelength_m();
    return ArrayGeometry(n_elements, radius_wavelengths * lambda, lambda);
}

CVector ideal_uca_steering(const ArrayGeometry &geometry, double theta_rad)
{
    const double theta = wrap_angle(theta_rad);
    const double c = std::cos(theta), s = std::sin(theta);
    const double scale = two_pi / geometry.wavelength_m();
    const auto &pos = geometry.element_positions();

    CVector a(geometry.n_elements());
    for (int m = 0; m < geometry.n_elements(); ++m)
        a(m) = std::polar(1.0, scale * (pos[m].x * c + pos[m].y * s));
    return a;
}

CVector virtual_ula_steering(int n_virtual, double theta_rad)
{
    return virtual_ula_steering(n_virtual, virtual_first_index(n_virtual), theta_rad);
}

CVector virtual_ula_steering(int length, int first_index, double theta_rad)
{
    if (length < 1)
        throw ConfigError("virtual array length must be at least 1");
    CVector a(length);
    for (int i = 0; i < length; ++i)
        a(i) = std::polar(1.0, -static_cast<double>(first_index + i) * theta_rad);
    return a;
}

} // namespace ucadf
