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

#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace ucadf {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

// Wraps an angle in radians to [0, 2pi).
double wrap_angle(double rad);

// Wraps an angle in degrees to [0, 360).
double wrap_degrees(double deg);

// Carrier, tune and sample frequencies of the two-channel receiver. The IF is
// always derived as f_tx - f_rx.
class RadioConfig
{
public:
    // 2.4 GHz carrier, receiver tuned 50 kHz below, 1 MHz sampling.
    RadioConfig();
    RadioConfig(double f_tx_hz, double f_rx_hz, double f_s_hz);

    double f_tx_hz() const { return f_tx_; }
    double f_rx_hz() const { return f_rx_; }
    double f_s_hz() const { return f_s_; }
    double f_if_hz() const { return f_tx_ - f_rx_; }
    double wavelength_m() const { return speed_of_light / f_tx_; }

private:
    double f_tx_;
    double f_rx_;
    double f_s_;
};

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

// N points on a circle of the given radius. Point m sits at angle 2*pi*m/N,
// counterclockwise from the +x axis.
std::vector<Point2> uca_positions(int n_elements, double radius_m);

// N-element uniform circular array with a reference antenna at the origin.
class ArrayGeometry
{
public:
    ArrayGeometry(int n_elements, double radius_m, double wavelength_m);

    // Array with radius = radius_wavelengths * lambda for the given carrier.
    static ArrayGeometry from_wavelengths(int n_elements, double radius_wavelengths, const RadioConfig &radio);

    int n_elements() const { return static_cast<int>(positions_.size()); }
    double radius_m() const { return radius_; }
    double wavelength_m() const { return wavelength_; }
    double wavenumber() const { return two_pi / wavelength_; }
    // Angular position of element m on the circle, radians.
    double element_angle(int m) const { return two_pi * m / n_elements(); }
    const std::vector<Point2> &element_positions() const { return positions_; }
    Point2 reference_position() const { return {}; }

private:
    double radius_;
    double wavelength_;
    std::vector<Point2> positions_;
};

// Plane-wave response of the physical UCA, relative to the reference antenna:
// element m is exp(j*2*pi*(x_m*cos(theta) + y_m*sin(theta))/lambda).
CVector ideal_uca_steering(const ArrayGeometry &geometry, double theta_rad);

// First index of the virtual ULA, -floor(n/2).
inline int virtual_first_index(int n_virtual) { return -(n_virtual / 2); }

// Virtual ULA steering vector exp(-j*n*theta) for
// n = -floor(N/2) ... floor((N-1)/2).
CVector virtual_ula_steering(int n_virtual, double theta_rad);

// Contiguous sub-array of the virtual ULA: n = first_index ... first_index+length-1.
CVector virtual_ula_steering(int length, int first_index, double theta_rad);

} // namespace ucadf
