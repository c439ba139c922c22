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

#include <doctest.h>

#include "oracles.hpp"
#include "ucadf/array_geometry.hpp"
#include "ucadf/error.hpp"

using namespace ucadf;
using doctest::Approx;

TEST_CASE("radio defaults and validation")
{
    const RadioConfig radio;
    CHECK(radio.f_if_hz() == radio.f_tx_hz() - radio.f_rx_hz());
    CHECK(radio.f_if_hz() == Approx(50e3));
    CHECK(radio.wavelength_m() == Approx(0.124913524));

    CHECK_THROWS_AS(RadioConfig(2.4e9, 2.4e9, 1e6), ConfigError);
    CHECK_THROWS_AS(RadioConfig(2.4e9, 2.4e9 - 600e3, 1e6), ConfigError);
    CHECK_THROWS_AS(RadioConfig(2.4e9, 2.4e9 + 50e3, 1e6), ConfigError);
    CHECK_THROWS_AS(RadioConfig(2.4e9, 2.4e9 - 50e3, 0.0), ConfigError);
}

TEST_CASE("uca positions")
{
    const auto p8 = uca_positions(8, 0.0625);
    REQUIRE(p8.size() == 8);
    CHECK(p8[0].x == 0.0625);
    CHECK(p8[0].y == 0.0);
    CHECK(p8[2].x == Approx(0.0).epsilon(1e-15));
    CHECK(p8[2].y == Approx(0.0625));

    const auto p4 = uca_positions(4, 1.0);
    const double expected[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int m = 0; m < 4; ++m)
    {
        CHECK(p4[m].x == Approx(expected[m][0]).epsilon(1e-15));
        CHECK(std::abs(p4[m].y - expected[m][1]) < 1e-15);
    }

    CHECK_THROWS_AS(uca_positions(1, 1.0), ConfigError);
    CHECK_THROWS_AS(uca_positions(8, 0.0), ConfigError);
    CHECK_THROWS_AS(uca_positions(8, -1.0), ConfigError);
}

TEST_CASE("geometry invariants")
{
    const auto geo = ArrayGeometry::from_wavelengths(8, 0.5, RadioConfig{});
    CHECK(geo.reference_position().x == 0.0);
    CHECK(geo.reference_position().y == 0.0);
    CHECK(geo.wavenumber() * geo.radius_m() == Approx(pi).epsilon(1e-14));
    for (int m = 0; m < geo.n_elements(); ++m)
    {
        const auto p = geo.element_positions()[m];
        CHECK(std::abs(std::hypot(p.x, p.y) - geo.radius_m()) <= 1e-12 * geo.radius_m());
        CHECK(wrap_angle(std::atan2(p.y, p.x)) == Approx(geo.element_angle(m)));
    }
}

TEST_CASE("ideal steering examples")
{
    const ArrayGeometry geo(8, 0.5, 1.0);
    const auto a0 = ideal_uca_steering(geo, 0.0);
    CHECK(std::abs(a0(0) - cdouble(-1.0, 0.0)) < 1e-15);
    const auto a90 = ideal_uca_steering(geo, pi / 2);
    CHECK(std::abs(a90(0) - cdouble(1.0, 0.0)) < 1e-15);

    // Frozen from an independent element-by-element evaluation at 45 degrees.
    const cdouble frozen[8] = {{-0.6056998670788134, 0.79569320156748091}, {-1, 1.2246467991473532e-16},
                               {-0.6056998670788134, 0.79569320156748091}, {1, 0},
                               {-0.6056998670788134, -0.79569320156748091}, {-1, -1.2246467991473532e-16},
                               {-0.6056998670788134, -0.79569320156748091}, {1, -6.9757369960172635e-16}};
    const auto a45 = ideal_uca_steering(geo, deg_to_rad(45.0));
    for (int m = 0; m < 8; ++m)
        CHECK(std::abs(a45(m) - frozen[m]) < 1e-12);
}

TEST_CASE("ideal steering matches the direct formula")
{
    for (int n : {3, 5, 8, 12})
        for (double r : {0.25, 0.5, 0.8})
        {
            const ArrayGeometry geo(n, r, 1.0);
            for (int k = 0; k < 37; ++k)
            {
                const double th = -pi + k * 0.3;
                const auto got = ideal_uca_steering(geo, th);
                const auto want = oracle::uca_steering(n, r, th);
                for (int m = 0; m < n; ++m)
                {
                    CHECK(std::abs(got(m) - want[m]) < 1e-12);
                    CHECK(std::abs(got(m)) == Approx(1.0).epsilon(1e-14));
                }
            }
        }
}

TEST_CASE("ideal steering is 2pi periodic")
{
    const ArrayGeometry geo(8, 0.0625, 0.125);
    for (double th = 0.0; th < two_pi; th += 0.17)
        CHECK((ideal_uca_steering(geo, th + two_pi) - ideal_uca_steering(geo, th)).norm() < 1e-12);
}

TEST_CASE("rotation by one element spacing is a cyclic shift")
{
    const ArrayGeometry geo(8, 0.5, 1.0);
    const double step = two_pi / 8;
    for (double th = 0.0; th < two_pi; th += 0.23)
    {
        const auto a = ideal_uca_steering(geo, th);
        const auto shifted = ideal_uca_steering(geo, th - step);
        // element m of the rotated array sits where element m+1 sat
        for (int m = 0; m < 8; ++m)
            CHECK(std::abs(shifted(m) - a((m + 1) % 8)) < 1e-12);
    }
}

TEST_CASE("virtual ula steering")
{
    CHECK((virtual_ula_steering(8, 0.0) - CVector::Ones(8)).norm() < 1e-15);
    const auto v = virtual_ula_steering(8, pi / 2);
    CHECK(std::abs(v(0) - cdouble(1.0, 0.0)) < 1e-14); // n = -4
    CHECK(std::abs(v(5) - cdouble(0.0, -1.0)) < 1e-14); // n = 1
    const auto v3 = virtual_ula_steering(3, 1.0);
    CHECK(std::abs(v3(0) - std::polar(1.0, 1.0)) < 1e-15);
    CHECK(std::abs(v3(1) - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(v3(2) - std::polar(1.0, -1.0)) < 1e-15);
    CHECK(virtual_first_index(8) == -4);
    CHECK(virtual_first_index(7) == -3);

    for (int n : {1, 2, 7, 8})
        for (double th = 0.0; th < two_pi; th += 0.31)
        {
            const auto a = virtual_ula_steering(n, th);
            const auto b = virtual_ula_steering(n, -th);
            CHECK((b - a.conjugate()).norm() < 1e-13);
            const auto o = oracle::ula_steering(n, th);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(a(i) - o[i]) < 1e-13);
        }

    const auto sub = virtual_ula_steering(6, -4, 0.7);
    const auto full = virtual_ula_steering(8, 0.7);
    CHECK((sub - full.head(6)).norm() < 1e-15);
}

TEST_CASE("angle wrapping")
{
    CHECK(wrap_angle(-0.5) == Approx(two_pi - 0.5));
    CHECK(wrap_angle(two_pi) == 0.0);
    CHECK(wrap_degrees(-10.0) == Approx(350.0));
    CHECK(wrap_degrees(720.0) == 0.0);
    for (double x = -20.0; x < 20.0; x += 0.37)
    {
        const double w = wrap_angle(x);
        CHECK(w >= 0.0);
        CHECK(w < two_pi);
    }
}
