// SPDX-License-Identifier: Apache-2.0

#include "wptsim/linkbudget.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wptsim/units.hpp"

using namespace wptsim;

TEST_CASE("free-space path loss") {
    // 24 m at 918 MHz: the advertised whole-store coverage distance
    CHECK(fspl_db(24.0, 918e6) == doctest::Approx(59.30886168014034).epsilon(1e-9));
    CHECK(fspl_db(24.0, 918e6) == doctest::Approx(59.3).epsilon(0.002));

    // identity distance lambda / 4 pi
    const double lambda = speed_of_light_mps / 918e6;
    CHECK(fspl_db(lambda / (4.0 * std::numbers::pi), 918e6) ==
          doctest::Approx(0.0).epsilon(1e-9));

    // doubling the distance adds 6.02 dB
    CHECK(fspl_db(48.0, 918e6) - fspl_db(24.0, 918e6) ==
          doctest::Approx(6.020599913279624).epsilon(1e-12));

    CHECK_THROWS_AS((void)fspl_db(0.0, 918e6), std::domain_error);
    CHECK_THROWS_AS((void)fspl_db(-1.0, 918e6), std::domain_error);
    CHECK_THROWS_AS((void)fspl_db(10.0, 0.0), std::domain_error);
}

TEST_CASE("path loss grows with distance and frequency") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist_m(0.1, 500.0);
    std::uniform_real_distribution<double> freq_hz(100e6, 6e9);
    for (int i = 0; i < 200; ++i) {
        const double d = dist_m(rng);
        const double f = freq_hz(rng);
        CHECK(fspl_db(d * 1.5, f) > fspl_db(d, f));
        CHECK(fspl_db(d, f * 1.5) > fspl_db(d, f));
    }
}

TEST_CASE("received power arithmetic") {
    CHECK(received_power_dbm(30.0, 60.0) == doctest::Approx(-30.0));
    CHECK(received_power_dbm(12.5, 0.0) == doctest::Approx(12.5));
    // 4 W ERP over the 24 m Friis path
    const double four_watt_dbm = watts_to_dbm(4.0);
    CHECK(received_power_dbm(four_watt_dbm, fspl_db(24.0, 918e6)) ==
          doctest::Approx(-23.288261766860714).epsilon(1e-9));
    CHECK(received_power_dbm(10.0, 20.0, 3.0, 2.0) == doctest::Approx(-5.0));
}

TEST_CASE("array combining laws") {
    LinkSpec one;
    one.tx_power_dbm = 20.0;
    one.n_antennas = 1;
    one.combining = Combining::single;
    one.frequency_hz = 868e6;
    one.distance_m = 5.0;
    const double p1 = array_received_power_dbm(one);
    CHECK(p1 == doctest::Approx(received_power_dbm(
                    20.0, fspl_db(5.0, 868e6))));

    LinkSpec coh = one;
    coh.n_antennas = 10;
    coh.combining = Combining::coherent;
    CHECK(array_received_power_dbm(coh) == doctest::Approx(p1 + 20.0));

    LinkSpec incoh = coh;
    incoh.combining = Combining::incoherent;
    CHECK(array_received_power_dbm(coh) - array_received_power_dbm(incoh) ==
          doctest::Approx(10.0 * std::log10(10.0)).epsilon(1e-12));

    // coherent >= incoherent >= single gain, equality only at N = 1
    for (int n : {1, 2, 7, 42, 84}) {
        LinkSpec c = one;
        c.n_antennas = n;
        c.combining = Combining::coherent;
        LinkSpec i = c;
        i.combining = Combining::incoherent;
        const double pc = array_received_power_dbm(c);
        const double pi = array_received_power_dbm(i);
        if (n == 1) {
            CHECK(pc == doctest::Approx(p1));
            CHECK(pi == doctest::Approx(p1));
        } else {
            CHECK(pc > pi);
            CHECK(pi > p1);
        }
    }

    CHECK(per_antenna_power_dbm(4.0, 4) == doctest::Approx(30.0));

    LinkSpec bad = one;
    bad.n_antennas = 3;  // single combining with several antennas
    CHECK_THROWS_AS((void)array_received_power_dbm(bad), std::domain_error);
    bad = one;
    bad.distance_m = 0.0;
    CHECK_THROWS_AS((void)array_received_power_dbm(bad), std::domain_error);
}

TEST_CASE("regulatory band check") {
    const auto bands = eu_default_bands();
    CHECK(check_regulatory(4.0, 918e6, bands).status == RegulatoryStatus::ok);
    CHECK(check_regulatory(2.0, 866e6, bands).status == RegulatoryStatus::ok);

    const auto over = check_regulatory(2.1, 866e6, bands);
    CHECK(over.status == RegulatoryStatus::violation);
    CHECK(over.limit_w == doctest::Approx(2.0));

    CHECK(check_regulatory(1.0, 500e6, bands).status ==
          RegulatoryStatus::out_of_band);

    CHECK_THROWS_AS((void)check_regulatory(1.0, 868e6, {}),
                    std::invalid_argument);

    // monotone: reducing power never breaks compliance
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> power_w(0.0, 6.0);
    std::uniform_real_distribution<double> freq_hz(800e6, 1000e6);
    for (int i = 0; i < 200; ++i) {
        const double p = power_w(rng);
        const double f = freq_hz(rng);
        if (check_regulatory(p, f, bands).status == RegulatoryStatus::ok) {
            CHECK(check_regulatory(p * 0.5, f, bands).status ==
                  RegulatoryStatus::ok);
        }
    }
}

TEST_CASE("feasibility verdict") {
    const auto powercast = feasibility(-30.0, -17.0);
    CHECK_FALSE(powercast.feasible);
    CHECK(powercast.margin_db == doctest::Approx(-13.0));

    const auto boundary = feasibility(-17.0, -17.0);
    CHECK(boundary.feasible);
    CHECK(boundary.margin_db == doctest::Approx(0.0));

    const auto strong = feasibility(0.0, -20.0);
    CHECK(strong.feasible);
    CHECK(strong.margin_db == doctest::Approx(20.0));

    // verdict flips exactly at received == sensitivity
    CHECK_FALSE(feasibility(-17.0 - 1e-12, -17.0).feasible);
    CHECK(feasibility(-17.0 + 1e-12, -17.0).feasible);
}

TEST_CASE("band parsing") {
    const Band band = parse_band("US 902-928:902e6:928e6:4.0");
    CHECK(band.name == "US 902-928");
    CHECK(band.f_low_hz == doctest::Approx(902e6));
    CHECK(band.f_high_hz == doctest::Approx(928e6));
    CHECK(band.max_tx_power_w == doctest::Approx(4.0));

    CHECK_THROWS_AS((void)parse_band("garbage"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_band("x:5:4:1"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_band("x:1:2:0"), std::invalid_argument);
}
