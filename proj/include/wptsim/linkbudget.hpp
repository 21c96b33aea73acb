// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

namespace wptsim {

/// Regulatory band: an allowed frequency range with a radiated-power cap.
struct Band {
    std::string name;
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;
    double max_tx_power_w = 0.0;
};

enum class Combining { single, coherent, incoherent };

/// One power-transfer link. Transmit power is per antenna; use
/// per_antenna_power_dbm() to split a total-power budget.
struct LinkSpec {
    double tx_power_dbm = 0.0;  // per antenna
    int n_antennas = 1;
    Combining combining = Combining::single;
    double frequency_hz = 868e6;
    double distance_m = 1.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;
};

struct FeasibilityVerdict {
    double received_power_dbm = 0.0;
    double sensitivity_dbm = 0.0;
    bool feasible = false;
    double margin_db = 0.0;
};

enum class RegulatoryStatus { ok, violation, out_of_band };

struct RegulatoryVerdict {
    RegulatoryStatus status = RegulatoryStatus::out_of_band;
    std::string band_name;      // empty when out of band
    double limit_w = 0.0;       // band cap, 0 when out of band
};

/// Free-space path loss in dB. Throws std::domain_error on non-positive
/// distance or frequency.
[[nodiscard]] double fspl_db(double distance_m, double frequency_hz);

[[nodiscard]] double received_power_dbm(double tx_dbm, double path_loss_db,
                                        double tx_gain_dbi = 0.0,
                                        double rx_gain_dbi = 0.0);

/// Received power for the whole array: coherent combining adds 20*log10(N),
/// incoherent 10*log10(N) on top of the single-antenna link.
[[nodiscard]] double array_received_power_dbm(const LinkSpec& spec);

/// Splits a total radiated-power budget evenly over the array.
[[nodiscard]] double per_antenna_power_dbm(double total_power_w, int n_antennas);

/// Checks total transmit power against the band table. Boundary equality is
/// allowed. Throws std::invalid_argument on an empty table.
[[nodiscard]] RegulatoryVerdict check_regulatory(double tx_total_w,
                                                 double frequency_hz,
                                                 std::span<const Band> bands);

[[nodiscard]] FeasibilityVerdict feasibility(double received_dbm,
                                             double sensitivity_dbm);

/// The two EU sub-GHz bands this design targets.
[[nodiscard]] std::vector<Band> eu_default_bands();

/// Parses "name:f_low_hz:f_high_hz:max_tx_w" (as accepted in config files).
[[nodiscard]] Band parse_band(const std::string& text);

void validate(const LinkSpec& spec);

}  // namespace wptsim
