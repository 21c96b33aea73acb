// SPDX-License-Identifier: Apache-2.0

#include "wptsim/linkbudget.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wptsim/units.hpp"

namespace wptsim {

double fspl_db(double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0)) {
        throw std::domain_error("fspl_db: distance must be positive");
    }
    if (!(frequency_hz > 0.0)) {
        throw std::domain_error("fspl_db: frequency must be positive");
    }
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m *
                             frequency_hz / speed_of_light_mps);
}

double received_power_dbm(double tx_dbm, double path_loss_db,
                          double tx_gain_dbi, double rx_gain_dbi) {
    return tx_dbm - path_loss_db + tx_gain_dbi + rx_gain_dbi;
}

double array_received_power_dbm(const LinkSpec& spec) {
    validate(spec);
    const double p1 = received_power_dbm(
        spec.tx_power_dbm, fspl_db(spec.distance_m, spec.frequency_hz),
        spec.tx_gain_dbi, spec.rx_gain_dbi);
    const double n = static_cast<double>(spec.n_antennas);
    switch (spec.combining) {
        case Combining::coherent:
            return p1 + 20.0 * std::log10(n);
        case Combining::incoherent:
            return p1 + 10.0 * std::log10(n);
        case Combining::single:
            return p1;
    }
    return p1;
}

double per_antenna_power_dbm(double total_power_w, int n_antennas) {
    if (!(total_power_w > 0.0) || n_antennas < 1) {
        throw std::domain_error("per_antenna_power_dbm: invalid power budget");
    }
    return watts_to_dbm(total_power_w / static_cast<double>(n_antennas));
}

RegulatoryVerdict check_regulatory(double tx_total_w, double frequency_hz,
                                   std::span<const Band> bands) {
    if (tx_total_w < 0.0) {
        throw std::domain_error("check_regulatory: negative transmit power");
    }
    if (bands.empty()) {
        throw std::invalid_argument("check_regulatory: empty band table");
    }
    for (const Band& band : bands) {
        if (frequency_hz >= band.f_low_hz && frequency_hz <= band.f_high_hz) {
            RegulatoryVerdict verdict;
            verdict.band_name = band.name;
            verdict.limit_w = band.max_tx_power_w;
            verdict.status = tx_total_w <= band.max_tx_power_w
                                 ? RegulatoryStatus::ok
                                 : RegulatoryStatus::violation;
            return verdict;
        }
    }
    return RegulatoryVerdict{};
}

FeasibilityVerdict feasibility(double received_dbm, double sensitivity_dbm) {
    FeasibilityVerdict verdict;
    verdict.received_power_dbm = received_dbm;
    verdict.sensitivity_dbm = sensitivity_dbm;
    verdict.margin_db = received_dbm - sensitivity_dbm;
    verdict.feasible = received_dbm >= sensitivity_dbm;
    return verdict;
}

std::vector<Band> eu_default_bands() {
    return {
        {"EU 915-921 MHz", 915e6, 921e6, 4.0},
        {"EU 865-868 MHz", 865e6, 868e6, 2.0},
    };
}

Band parse_band(const std::string& text) {
    std::istringstream in(text);
    Band band;
    std::string field;
    if (!std::getline(in, band.name, ':')) {
        throw std::invalid_argument("parse_band: missing name in '" + text + "'");
    }
    try {
        if (!std::getline(in, field, ':')) throw std::invalid_argument("");
        band.f_low_hz = std::stod(field);
        if (!std::getline(in, field, ':')) throw std::invalid_argument("");
        band.f_high_hz = std::stod(field);
        if (!std::getline(in, field, ':')) throw std::invalid_argument("");
        band.max_tx_power_w = std::stod(field);
    } catch (const std::exception&) {
        throw std::invalid_argument(
            "parse_band: expected 'name:f_low_hz:f_high_hz:max_tx_w', got '" +
            text + "'");
    }
    if (!(band.f_low_hz < band.f_high_hz) || !(band.max_tx_power_w > 0.0)) {
        throw std::invalid_argument("parse_band: invalid band limits in '" +
                                    text + "'");
    }
    return band;
}

void validate(const LinkSpec& spec) {
    if (!(spec.distance_m > 0.0)) {
        throw std::domain_error("LinkSpec: distance must be positive");
    }
    if (spec.n_antennas < 1) {
        throw std::domain_error("LinkSpec: need at least one antenna");
    }
    if (spec.combining == Combining::single && spec.n_antennas != 1) {
        throw std::domain_error("LinkSpec: single combining implies one antenna");
    }
}

}  // namespace wptsim
