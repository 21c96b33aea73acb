// SPDX-License-Identifier: Apache-2.0

#include "wptsim/storage.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wptsim/csv.hpp"

namespace wptsim {

void validate(const CapacitorSpec& cap) {
    if (cap.part_id.empty()) {
        throw std::domain_error("CapacitorSpec: empty part id");
    }
    if (!(cap.capacitance_f > 0.0)) {
        throw std::domain_error(cap.part_id + ": capacitance must be positive");
    }
    if (cap.esr_ohm < 0.0) {
        throw std::domain_error(cap.part_id + ": negative ESR");
    }
    if (!(cap.rated_voltage_v > 0.0)) {
        throw std::domain_error(cap.part_id + ": rated voltage must be positive");
    }
    if (!(cap.volume_cm3 > 0.0)) {
        throw std::domain_error(cap.part_id + ": volume must be positive");
    }
    if (cap.cost_eur < 0.0 || cap.leakage_a < 0.0) {
        throw std::domain_error(cap.part_id + ": negative cost or leakage");
    }
}

void validate(const VoltageWindow& window) {
    if (!(window.v_min_v >= 0.0) || !(window.v_min_v < window.v_max_v)) {
        throw std::domain_error("VoltageWindow: need 0 <= v_min < v_max");
    }
}

double stored_energy(double capacitance_f, double voltage_v) {
    if (!(capacitance_f > 0.0)) {
        throw std::domain_error("stored_energy: capacitance must be positive");
    }
    if (voltage_v < 0.0) {
        throw std::domain_error("stored_energy: negative voltage");
    }
    return 0.5 * capacitance_f * voltage_v * voltage_v;
}

double usable_energy_fraction(const VoltageWindow& window) {
    validate(window);
    const double vmax2 = window.v_max_v * window.v_max_v;
    const double vmin2 = window.v_min_v * window.v_min_v;
    return (vmax2 - vmin2) / vmax2;
}

double size_buffer(double e_update_j, const VoltageWindow& window) {
    validate(window);
    if (e_update_j < 0.0) {
        throw std::domain_error("size_buffer: negative update energy");
    }
    if (e_update_j == 0.0) return 0.0;
    const double span =
        window.v_max_v * window.v_max_v - window.v_min_v * window.v_min_v;
    return 2.0 * e_update_j / span;
}

double round_up_e12(double value) {
    static constexpr std::array<double, 12> mantissas = {
        1.0, 1.2, 1.5, 1.8, 2.2, 2.7, 3.3, 3.9, 4.7, 5.6, 6.8, 8.2};
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error("round_up_e12: value must be positive");
    }
    int exponent = static_cast<int>(std::floor(std::log10(value)));
    // log10 rounding can land one decade off near exact powers of ten
    if (value / std::pow(10.0, exponent) >= 10.0) ++exponent;
    if (value / std::pow(10.0, exponent) < 1.0) --exponent;
    const double decade = std::pow(10.0, exponent);
    const double mantissa = value / decade;
    constexpr double rel_tol = 1e-9;
    for (const double m : mantissas) {
        if (mantissa <= m * (1.0 + rel_tol)) return m * decade;
    }
    return 10.0 * decade;
}

SizingResult size_with_margin(double e_update_j, const VoltageWindow& window,
                              double margin) {
    if (!(margin >= 1.0)) {
        throw std::domain_error("size_with_margin: margin must be >= 1");
    }
    SizingResult result;
    result.minimal_capacitance_f = size_buffer(e_update_j, window);
    result.with_margin_f = result.minimal_capacitance_f * margin;
    result.e12_choice_f =
        result.with_margin_f > 0.0 ? round_up_e12(result.with_margin_f) : 0.0;
    result.usable_fraction = usable_energy_fraction(window);
    return result;
}

double max_deliverable_power(double v_oc_v, double esr_ohm) {
    if (v_oc_v < 0.0 || esr_ohm < 0.0) {
        throw std::domain_error("max_deliverable_power: negative input");
    }
    if (esr_ohm == 0.0) return std::numeric_limits<double>::infinity();
    return v_oc_v * v_oc_v / (4.0 * esr_ohm);
}

EsrVerdict esr_feasible(const CapacitorSpec& cap,
                        double required_input_power_w,
                        double v_min_operating_v) {
    if (required_input_power_w < 0.0) {
        throw std::domain_error("esr_feasible: negative power demand");
    }
    return max_deliverable_power(v_min_operating_v, cap.esr_ohm) >=
                   required_input_power_w
               ? EsrVerdict::usable
               : EsrVerdict::unusable_esr;
}

std::string to_string(CapTechnology tech) {
    switch (tech) {
        case CapTechnology::edlc: return "EDLC";
        case CapTechnology::aec: return "AEC";
        case CapTechnology::other: return "Other";
    }
    return "Other";
}

CapTechnology technology_from_string(const std::string& text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "edlc") return CapTechnology::edlc;
    if (lower == "aec") return CapTechnology::aec;
    if (lower == "other") return CapTechnology::other;
    throw std::invalid_argument("unknown capacitor technology '" + text + "'");
}

std::vector<CapacitorSpec> load_catalog(const std::string& path) {
    const auto file = csv::read_file(
        path,
        "part_id,technology,capacitance_F,esr_ohm,rated_voltage_V,volume_cm3,"
        "cost_eur,leakage_A");
    std::vector<CapacitorSpec> catalog;
    catalog.reserve(file.rows.size());
    for (const auto& row : file.rows) {
        if (row.fields.size() != 8) {
            throw ParseError(path, row.line, "expected 8 columns");
        }
        CapacitorSpec cap;
        cap.part_id = row.fields[0];
        try {
            cap.technology = technology_from_string(row.fields[1]);
        } catch (const std::invalid_argument& err) {
            throw ParseError(path, row.line, err.what());
        }
        cap.capacitance_f = csv::to_double(path, row, 2);
        cap.esr_ohm = csv::to_double(path, row, 3);
        cap.rated_voltage_v = csv::to_double(path, row, 4);
        cap.volume_cm3 = csv::to_double(path, row, 5);
        cap.cost_eur = csv::to_double(path, row, 6);
        cap.leakage_a = csv::to_double(path, row, 7);
        try {
            validate(cap);
        } catch (const std::domain_error& err) {
            throw ParseError(path, row.line, err.what());
        }
        for (const auto& existing : catalog) {
            if (existing.part_id == cap.part_id) {
                throw ParseError(path, row.line,
                                 "duplicate part id '" + cap.part_id + "'");
            }
        }
        catalog.push_back(std::move(cap));
    }
    if (catalog.empty()) {
        throw ParseError(path, 0, "catalog has no parts");
    }
    return catalog;
}

}  // namespace wptsim
