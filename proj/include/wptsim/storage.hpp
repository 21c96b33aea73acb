// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace wptsim {

enum class CapTechnology { edlc, aec, other };

struct CapacitorSpec {
    std::string part_id;
    CapTechnology technology = CapTechnology::other;
    double capacitance_f = 0.0;
    double esr_ohm = 0.0;
    double rated_voltage_v = 0.0;
    double volume_cm3 = 0.0;
    double cost_eur = 0.0;
    double leakage_a = 0.0;
};

/// Discharge window [v_min, v_max] the application can exploit.
struct VoltageWindow {
    double v_max_v = 0.0;  // charge-ready / cut-off voltage
    double v_min_v = 0.0;  // lowest usable voltage
};

struct SizingResult {
    double minimal_capacitance_f = 0.0;
    double with_margin_f = 0.0;
    double e12_choice_f = 0.0;
    double usable_fraction = 0.0;
};

enum class EsrVerdict { usable, unusable_esr };

void validate(const CapacitorSpec& cap);
void validate(const VoltageWindow& window);

/// 1/2 C V^2
[[nodiscard]] double stored_energy(double capacitance_f, double voltage_v);

/// Fraction of the full-charge energy available between v_max and v_min.
[[nodiscard]] double usable_energy_fraction(const VoltageWindow& window);

/// Minimum capacitance that holds e_update within the window:
/// C = 2 E / (v_max^2 - v_min^2). Zero energy returns zero.
[[nodiscard]] double size_buffer(double e_update_j, const VoltageWindow& window);

/// Smallest E12 preferred value >= value.
[[nodiscard]] double round_up_e12(double value);

[[nodiscard]] SizingResult size_with_margin(double e_update_j,
                                            const VoltageWindow& window,
                                            double margin = 1.2);

/// Maximum power a source of open-circuit voltage v_oc can push through its
/// series resistance; +inf for esr == 0.
[[nodiscard]] double max_deliverable_power(double v_oc_v, double esr_ohm);

/// Usable iff the capacitor can still deliver required_input_power at the
/// lowest operating voltage, i.e. the terminal-voltage fixed point
/// v_t^2 - v*v_t + esr*P = 0 has a real solution at v = v_min_operating.
[[nodiscard]] EsrVerdict esr_feasible(const CapacitorSpec& cap,
                                      double required_input_power_w,
                                      double v_min_operating_v);

[[nodiscard]] std::string to_string(CapTechnology tech);
[[nodiscard]] CapTechnology technology_from_string(const std::string& text);

/// Catalog file: CSV with header
/// part_id,technology,capacitance_F,esr_ohm,rated_voltage_V,volume_cm3,cost_eur,leakage_A
[[nodiscard]] std::vector<CapacitorSpec> load_catalog(const std::string& path);

}  // namespace wptsim
