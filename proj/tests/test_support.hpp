// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "wptsim/harvester.hpp"
#include "wptsim/optimizer.hpp"
#include "wptsim/simcore.hpp"
#include "wptsim/storage.hpp"
#include "wptsim/units.hpp"

namespace wptsim::test {

inline std::string data_path(const std::string& file) {
    return std::string(WPTSIM_DATA_DIR) + "/" + file;
}

inline const HarvesterModel& shipped_harvester() {
    static const HarvesterModel model =
        load_calibration(data_path("aem40940_calibration.csv")).model;
    return model;
}

inline const std::vector<CapacitorSpec>& shipped_catalog() {
    static const std::vector<CapacitorSpec> catalog =
        load_catalog(data_path("capacitors.csv"));
    return catalog;
}

inline CapacitorSpec shipped_part(const std::string& part_id) {
    for (const auto& cap : shipped_catalog()) {
        if (cap.part_id == part_id) return cap;
    }
    throw std::runtime_error("no such part in shipped catalog: " + part_id);
}

/// Loss-free capacitor for closed-form comparisons.
inline CapacitorSpec ideal_cap(double capacitance_f,
                               double rated_voltage_v = 10.0) {
    CapacitorSpec cap;
    cap.part_id = "ideal";
    cap.technology = CapTechnology::other;
    cap.capacitance_f = capacitance_f;
    cap.esr_ohm = 0.0;
    cap.rated_voltage_v = rated_voltage_v;
    cap.volume_cm3 = 1.0;
    cap.cost_eur = 0.0;
    cap.leakage_a = 0.0;
    return cap;
}

/// Paper device stack: shipped harvester + 22 mF AEC + default PMU and load.
inline Scenario paper_scenario(double p_dbm, double frequency_hz = 868e6) {
    Scenario sc;
    sc.stimulus = Stimulus::constant(p_dbm);
    sc.frequency_hz = frequency_hz;
    sc.harvester = shipped_harvester();
    sc.capacitor = shipped_part("ECA-0JM223");
    sc.v_initial_v = 0.0;
    sc.duration_s = 4.0 * 3600.0;
    sc.dt_s = 0.01;
    sc.record_series = false;
    return sc;
}

inline Scenario constant_eta_scenario(double eta, double p_dbm,
                                      double capacitance_f, double v0 = 0.0) {
    Scenario sc;
    sc.stimulus = Stimulus::constant(p_dbm);
    sc.harvester = constant_harvester(eta);
    sc.capacitor = ideal_cap(capacitance_f);
    sc.v_initial_v = v0;
    sc.duration_s = 48.0 * 3600.0;
    sc.dt_s = 0.01;
    sc.record_series = false;
    return sc;
}

/// Independent charge-time oracle: t = C (vt^2 - v0^2) / (2 eta P).
inline double closed_form_charge_time(double capacitance_f, double v0_v,
                                      double vt_v, double eta, double p_w) {
    return capacitance_f * (vt_v * vt_v - v0_v * v0_v) / (2.0 * eta * p_w);
}

inline DeviceStack paper_stack() {
    DeviceStack stack;
    stack.harvester = shipped_harvester();
    stack.pmu = PmuConfig{};
    stack.load = LoadProfile{};
    return stack;
}

}  // namespace wptsim::test
