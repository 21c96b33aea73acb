// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wptsim {

/// Input power above the harvester's absolute maximum rating.
class OverloadError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Dense efficiency grid over (input power, frequency, capacitor voltage).
struct CalibrationTable {
    std::vector<double> p_axis_dbm;
    std::vector<double> f_axis_hz;
    std::vector<double> v_axis_v;
    std::vector<double> eta;  // [p][f][v], row-major
    std::string provenance;

    [[nodiscard]] size_t index(size_t ip, size_t jf, size_t kv) const {
        return (ip * f_axis_hz.size() + jf) * v_axis_v.size() + kv;
    }
    [[nodiscard]] double at(size_t ip, size_t jf, size_t kv) const {
        return eta[index(ip, jf, kv)];
    }
};

/// RF-to-DC converter with PMU, characterised by a measured efficiency
/// surface plus sensitivity and overload limits. Below cold_start_voltage the
/// charger behaves as a constant current source instead of a power converter.
struct HarvesterModel {
    std::string name = "aem40940";
    double sensitivity_dbm = -18.0;
    double max_input_dbm = 15.0;
    double tuned_frequency_hz = 868e6;
    double cold_start_voltage_v = 0.05;
    double cold_start_current_a = 0.5e-3;
    CalibrationTable grid;
};

void validate(const HarvesterModel& model);

/// Conversion efficiency at the given operating point: 0 below sensitivity,
/// trilinear interpolation on the grid (clamped at the hull) otherwise.
/// Throws OverloadError above max_input_dbm.
[[nodiscard]] double efficiency(const HarvesterModel& model, double p_in_dbm,
                                double frequency_hz, double v_cap_v);

/// DC output power in watts for the given RF input.
[[nodiscard]] double dc_power(const HarvesterModel& model, double p_in_dbm,
                              double frequency_hz, double v_cap_v);

struct CalibrationLoadResult {
    HarvesterModel model;
    std::vector<std::string> warnings;  // measured-trend violations
};

/// Calibration file: CSV with header p_in_dbm,freq_hz,v_cap_v,efficiency
/// enumerating a complete grid; '#' first-line comment carries provenance.
[[nodiscard]] CalibrationLoadResult load_calibration(const std::string& path);

/// Flat-efficiency model with no sensitivity, overload, or cold-start
/// limits. Used for what-if studies and closed-form comparisons.
[[nodiscard]] HarvesterModel constant_harvester(double eta);

}  // namespace wptsim
