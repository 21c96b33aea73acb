// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "wptsim/storage.hpp"

namespace wptsim {

/// Harvester-PMU thresholds and boost converter parameters.
struct PmuConfig {
    double v_ovch_v = 4.5;       // overvoltage protection, gates charging
    double v_chrdy_v = 3.1;      // charge-ready, wakes the MCU
    double v_ovdis_v = 2.8;      // overdischarge threshold of the LV LDO
    double v_boost_min_v = 0.9;  // minimum boost converter input
    double boost_efficiency = 0.90;
    double output_voltage_v = 3.3;
    double update_holdoff_s = 0.0;  // wait between charge-ready and update
    bool oring_enabled = true;      // MCU may hold the boost on below v_ovdis
};

/// Display update drawn as constant power over its duration.
struct LoadProfile {
    double update_energy_j = 0.075;
    double update_duration_s = 5.2;
    double quiescent_power_w = 0.0;
};

enum class PmuPhase { cold_charging, updating, post_update, brownout };

struct PmuOutputs {
    PmuPhase phase = PmuPhase::cold_charging;
    bool boost_enabled = false;
    bool load_active = false;
    bool oring_override = false;
    double load_input_power_w = 0.0;  // demanded at the boost input this step
};

void validate(const PmuConfig& config);
void validate(const LoadProfile& load);

/// Power drawn at the boost input to supply p_out at the output rail.
[[nodiscard]] double boost_input_power(const PmuConfig& config, double p_out_w);

/// Discharge window the configuration can exploit. The ORing override keeps
/// the boost enabled down to its own minimum input; without it the LV LDO
/// cuts off at v_ovdis.
[[nodiscard]] VoltageWindow usable_window(const PmuConfig& config);
[[nodiscard]] VoltageWindow usable_window(const PmuConfig& config, bool oring);

[[nodiscard]] std::string to_string(PmuPhase phase);

/// Charge / update / brownout state machine. Single owner; step() advances
/// one fixed time slice given the supply-node voltage it senses.
class Pmu {
  public:
    Pmu(const PmuConfig& config, const LoadProfile& load);

    /// Advances dt seconds. Returns the phase after the step and the load
    /// power demanded at the boost input during it.
    PmuOutputs step(double v_cap_v, double dt_s);

    void reset();

    [[nodiscard]] PmuPhase phase() const { return phase_; }
    [[nodiscard]] double update_elapsed_s() const { return elapsed_s_; }
    [[nodiscard]] const PmuConfig& config() const { return config_; }
    [[nodiscard]] const LoadProfile& load() const { return load_; }

  private:
    PmuConfig config_;
    LoadProfile load_;
    PmuPhase phase_ = PmuPhase::cold_charging;
    double elapsed_s_ = 0.0;  // time spent in the current update
    double ready_s_ = 0.0;    // time spent above v_chrdy while waiting
};

/// Named PMU configurations (JSON object keyed by preset name).
[[nodiscard]] std::map<std::string, PmuConfig> load_pmu_presets(
    const std::string& path);

}  // namespace wptsim
