// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wptsim/harvester.hpp"
#include "wptsim/pmu.hpp"
#include "wptsim/storage.hpp"

namespace wptsim {

/// Integration blew up; carries the offending simulation time.
class NumericError : public std::runtime_error {
  public:
    NumericError(double t_s, const std::string& what)
        : std::runtime_error("t=" + std::to_string(t_s) + " s: " + what),
          t_s_(t_s) {}
    [[nodiscard]] double t_s() const { return t_s_; }

  private:
    double t_s_;
};

/// Piecewise-constant received RF power vs time.
struct Stimulus {
    struct Segment {
        double t_start_s = 0.0;
        double p_dbm = 0.0;
    };
    std::vector<Segment> segments;

    [[nodiscard]] static Stimulus constant(double p_dbm) {
        return Stimulus{{{0.0, p_dbm}}};
    }
    [[nodiscard]] double power_dbm_at(double t_s) const;
    [[nodiscard]] double max_power_dbm() const;
};

void validate(const Stimulus& stimulus);

/// A complete simulation input: stimulus, device stack, numerics.
struct Scenario {
    Stimulus stimulus = Stimulus::constant(0.0);
    double frequency_hz = 868e6;
    HarvesterModel harvester;
    CapacitorSpec capacitor;
    PmuConfig pmu;
    LoadProfile load;
    double v_initial_v = 0.0;
    double duration_s = 3600.0;
    double dt_s = 0.01;

    bool load_enabled = true;  // false: charge-only study, PMU bypassed
    std::optional<double> stop_at_voltage_v;  // end the run once reached
    bool record_series = true;
    int series_stride = 1;
};

void validate(const Scenario& scenario);

struct SeriesPoint {
    double t_s = 0.0;
    double v_cap_v = 0.0;
    PmuPhase phase = PmuPhase::cold_charging;
    double p_harv_w = 0.0;  // DC power into the storage node
    double p_load_w = 0.0;  // power drawn at the boost input
};

struct LossBreakdown {
    double harvester_j = 0.0;  // RF in minus DC out
    double esr_j = 0.0;
    double leakage_j = 0.0;
    double boost_j = 0.0;
};

struct SimResult {
    std::vector<SeriesPoint> series;

    /// Time for the capacitor to first reach the charge target (v_chrdy, or
    /// stop_at_voltage_v in charge-only runs).
    std::optional<double> first_charge_time_s;
    /// Mean time between consecutive update completions.
    std::optional<double> update_interval_s;
    int updates_completed = 0;
    int brownouts = 0;

    double rf_input_energy_j = 0.0;  // integrated over the whole run
    /// Nominal buffer energy gained up to the first charge: C/2 (vt^2 - v0^2).
    double stored_nominal_energy_j = 0.0;
    /// RF energy integrated up to the first-charge instant.
    double rf_energy_to_first_charge_j = 0.0;
    /// stored_nominal / rf-to-first-charge; empty until the target is reached.
    std::optional<double> charge_efficiency;

    LossBreakdown losses;
    double delivered_energy_j = 0.0;  // at the boost output
    double harvested_dc_energy_j = 0.0;
    double cap_energy_delta_j = 0.0;
    double energy_balance_error_rel = 0.0;
    double final_v_cap_v = 0.0;
    bool rated_voltage_exceeded = false;
    std::vector<std::string> events;
};

/// Deterministic fixed-step simulation of stimulus -> harvester -> capacitor
/// (ESR, leakage) -> PMU/load. Identical scenarios produce bit-identical
/// results. Throws NumericError on divergence and OverloadError when the
/// stimulus exceeds the harvester's absolute maximum.
[[nodiscard]] SimResult run(const Scenario& scenario);

/// Time to charge to v_target with the load disabled; std::nullopt when the
/// target is not reached within scenario.duration_s.
[[nodiscard]] std::optional<double> charge_time(const Scenario& scenario,
                                                double v_target_v);

/// Mean time between update completions; std::nullopt below two updates.
[[nodiscard]] std::optional<double> update_interval(const Scenario& scenario);

/// Nominal stored energy over integrated RF input energy for the charge.
/// Throws std::domain_error when the run has no RF input or never charged.
[[nodiscard]] double charge_efficiency(const SimResult& result);

/// Reasons a scenario can never charge, e.g. stimulus below sensitivity.
[[nodiscard]] std::optional<std::string> infeasibility_reason(
    const Scenario& scenario);

/// CSV export with header t_s,v_cap_v,state,p_harv_w,p_load_w.
void write_series_csv(const SimResult& result, std::ostream& out);

/// JSON text mirroring the scalar result fields (stable key order).
[[nodiscard]] std::string summary_json(const SimResult& result);

}  // namespace wptsim
