// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wptsim/harvester.hpp"
#include "wptsim/pmu.hpp"
#include "wptsim/simcore.hpp"
#include "wptsim/storage.hpp"

namespace wptsim {

enum class Objective { min_charge_time, min_cost, min_volume };

/// Design constraints and goal for storage selection.
struct Requirements {
    double e_update_j = 0.075;
    VoltageWindow window{3.1, 0.9};
    std::optional<double> max_volume_cm3;
    std::optional<double> max_cost_eur;
    std::optional<double> max_first_charge_time_s;
    double margin = 1.2;  // energy headroom over e_update
    Objective objective = Objective::min_charge_time;
    double ref_power_dbm = 0.0;  // stimulus for charge-time predictions
    double ref_frequency_hz = 868e6;
};

/// Everything around the capacitor under evaluation.
struct DeviceStack {
    HarvesterModel harvester;
    PmuConfig pmu;
    LoadProfile load;
};

struct RankedOption {
    CapacitorSpec cap;
    bool feasible = false;
    std::vector<std::string> reasons;  // why infeasible; empty when feasible
    std::optional<double> predicted_first_charge_time_s;
    double score = 0.0;  // objective value, lower is better
};

struct SweepPoint {
    double p_in_dbm = 0.0;
    double charge_time_s = 0.0;
    double efficiency = 0.0;
};

struct BufferRecommendation {
    SizingResult sizing;
    std::optional<RankedOption> choice;  // empty: no feasible part
    std::vector<RankedOption> ranked;    // includes nearest misses
};

/// Checks every catalog part against energy, ESR, rated-voltage and user
/// constraints; feasible options first, sorted by the objective (ties break
/// on cost, volume, part id). Throws std::invalid_argument on an empty
/// catalog.
[[nodiscard]] std::vector<RankedOption> select_capacitor(
    const std::vector<CapacitorSpec>& catalog, const Requirements& req,
    const DeviceStack& stack);

/// Charge time vs charge efficiency over the power grid; returns the points
/// not dominated in (lower time, higher efficiency), in ascending power.
/// Grid points are evaluated concurrently; duplicates are collapsed.
[[nodiscard]] std::vector<SweepPoint> pareto_power_sweep(
    const Scenario& scenario_template, std::vector<double> p_grid_dbm);

/// Sizing math composed with catalog selection, restricted to parts at least
/// as large as the E12 choice.
[[nodiscard]] BufferRecommendation recommend_buffer(
    const Requirements& req, const DeviceStack& stack,
    const std::vector<CapacitorSpec>& catalog);

[[nodiscard]] std::string to_string(Objective objective);
[[nodiscard]] Objective objective_from_string(const std::string& text);

}  // namespace wptsim
