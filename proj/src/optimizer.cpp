// SPDX-License-Identifier: Apache-2.0

#include "wptsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wptsim {

namespace {

constexpr double ranking_sim_dt_s = 0.01;
constexpr double ranking_sim_max_duration_s = 48.0 * 3600.0;

Scenario charge_scenario(const CapacitorSpec& cap, const DeviceStack& stack,
                         double p_dbm, double f_hz) {
    Scenario sc;
    sc.stimulus = Stimulus::constant(p_dbm);
    sc.frequency_hz = f_hz;
    sc.harvester = stack.harvester;
    sc.capacitor = cap;
    sc.pmu = stack.pmu;
    sc.load = stack.load;
    sc.v_initial_v = 0.0;
    sc.duration_s = ranking_sim_max_duration_s;
    sc.dt_s = ranking_sim_dt_s;
    sc.record_series = false;
    return sc;
}

std::optional<double> predict_charge_time(const CapacitorSpec& cap,
                                          const Requirements& req,
                                          const DeviceStack& stack) {
    if (req.ref_power_dbm < stack.harvester.sensitivity_dbm) {
        return std::nullopt;
    }
    const Scenario sc = charge_scenario(cap, stack, req.ref_power_dbm,
                                        req.ref_frequency_hz);
    return charge_time(sc, req.window.v_max_v);
}

/// Voltage the capacitor is expected to droop to while sourcing one update
/// through the boost converter.
double predicted_update_floor(const CapacitorSpec& cap,
                              const Requirements& req,
                              const DeviceStack& stack) {
    const double update_power_out =
        stack.load.update_energy_j / stack.load.update_duration_s +
        stack.load.quiescent_power_w;
    const double cap_energy_drawn =
        boost_input_power(stack.pmu, update_power_out) *
        stack.load.update_duration_s;
    const double v_max2 = req.window.v_max_v * req.window.v_max_v;
    const double v_end2 = v_max2 - 2.0 * cap_energy_drawn / cap.capacitance_f;
    const double v_end = v_end2 > 0.0 ? std::sqrt(v_end2) : 0.0;
    return std::max(v_end, req.window.v_min_v);
}

std::string format_mj(double joules) {
    std::ostringstream out;
    out << joules * 1e3 << " mJ";
    return out.str();
}

}  // namespace

std::vector<RankedOption> select_capacitor(
    const std::vector<CapacitorSpec>& catalog, const Requirements& req,
    const DeviceStack& stack) {
    if (catalog.empty()) {
        throw std::invalid_argument("select_capacitor: empty catalog");
    }
    validate(req.window);
    if (!(req.margin >= 1.0)) {
        throw std::domain_error("select_capacitor: margin must be >= 1");
    }

    const double boost_demand_w = boost_input_power(
        stack.pmu, stack.load.update_energy_j / stack.load.update_duration_s +
                       stack.load.quiescent_power_w);

    std::vector<RankedOption> options;
    options.reserve(catalog.size());
    for (const CapacitorSpec& cap : catalog) {
        validate(cap);
        RankedOption option;
        option.cap = cap;

        const double usable_j =
            stored_energy(cap.capacitance_f, req.window.v_max_v) -
            stored_energy(cap.capacitance_f, req.window.v_min_v);
        const double required_j = req.e_update_j * req.margin;
        if (usable_j < required_j) {
            option.reasons.push_back("usable energy " + format_mj(usable_j) +
                                     " below required " +
                                     format_mj(required_j));
        }

        const double v_floor = predicted_update_floor(cap, req, stack);
        if (esr_feasible(cap, boost_demand_w, v_floor) ==
            EsrVerdict::unusable_esr) {
            std::ostringstream msg;
            msg << "ESR: cannot deliver " << boost_demand_w * 1e3 << " mW at "
                << v_floor << " V through " << cap.esr_ohm << " ohm";
            option.reasons.push_back(msg.str());
        }

        if (cap.rated_voltage_v < stack.pmu.v_ovch_v) {
            std::ostringstream msg;
            msg << "rated voltage " << cap.rated_voltage_v
                << " V below overvoltage threshold " << stack.pmu.v_ovch_v
                << " V";
            option.reasons.push_back(msg.str());
        }

        if (req.max_volume_cm3 && cap.volume_cm3 > *req.max_volume_cm3) {
            option.reasons.push_back("exceeds max volume");
        }
        if (req.max_cost_eur && cap.cost_eur > *req.max_cost_eur) {
            option.reasons.push_back("exceeds max cost");
        }

        option.predicted_first_charge_time_s =
            predict_charge_time(cap, req, stack);
        if (req.max_first_charge_time_s &&
            (!option.predicted_first_charge_time_s ||
             *option.predicted_first_charge_time_s >
                 *req.max_first_charge_time_s)) {
            option.reasons.push_back("first charge slower than limit");
        }

        option.feasible = option.reasons.empty();
        switch (req.objective) {
            case Objective::min_charge_time:
                option.score = option.predicted_first_charge_time_s.value_or(
                    std::numeric_limits<double>::infinity());
                break;
            case Objective::min_cost:
                option.score = cap.cost_eur;
                break;
            case Objective::min_volume:
                option.score = cap.volume_cm3;
                break;
        }
        options.push_back(std::move(option));
    }

    std::sort(options.begin(), options.end(),
              [](const RankedOption& a, const RankedOption& b) {
                  if (a.feasible != b.feasible) return a.feasible;
                  if (a.feasible) {
                      if (a.score != b.score) return a.score < b.score;
                      if (a.cap.cost_eur != b.cap.cost_eur) {
                          return a.cap.cost_eur < b.cap.cost_eur;
                      }
                      if (a.cap.volume_cm3 != b.cap.volume_cm3) {
                          return a.cap.volume_cm3 < b.cap.volume_cm3;
                      }
                  }
                  return a.cap.part_id < b.cap.part_id;
              });
    return options;
}

std::vector<SweepPoint> pareto_power_sweep(const Scenario& scenario_template,
                                           std::vector<double> p_grid_dbm) {
    if (p_grid_dbm.empty()) {
        throw std::invalid_argument("pareto_power_sweep: empty power grid");
    }
    std::sort(p_grid_dbm.begin(), p_grid_dbm.end());
    p_grid_dbm.erase(std::unique(p_grid_dbm.begin(), p_grid_dbm.end()),
                     p_grid_dbm.end());
    for (const double p : p_grid_dbm) {
        if (p < scenario_template.harvester.sensitivity_dbm ||
            p > scenario_template.harvester.max_input_dbm) {
            std::ostringstream msg;
            msg << "pareto_power_sweep: " << p
                << " dBm outside harvester range ["
                << scenario_template.harvester.sensitivity_dbm << ", "
                << scenario_template.harvester.max_input_dbm << "] dBm";
            throw std::domain_error(msg.str());
        }
    }

    const double v_target = scenario_template.pmu.v_chrdy_v;
    auto evaluate = [&](double p_dbm) -> std::optional<SweepPoint> {
        Scenario sc = scenario_template;
        sc.stimulus = Stimulus::constant(p_dbm);
        sc.load_enabled = false;
        sc.stop_at_voltage_v = v_target;
        sc.record_series = false;
        const SimResult result = run(sc);
        if (!result.first_charge_time_s) return std::nullopt;
        return SweepPoint{p_dbm, *result.first_charge_time_s,
                          charge_efficiency(result)};
    };

    std::vector<std::future<std::optional<SweepPoint>>> futures;
    futures.reserve(p_grid_dbm.size());
    for (const double p : p_grid_dbm) {
        futures.push_back(std::async(std::launch::async, evaluate, p));
    }
    std::vector<SweepPoint> points;  // merged in grid order
    for (auto& f : futures) {
        if (auto point = f.get()) points.push_back(*point);
    }

    std::vector<SweepPoint> front;
    for (const SweepPoint& a : points) {
        bool dominated = false;
        for (const SweepPoint& b : points) {
            const bool weakly_better =
                b.charge_time_s <= a.charge_time_s && b.efficiency >= a.efficiency;
            const bool strictly_better = b.charge_time_s < a.charge_time_s ||
                                         b.efficiency > a.efficiency;
            if (weakly_better && strictly_better) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(a);
    }
    return front;
}

BufferRecommendation recommend_buffer(const Requirements& req,
                                      const DeviceStack& stack,
                                      const std::vector<CapacitorSpec>& catalog) {
    BufferRecommendation rec;
    rec.sizing = size_with_margin(req.e_update_j, req.window, req.margin);

    std::vector<CapacitorSpec> large_enough;
    for (const CapacitorSpec& cap : catalog) {
        // tolerant compare: the E12 value and a catalog entry may differ in
        // the last bit after decimal parsing
        if (cap.capacitance_f >= rec.sizing.e12_choice_f * (1.0 - 1e-9)) {
            large_enough.push_back(cap);
        }
    }
    if (large_enough.empty()) {
        // Nothing big enough: rank the whole catalog so the caller can see
        // the nearest misses.
        rec.ranked = select_capacitor(catalog, req, stack);
        for (auto& option : rec.ranked) {
            option.feasible = false;
            option.reasons.insert(option.reasons.begin(),
                                  "capacitance below the E12 sizing choice");
        }
        return rec;
    }
    rec.ranked = select_capacitor(large_enough, req, stack);
    if (!rec.ranked.empty() && rec.ranked.front().feasible) {
        rec.choice = rec.ranked.front();
    }
    return rec;
}

std::string to_string(Objective objective) {
    switch (objective) {
        case Objective::min_charge_time: return "min_charge_time";
        case Objective::min_cost: return "min_cost";
        case Objective::min_volume: return "min_volume";
    }
    return "min_charge_time";
}

Objective objective_from_string(const std::string& text) {
    if (text == "min_charge_time") return Objective::min_charge_time;
    if (text == "min_cost") return Objective::min_cost;
    if (text == "min_volume") return Objective::min_volume;
    throw std::invalid_argument("unknown objective '" + text + "'");
}

}  // namespace wptsim
