// SPDX-License-Identifier: Apache-2.0

#include "wptsim/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wptsim/units.hpp"

namespace wptsim {

double Stimulus::power_dbm_at(double t_s) const {
    double p = segments.front().p_dbm;
    for (const Segment& seg : segments) {
        if (seg.t_start_s > t_s) break;
        p = seg.p_dbm;
    }
    return p;
}

double Stimulus::max_power_dbm() const {
    double p = segments.front().p_dbm;
    for (const Segment& seg : segments) p = std::max(p, seg.p_dbm);
    return p;
}

void validate(const Stimulus& stimulus) {
    if (stimulus.segments.empty()) {
        throw std::domain_error("Stimulus: no segments");
    }
    if (stimulus.segments.front().t_start_s != 0.0) {
        throw std::domain_error("Stimulus: first segment must start at t=0");
    }
    for (size_t i = 1; i < stimulus.segments.size(); ++i) {
        if (!(stimulus.segments[i].t_start_s >
              stimulus.segments[i - 1].t_start_s)) {
            throw std::domain_error("Stimulus: segments must be ordered in time");
        }
    }
    for (const auto& seg : stimulus.segments) {
        if (!std::isfinite(seg.p_dbm)) {
            throw std::domain_error("Stimulus: non-finite power");
        }
    }
}

void validate(const Scenario& scenario) {
    validate(scenario.stimulus);
    validate(scenario.harvester);
    validate(scenario.capacitor);
    validate(scenario.pmu);
    validate(scenario.load);
    if (!(scenario.dt_s > 0.0)) {
        throw std::domain_error("Scenario: dt must be positive");
    }
    if (!(scenario.duration_s >= scenario.dt_s)) {
        throw std::domain_error("Scenario: duration shorter than one step");
    }
    if (scenario.v_initial_v < 0.0 ||
        scenario.v_initial_v > scenario.capacitor.rated_voltage_v) {
        throw std::domain_error(
            "Scenario: initial voltage outside [0, rated voltage]");
    }
    if (scenario.series_stride < 1) {
        throw std::domain_error("Scenario: series stride must be >= 1");
    }
    if (scenario.stop_at_voltage_v &&
        !(*scenario.stop_at_voltage_v > scenario.v_initial_v)) {
        throw std::domain_error("Scenario: stop voltage must exceed v_initial");
    }
}

namespace {

struct TickFlows {
    double plate_power_w = 0.0;  // into the plates, esr already deducted
    double esr_loss_w = 0.0;
    double served_demand_w = 0.0;  // boost input power actually supplied
    double v_terminal_v = 0.0;
    bool collapsed = false;  // demand could not be pulled through the ESR
};

/// Operating point of the storage node for one tick: harvester injects p_dc,
/// the boost input pulls demand, the difference flows through the ESR.
TickFlows solve_flows(double v, double esr, double p_dc, double demand) {
    TickFlows flows;
    flows.v_terminal_v = v;
    const double p_net = p_dc - demand;
    if (p_net >= 0.0) {
        double current = 0.0;
        if (esr > 0.0 && p_net > 0.0) {
            current = (-v + std::sqrt(v * v + 4.0 * esr * p_net)) / (2.0 * esr);
            flows.esr_loss_w = current * current * esr;
        }
        flows.plate_power_w = p_net - flows.esr_loss_w;
        flows.served_demand_w = demand;
        flows.v_terminal_v = v + current * esr;
        return flows;
    }
    const double p_draw = -p_net;
    const double disc = v * v - 4.0 * esr * p_draw;
    if (esr > 0.0 && disc < 0.0) {
        // Constant-power load beyond the maximum-power point: the converter
        // input rail collapses and the load receives nothing this tick.
        flows.collapsed = true;
        flows.v_terminal_v = 0.0;
        double current = 0.0;
        if (p_dc > 0.0) {
            current = (-v + std::sqrt(v * v + 4.0 * esr * p_dc)) / (2.0 * esr);
            flows.esr_loss_w = current * current * esr;
        }
        flows.plate_power_w = p_dc - flows.esr_loss_w;
        return flows;
    }
    const double v_t = esr > 0.0 ? 0.5 * (v + std::sqrt(disc)) : v;
    const double current = v_t > 0.0 ? p_draw / v_t : 0.0;
    flows.esr_loss_w = current * current * esr;
    flows.plate_power_w = -(p_draw + flows.esr_loss_w);
    flows.served_demand_w = demand;
    flows.v_terminal_v = v_t;
    return flows;
}

}  // namespace

SimResult run(const Scenario& scenario) {
    validate(scenario);

    const auto& model = scenario.harvester;
    const double cap_f = scenario.capacitor.capacitance_f;
    const double esr = scenario.capacitor.esr_ohm;
    const double i_leak = scenario.capacitor.leakage_a;
    const double dt = scenario.dt_s;
    const double charge_target_v = scenario.stop_at_voltage_v
                                       ? *scenario.stop_at_voltage_v
                                       : scenario.pmu.v_chrdy_v;
    const double charge_target_j =
        0.5 * cap_f * charge_target_v * charge_target_v;

    SimResult result;
    double v = scenario.v_initial_v;
    double energy = 0.5 * cap_f * v * v;
    const double energy_initial = energy;
    double v_sense = v;

    std::optional<Pmu> pmu;
    if (scenario.load_enabled) pmu.emplace(scenario.pmu, scenario.load);
    PmuPhase prev_phase = PmuPhase::cold_charging;
    std::vector<double> completions;

    const long long steps =
        static_cast<long long>(std::ceil(scenario.duration_s / dt - 1e-9));
    if (scenario.record_series) {
        result.series.reserve(
            static_cast<size_t>(steps / scenario.series_stride) + 2);
        result.series.push_back({0.0, v, prev_phase, 0.0, 0.0});
    }

    bool stopped = false;
    double t_end = 0.0;
    for (long long k = 0; k < steps && !stopped; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double p_dbm = scenario.stimulus.power_dbm_at(t);
        const double p_rf = dbm_to_watts(p_dbm);

        if (p_dbm > model.max_input_dbm) {
            std::ostringstream msg;
            msg << model.name << ": stimulus " << p_dbm
                << " dBm above absolute maximum at t=" << t << " s";
            throw OverloadError(msg.str());
        }

        PmuOutputs outs;
        if (pmu) {
            outs = pmu->step(v_sense, dt);
            if (outs.phase != prev_phase) {
                if (outs.phase == PmuPhase::post_update) {
                    ++result.updates_completed;
                    completions.push_back(t);
                } else if (outs.phase == PmuPhase::brownout) {
                    ++result.brownouts;
                }
            }
            prev_phase = outs.phase;
        }
        const double demand = outs.load_input_power_w;

        const bool charge_gated = v >= scenario.pmu.v_ovch_v;
        const bool below_sensitivity = p_dbm < model.sensitivity_dbm;
        const bool cold =
            !charge_gated && !below_sensitivity && v < model.cold_start_voltage_v;

        double frac = 1.0;
        double harvested_tick = 0.0;
        double leak_tick = 0.0;
        double esr_tick = 0.0;
        double served_tick = 0.0;
        double p_harv_report = 0.0;
        double p_load_report = 0.0;
        double energy_new = energy;
        double v_new = v;
        double v_terminal = v;

        if (cold) {
            // Constant-current cold start; trapezoidal terms keep the energy
            // ledger exact.
            const double dv =
                (model.cold_start_current_a - i_leak) * dt / cap_f;
            v_new = std::max(v + dv, 0.0);
            energy_new = 0.5 * cap_f * v_new * v_new;
            const double v_mid = 0.5 * (v + v_new);
            harvested_tick = v_mid * model.cold_start_current_a * dt;
            leak_tick = harvested_tick - (energy_new - energy);
            p_harv_report = v_mid * model.cold_start_current_a;
            v_terminal = v_new;
        } else {
            double p_dc = 0.0;
            if (!charge_gated && !below_sensitivity) {
                p_dc = dc_power(model, p_dbm, scenario.frequency_hz, v);
            }
            TickFlows flows = solve_flows(v, esr, p_dc, demand);
            const double p_leak = v * i_leak;
            double net = flows.plate_power_w - p_leak;
            energy_new = energy + net * dt;
            if (energy_new < 0.0) {
                // Drained below empty within one tick: drop the load and let
                // the PMU observe the collapse.
                flows = solve_flows(v, esr, p_dc, 0.0);
                flows.collapsed = true;
                flows.v_terminal_v = 0.0;
                net = flows.plate_power_w - p_leak;
                energy_new = std::max(energy + net * dt, 0.0);
            }
            if (scenario.stop_at_voltage_v && energy_new >= charge_target_j &&
                net > 0.0) {
                frac = std::clamp((charge_target_j - energy) / (net * dt), 0.0,
                                  1.0);
                energy_new = charge_target_j;
                stopped = true;
            }
            v_new = std::sqrt(std::max(2.0 * energy_new / cap_f, 0.0));
            harvested_tick = p_dc * dt * frac;
            leak_tick = p_leak * dt * frac;
            esr_tick = flows.esr_loss_w * dt * frac;
            served_tick = flows.served_demand_w * dt * frac;
            p_harv_report = p_dc;
            p_load_report = flows.served_demand_w;
            v_terminal = flows.collapsed ? 0.0 : flows.v_terminal_v;
        }

        if (!std::isfinite(v_new)) {
            throw NumericError(t, "non-finite capacitor voltage");
        }

        const double rf_tick = p_rf * dt * frac;
        result.rf_input_energy_j += rf_tick;
        result.harvested_dc_energy_j += harvested_tick;
        result.losses.harvester_j += rf_tick - harvested_tick;
        result.losses.leakage_j += leak_tick;
        result.losses.esr_j += esr_tick;
        result.losses.boost_j +=
            served_tick * (1.0 - scenario.pmu.boost_efficiency);
        result.delivered_energy_j += served_tick * scenario.pmu.boost_efficiency;

        energy = energy_new;
        v = v_new;
        v_sense = v_terminal;
        t_end = t + dt * frac;

        if (!result.first_charge_time_s &&
            energy >= charge_target_j * (1.0 - 1e-12)) {
            result.first_charge_time_s = t_end;
            result.rf_energy_to_first_charge_j = result.rf_input_energy_j;
            result.stored_nominal_energy_j =
                0.5 * cap_f *
                (charge_target_v * charge_target_v -
                 scenario.v_initial_v * scenario.v_initial_v);
            if (result.rf_energy_to_first_charge_j > 0.0) {
                result.charge_efficiency = result.stored_nominal_energy_j /
                                           result.rf_energy_to_first_charge_j;
            }
        }
        if (scenario.stop_at_voltage_v &&
            energy >= charge_target_j * (1.0 - 1e-12)) {
            stopped = true;
        }
        if (!result.rated_voltage_exceeded &&
            v > scenario.capacitor.rated_voltage_v * (1.0 + 1e-12)) {
            result.rated_voltage_exceeded = true;
            std::ostringstream msg;
            msg << "rated voltage " << scenario.capacitor.rated_voltage_v
                << " V exceeded at t=" << t_end << " s (v=" << v << " V)";
            result.events.push_back(msg.str());
        }

        if (scenario.record_series &&
            ((k + 1) % scenario.series_stride == 0 || stopped)) {
            result.series.push_back(
                {t_end, v, outs.phase, p_harv_report, p_load_report});
        }
    }

    result.final_v_cap_v = v;
    result.cap_energy_delta_j = energy - energy_initial;
    if (completions.size() >= 2) {
        result.update_interval_s = (completions.back() - completions.front()) /
                                   static_cast<double>(completions.size() - 1);
    }

    const double accounted = result.losses.harvester_j + result.losses.esr_j +
                             result.losses.leakage_j + result.losses.boost_j +
                             result.delivered_energy_j +
                             result.cap_energy_delta_j;
    const double in = result.rf_input_energy_j;
    result.energy_balance_error_rel =
        in > 0.0 ? std::abs(in - accounted) / in : std::abs(accounted);
    return result;
}

std::optional<double> charge_time(const Scenario& scenario, double v_target_v) {
    if (v_target_v > scenario.pmu.v_ovch_v) {
        throw std::domain_error(
            "charge_time: target above overvoltage protection threshold");
    }
    Scenario charge_only = scenario;
    charge_only.load_enabled = false;
    charge_only.stop_at_voltage_v = v_target_v;
    charge_only.record_series = false;
    if (charge_only.v_initial_v >= v_target_v) return 0.0;
    const SimResult result = run(charge_only);
    return result.first_charge_time_s;
}

std::optional<double> update_interval(const Scenario& scenario) {
    Scenario sc = scenario;
    sc.record_series = false;
    return run(sc).update_interval_s;
}

double charge_efficiency(const SimResult& result) {
    if (!result.first_charge_time_s) {
        throw std::domain_error(
            "charge_efficiency: charge target never reached");
    }
    if (!(result.rf_energy_to_first_charge_j > 0.0)) {
        throw std::domain_error("charge_efficiency: zero RF input energy");
    }
    return result.stored_nominal_energy_j / result.rf_energy_to_first_charge_j;
}

std::optional<std::string> infeasibility_reason(const Scenario& scenario) {
    const double p_max = scenario.stimulus.max_power_dbm();
    if (p_max < scenario.harvester.sensitivity_dbm) {
        std::ostringstream msg;
        msg << "stimulus " << p_max << " dBm is below harvester sensitivity "
            << scenario.harvester.sensitivity_dbm << " dBm";
        return msg.str();
    }
    return std::nullopt;
}

void write_series_csv(const SimResult& result, std::ostream& out) {
    out << "t_s,v_cap_v,state,p_harv_w,p_load_w\n";
    char buf[160];
    for (const SeriesPoint& p : result.series) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%s,%.10g,%.10g\n", p.t_s,
                      p.v_cap_v, to_string(p.phase).c_str(), p.p_harv_w,
                      p.p_load_w);
        out << buf;
    }
}

std::string summary_json(const SimResult& result) {
    nlohmann::ordered_json doc;
    auto set_optional = [&doc](const char* key, const std::optional<double>& x) {
        if (x) {
            doc[key] = *x;
        } else {
            doc[key] = nullptr;
        }
    };
    set_optional("first_charge_time_s", result.first_charge_time_s);
    set_optional("update_interval_s", result.update_interval_s);
    doc["updates_completed"] = result.updates_completed;
    doc["brownouts"] = result.brownouts;
    doc["rf_input_energy_j"] = result.rf_input_energy_j;
    doc["stored_nominal_energy_j"] = result.stored_nominal_energy_j;
    doc["rf_energy_to_first_charge_j"] = result.rf_energy_to_first_charge_j;
    set_optional("charge_efficiency", result.charge_efficiency);
    doc["delivered_energy_j"] = result.delivered_energy_j;
    doc["harvested_dc_energy_j"] = result.harvested_dc_energy_j;
    doc["losses"] = {{"harvester_j", result.losses.harvester_j},
                     {"esr_j", result.losses.esr_j},
                     {"leakage_j", result.losses.leakage_j},
                     {"boost_j", result.losses.boost_j}};
    doc["cap_energy_delta_j"] = result.cap_energy_delta_j;
    doc["final_v_cap_v"] = result.final_v_cap_v;
    doc["energy_balance_error_rel"] = result.energy_balance_error_rel;
    doc["rated_voltage_exceeded"] = result.rated_voltage_exceeded;
    doc["events"] = result.events;
    return doc.dump(2);
}

}  // namespace wptsim
