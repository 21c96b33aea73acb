// SPDX-License-Identifier: Apache-2.0

#include "wptsim/pmu.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace wptsim {

void validate(const PmuConfig& config) {
    const bool ordered = 0.0 < config.v_boost_min_v &&
                         config.v_boost_min_v < config.v_ovdis_v &&
                         config.v_ovdis_v < config.v_chrdy_v &&
                         config.v_chrdy_v <= config.v_ovch_v;
    if (!ordered) {
        throw std::domain_error(
            "PmuConfig: need 0 < v_boost_min < v_ovdis < v_chrdy <= v_ovch");
    }
    if (!(config.boost_efficiency > 0.0) || config.boost_efficiency > 1.0) {
        throw std::domain_error("PmuConfig: boost efficiency outside (0, 1]");
    }
    if (config.update_holdoff_s < 0.0) {
        throw std::domain_error("PmuConfig: negative update holdoff");
    }
}

void validate(const LoadProfile& load) {
    if (!(load.update_energy_j > 0.0)) {
        throw std::domain_error("LoadProfile: update energy must be positive");
    }
    if (!(load.update_duration_s > 0.0)) {
        throw std::domain_error("LoadProfile: update duration must be positive");
    }
    if (load.quiescent_power_w < 0.0) {
        throw std::domain_error("LoadProfile: negative quiescent power");
    }
}

double boost_input_power(const PmuConfig& config, double p_out_w) {
    if (p_out_w < 0.0) {
        throw std::domain_error("boost_input_power: negative output power");
    }
    return p_out_w / config.boost_efficiency;
}

VoltageWindow usable_window(const PmuConfig& config) {
    return usable_window(config, config.oring_enabled);
}

VoltageWindow usable_window(const PmuConfig& config, bool oring) {
    return oring ? VoltageWindow{config.v_chrdy_v, config.v_boost_min_v}
                 : VoltageWindow{config.v_chrdy_v, config.v_ovdis_v};
}

std::string to_string(PmuPhase phase) {
    switch (phase) {
        case PmuPhase::cold_charging: return "cold_charging";
        case PmuPhase::updating: return "updating";
        case PmuPhase::post_update: return "post_update";
        case PmuPhase::brownout: return "brownout";
    }
    return "cold_charging";
}

Pmu::Pmu(const PmuConfig& config, const LoadProfile& load)
    : config_(config), load_(load) {
    validate(config_);
    validate(load_);
}

void Pmu::reset() {
    phase_ = PmuPhase::cold_charging;
    elapsed_s_ = 0.0;
    ready_s_ = 0.0;
}

PmuOutputs Pmu::step(double v_cap_v, double dt_s) {
    if (!(dt_s > 0.0)) {
        throw std::domain_error("Pmu::step: dt must be positive");
    }
    if (v_cap_v < 0.0) {
        throw std::domain_error("Pmu::step: negative capacitor voltage");
    }

    if (phase_ == PmuPhase::post_update) {
        phase_ = PmuPhase::cold_charging;
    }

    if (phase_ == PmuPhase::cold_charging || phase_ == PmuPhase::brownout) {
        // A failed update needs a full recharge before the retry.
        if (v_cap_v >= config_.v_chrdy_v) {
            ready_s_ += dt_s;
            if (ready_s_ >= config_.update_holdoff_s) {
                phase_ = PmuPhase::updating;
                elapsed_s_ = 0.0;
                ready_s_ = 0.0;
            }
        } else {
            ready_s_ = 0.0;
        }
    } else if (phase_ == PmuPhase::updating) {
        if (v_cap_v < config_.v_boost_min_v) {
            phase_ = PmuPhase::brownout;  // interrupted update is discarded
            elapsed_s_ = 0.0;
        } else if (!config_.oring_enabled && v_cap_v < config_.v_ovdis_v) {
            // Without the ORing override the LV LDO drops the boost enable.
            phase_ = PmuPhase::brownout;
            elapsed_s_ = 0.0;
        } else if (elapsed_s_ >= load_.update_duration_s) {
            phase_ = PmuPhase::post_update;
            elapsed_s_ = 0.0;
        }
    }

    PmuOutputs out;
    out.phase = phase_;
    if (phase_ == PmuPhase::updating) {
        elapsed_s_ += dt_s;
        out.boost_enabled = true;
        out.load_active = true;
        out.oring_override =
            config_.oring_enabled && v_cap_v < config_.v_ovdis_v;
        const double p_out =
            load_.update_energy_j / load_.update_duration_s +
            load_.quiescent_power_w;
        out.load_input_power_w = boost_input_power(config_, p_out);
    }
    return out;
}

namespace {

void assign_field(PmuConfig& config, const std::string& key,
                  const nlohmann::json& value) {
    if (key == "v_ovch_v") config.v_ovch_v = value.get<double>();
    else if (key == "v_chrdy_v") config.v_chrdy_v = value.get<double>();
    else if (key == "v_ovdis_v") config.v_ovdis_v = value.get<double>();
    else if (key == "v_boost_min_v") config.v_boost_min_v = value.get<double>();
    else if (key == "boost_efficiency") config.boost_efficiency = value.get<double>();
    else if (key == "output_voltage_v") config.output_voltage_v = value.get<double>();
    else if (key == "update_holdoff_s") config.update_holdoff_s = value.get<double>();
    else if (key == "oring_enabled") config.oring_enabled = value.get<bool>();
    else throw std::runtime_error("unknown PMU preset key '" + key + "'");
}

}  // namespace

std::map<std::string, PmuConfig> load_pmu_presets(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open PMU preset file " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw std::runtime_error(path + ": " + err.what());
    }
    if (!doc.is_object() || doc.empty()) {
        throw std::runtime_error(path + ": expected an object of presets");
    }
    std::map<std::string, PmuConfig> presets;
    for (const auto& [name, body] : doc.items()) {
        PmuConfig config;
        for (const auto& [key, value] : body.items()) {
            try {
                assign_field(config, key, value);
            } catch (const nlohmann::json::exception& err) {
                throw std::runtime_error(path + ": preset '" + name + "': " +
                                         err.what());
            }
        }
        validate(config);
        presets.emplace(name, config);
    }
    return presets;
}

}  // namespace wptsim
