// SPDX-License-Identifier: Apache-2.0

#include "wptsim/harvester.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "wptsim/csv.hpp"
#include "wptsim/units.hpp"

namespace wptsim {

namespace {

constexpr double max_grid_efficiency = 0.95;

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) {
        throw std::domain_error(std::string("HarvesterModel: empty ") + name +
                                " axis");
    }
    for (size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) {
            throw std::domain_error(std::string("HarvesterModel: ") + name +
                                    " axis not strictly increasing");
        }
    }
}

struct AxisPos {
    size_t lo;
    size_t hi;
    double w;  // weight of hi
};

AxisPos locate(const std::vector<double>& axis, double x) {
    if (x <= axis.front()) return {0, 0, 0.0};
    if (x >= axis.back()) return {axis.size() - 1, axis.size() - 1, 0.0};
    const auto it = std::upper_bound(axis.begin(), axis.end(), x);
    const size_t hi = static_cast<size_t>(it - axis.begin());
    const size_t lo = hi - 1;
    return {lo, hi, (x - axis[lo]) / (axis[hi] - axis[lo])};
}

}  // namespace

void validate(const HarvesterModel& model) {
    check_axis(model.grid.p_axis_dbm, "power");
    check_axis(model.grid.f_axis_hz, "frequency");
    check_axis(model.grid.v_axis_v, "voltage");
    const size_t expected = model.grid.p_axis_dbm.size() *
                            model.grid.f_axis_hz.size() *
                            model.grid.v_axis_v.size();
    if (model.grid.eta.size() != expected) {
        throw std::domain_error("HarvesterModel: grid size mismatch");
    }
    for (const double eta : model.grid.eta) {
        if (!std::isfinite(eta) || eta < 0.0 || eta > max_grid_efficiency) {
            throw std::domain_error(
                "HarvesterModel: efficiency outside [0, 0.95]");
        }
    }
    if (!(model.sensitivity_dbm < model.max_input_dbm)) {
        throw std::domain_error(
            "HarvesterModel: sensitivity must lie below max input");
    }
    if (model.cold_start_voltage_v < 0.0 || model.cold_start_current_a < 0.0) {
        throw std::domain_error("HarvesterModel: negative cold-start limits");
    }
}

double efficiency(const HarvesterModel& model, double p_in_dbm,
                  double frequency_hz, double v_cap_v) {
    if (p_in_dbm > model.max_input_dbm) {
        std::ostringstream msg;
        msg << model.name << ": input " << p_in_dbm
            << " dBm above absolute maximum " << model.max_input_dbm << " dBm";
        throw OverloadError(msg.str());
    }
    if (p_in_dbm < model.sensitivity_dbm) return 0.0;

    const auto& grid = model.grid;
    const AxisPos p = locate(grid.p_axis_dbm, p_in_dbm);
    const AxisPos f = locate(grid.f_axis_hz, frequency_hz);
    const AxisPos v = locate(grid.v_axis_v, v_cap_v);

    auto lerp = [](double a, double b, double w) { return a + (b - a) * w; };
    double corners[2][2];
    for (int fi = 0; fi < 2; ++fi) {
        const size_t jf = fi == 0 ? f.lo : f.hi;
        for (int vi = 0; vi < 2; ++vi) {
            const size_t kv = vi == 0 ? v.lo : v.hi;
            corners[fi][vi] =
                lerp(grid.at(p.lo, jf, kv), grid.at(p.hi, jf, kv), p.w);
        }
    }
    const double at_lo_f = lerp(corners[0][0], corners[0][1], v.w);
    const double at_hi_f = lerp(corners[1][0], corners[1][1], v.w);
    return lerp(at_lo_f, at_hi_f, f.w);
}

double dc_power(const HarvesterModel& model, double p_in_dbm,
                double frequency_hz, double v_cap_v) {
    return efficiency(model, p_in_dbm, frequency_hz, v_cap_v) *
           dbm_to_watts(p_in_dbm);
}

CalibrationLoadResult load_calibration(const std::string& path) {
    const auto file =
        csv::read_file(path, "p_in_dbm,freq_hz,v_cap_v,efficiency");

    struct Cell {
        double p, f, v, eta;
        int line;
    };
    std::vector<Cell> cells;
    cells.reserve(file.rows.size());
    std::set<double> p_values, f_values, v_values;
    for (const auto& row : file.rows) {
        if (row.fields.size() != 4) {
            throw ParseError(path, row.line, "expected 4 columns");
        }
        Cell cell{csv::to_double(path, row, 0), csv::to_double(path, row, 1),
                  csv::to_double(path, row, 2), csv::to_double(path, row, 3),
                  row.line};
        if (!std::isfinite(cell.eta) || cell.eta < 0.0 ||
            cell.eta > max_grid_efficiency) {
            throw ParseError(path, row.line, "efficiency outside [0, 0.95]");
        }
        p_values.insert(cell.p);
        f_values.insert(cell.f);
        v_values.insert(cell.v);
        cells.push_back(cell);
    }
    if (cells.empty()) {
        throw ParseError(path, 0, "calibration grid is empty");
    }

    CalibrationLoadResult result;
    auto& grid = result.model.grid;
    grid.p_axis_dbm.assign(p_values.begin(), p_values.end());
    grid.f_axis_hz.assign(f_values.begin(), f_values.end());
    grid.v_axis_v.assign(v_values.begin(), v_values.end());
    if (!file.comments.empty()) {
        grid.provenance = file.comments.front();
    }

    const size_t total = grid.p_axis_dbm.size() * grid.f_axis_hz.size() *
                         grid.v_axis_v.size();
    grid.eta.assign(total, std::nan(""));
    auto axis_index = [](const std::vector<double>& axis, double x) {
        return static_cast<size_t>(
            std::lower_bound(axis.begin(), axis.end(), x) - axis.begin());
    };
    for (const Cell& cell : cells) {
        const size_t idx = grid.index(axis_index(grid.p_axis_dbm, cell.p),
                                      axis_index(grid.f_axis_hz, cell.f),
                                      axis_index(grid.v_axis_v, cell.v));
        if (!std::isnan(grid.eta[idx])) {
            throw ParseError(path, cell.line, "duplicate grid cell");
        }
        grid.eta[idx] = cell.eta;
    }
    if (cells.size() != total) {
        for (size_t ip = 0; ip < grid.p_axis_dbm.size(); ++ip) {
            for (size_t jf = 0; jf < grid.f_axis_hz.size(); ++jf) {
                for (size_t kv = 0; kv < grid.v_axis_v.size(); ++kv) {
                    if (std::isnan(grid.at(ip, jf, kv))) {
                        std::ostringstream msg;
                        msg << "missing grid cell p=" << grid.p_axis_dbm[ip]
                            << " f=" << grid.f_axis_hz[jf]
                            << " v=" << grid.v_axis_v[kv];
                        throw ParseError(path, 0, msg.str());
                    }
                }
            }
        }
    }
    validate(result.model);

    // Measured trends: efficiency falls with input power and rises with
    // capacitor voltage. Violations are suspicious data, not errors.
    for (size_t jf = 0; jf < grid.f_axis_hz.size(); ++jf) {
        for (size_t kv = 0; kv < grid.v_axis_v.size(); ++kv) {
            for (size_t ip = 1; ip < grid.p_axis_dbm.size(); ++ip) {
                if (grid.at(ip, jf, kv) > grid.at(ip - 1, jf, kv)) {
                    std::ostringstream msg;
                    msg << "efficiency increases with input power at f="
                        << grid.f_axis_hz[jf] << " Hz, v=" << grid.v_axis_v[kv]
                        << " V (p " << grid.p_axis_dbm[ip - 1] << " -> "
                        << grid.p_axis_dbm[ip] << " dBm)";
                    result.warnings.push_back(msg.str());
                }
            }
        }
    }
    for (size_t ip = 0; ip < grid.p_axis_dbm.size(); ++ip) {
        for (size_t jf = 0; jf < grid.f_axis_hz.size(); ++jf) {
            for (size_t kv = 1; kv < grid.v_axis_v.size(); ++kv) {
                if (grid.at(ip, jf, kv) < grid.at(ip, jf, kv - 1)) {
                    std::ostringstream msg;
                    msg << "efficiency decreases with capacitor voltage at p="
                        << grid.p_axis_dbm[ip] << " dBm, f="
                        << grid.f_axis_hz[jf] << " Hz (v "
                        << grid.v_axis_v[kv - 1] << " -> " << grid.v_axis_v[kv]
                        << " V)";
                    result.warnings.push_back(msg.str());
                }
            }
        }
    }
    return result;
}

HarvesterModel constant_harvester(double eta) {
    if (!(eta >= 0.0) || eta > max_grid_efficiency) {
        throw std::domain_error("constant_harvester: efficiency outside [0, 0.95]");
    }
    HarvesterModel model;
    model.name = "constant";
    model.sensitivity_dbm = -200.0;
    model.max_input_dbm = 200.0;
    model.cold_start_voltage_v = 0.0;
    model.cold_start_current_a = 0.0;
    model.grid.p_axis_dbm = {0.0};
    model.grid.f_axis_hz = {868e6};
    model.grid.v_axis_v = {0.0};
    model.grid.eta = {eta};
    model.grid.provenance = "constant efficiency";
    return model;
}

}  // namespace wptsim
