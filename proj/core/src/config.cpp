#include "rollgeo/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "rollgeo/errors.hpp"
#include "rollgeo/state.hpp"

namespace rollgeo {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
    if (!j.at(key).is_number()) {
        throw validation_error(std::string("config: '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

std::array<double, 5> read_array5(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 5) {
        throw validation_error("config: '" + key + "' must be an array of 5 numbers");
    }
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) {
        if (!j[i].is_number()) {
            throw validation_error("config: '" + key + "' must contain numbers");
        }
        out[i] = j[i].get<double>();
    }
    return out;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw validation_error("config: cannot open " + file.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& err) {
        throw validation_error("config: invalid JSON in " + file.string() + ": " + err.what());
    }

    ExperimentConfig config;
    try {
        if (j.contains("r")) config.r = require_number(j, "r");
        if (j.contains("step")) config.step = require_number(j, "step");
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
                throw validation_error("config: 'seed' must be a non-negative integer");
            }
            config.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("trials")) {
            config.trials = j.at("trials").get<int>();
        }
        if (j.contains("initial_state")) {
            const json& s = j.at("initial_state");
            if (!s.is_array() || s.size() != 12) {
                throw validation_error("config: 'initial_state' must be an array of 12 numbers");
            }
            for (std::size_t i = 0; i < 12; ++i) {
                config.initial_state[i] = s[i].get<double>();
            }
        }
        if (j.contains("controls")) {
            for (const json& seg : j.at("controls")) {
                if (!seg.is_object() || !seg.contains("duration") || !seg.contains("theta")) {
                    throw validation_error(
                        "config: each control segment needs 'duration' and 'theta'");
                }
                config.controls.push_back(ControlSegment{seg.at("duration").get<double>(),
                                                         seg.at("theta").get<double>()});
            }
        }
        if (j.contains("bend")) {
            const json& b = j.at("bend");
            config.bend_times = read_array5(b.at("times"), "bend.times");
            config.bend_angles = read_array5(b.at("angles"), "bend.angles");
        }
        if (j.contains("plane_k")) {
            config.plane_k = read_array5(j.at("plane_k"), "plane_k");
        }
        if (j.contains("duration")) config.duration = require_number(j, "duration");
        if (j.contains("anchor")) config.anchor = require_number(j, "anchor");
        if (j.contains("t_bar")) config.t_bar = require_number(j, "t_bar");
    } catch (const json::exception& err) {
        throw validation_error(std::string("config: ") + err.what());
    }

    if (!std::isfinite(config.step) || config.step <= 0.0) {
        throw validation_error("config: 'step' must be positive");
    }
    if (config.trials < 1) {
        throw validation_error("config: 'trials' must be at least 1");
    }
    return config;
}

RawState config_initial_state(const ExperimentConfig& config, double tol) {
    const auto& s = config.initial_state;
    return make_state(Vec3(s[0], s[1], s[2]), Vec3(s[3], s[4], s[5]), Vec3(s[6], s[7], s[8]),
                      Vec3(s[9], s[10], s[11]), tol);
}

ControlSchedule config_schedule(const ExperimentConfig& config) {
    return ControlSchedule(config.controls);
}

}  // namespace rollgeo
