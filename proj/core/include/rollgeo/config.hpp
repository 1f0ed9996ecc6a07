#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "rollgeo/dynamics.hpp"

namespace rollgeo {

/// One experiment, loaded from a JSON file. Shared fields are always read;
/// command-specific fields are validated by the command that needs them.
struct ExperimentConfig {
    double r = 1.0;
    std::array<double, 12> initial_state{0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 0};
    std::vector<ControlSegment> controls;
    double step = 1e-3;
    std::uint64_t seed = 0;

    std::optional<std::array<double, 5>> bend_times;
    std::optional<std::array<double, 5>> bend_angles;
    std::optional<std::array<double, 5>> plane_k;
    std::optional<double> duration;      // trace
    std::optional<double> anchor;        // shortcut: transport time, default duration - 0.02
    std::optional<double> t_bar;         // shortcut: target time, default anchor + 0.01
    int trials = 100;
};

ExperimentConfig load_config(const std::filesystem::path& file);

/// The configured initial state, validated and projected through make_state.
RawState config_initial_state(const ExperimentConfig& config, double tol = 1e-8);

ControlSchedule config_schedule(const ExperimentConfig& config);

}  // namespace rollgeo
