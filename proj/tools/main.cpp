// rollgeo — command-line harness for the rolling-spheres toolkit.
//
// Usage: rollgeo <command> --config <path> --out <dir> [--seed N]
// Commands: roll, bend, jacobian, trace, verify, shortcut.
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "rollgeo/rollgeo.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rollgeo;

struct Invocation {
    std::string command;
    fs::path config_path;
    fs::path out_dir;
    std::optional<std::uint64_t> seed_override;
};

ExperimentConfig load(const Invocation& inv) {
    ExperimentConfig config = load_config(inv.config_path);
    if (inv.seed_override) {
        config.seed = *inv.seed_override;
    }
    return config;
}

HorizontalPath roll_from_config(const ExperimentConfig& config) {
    return roll(config_initial_state(config), RadiusRatio(config.r), config_schedule(config),
                config.step);
}

std::array<double, 5> require_array5(const std::optional<std::array<double, 5>>& field,
                                     const char* name) {
    if (!field) {
        throw validation_error(std::string("config: '") + name + "' is required for this command");
    }
    return *field;
}

int cmd_roll(const Invocation& inv) {
    const ExperimentConfig config = load(inv);
    const HorizontalPath path = roll_from_config(config);
    atomic_write_file(inv.out_dir / "trajectory.csv", trajectory_csv(path));
    std::cout << "roll: " << path.samples.size() << " samples, duration "
              << format_g17(path.duration()) << "\n";
    return 0;
}

int cmd_bend(const Invocation& inv) {
    const ExperimentConfig config = load(inv);
    const HorizontalPath path = roll_from_config(config);
    BendSpec spec;
    spec.times = require_array5(config.bend_times, "bend.times");
    spec.angles = require_array5(config.bend_angles, "bend.angles");
    const HorizontalPath bent = bend(path, spec);
    const auto jumps = bend_breaks(path, spec);
    atomic_write_file(inv.out_dir / "bent_trajectory.csv", trajectory_csv(bent));
    atomic_write_file(inv.out_dir / "bend_breaks.txt", render_break_report(jumps, 1e-12));
    for (const auto& j : jumps) {
        if (!equivalent(j.left, j.right, 1e-12)) {
            std::cerr << "bend: break at t=" << j.time << " is not a gauge jump\n";
            return 2;
        }
    }
    std::cout << "bend: arc length " << format_g17(arc_length(bent)) << " (unchanged)\n";
    return 0;
}

int cmd_jacobian(const Invocation& inv) {
    const ExperimentConfig config = load(inv);
    const HorizontalPath path = transport_to_base(roll_from_config(config));
    const auto times = require_array5(config.bend_times, "bend.times");
    const JacobianReport report = make_jacobian_report(path, times);
    atomic_write_file(inv.out_dir / "jacobian_report.txt", render_jacobian_report(report));
    std::cout << "jacobian: singularity ratio "
              << format_g17(singularity_measure(report.finite_difference)) << ", "
              << report.deviations.size() << " nominal-entry deviations\n";
    return 0;
}

int cmd_trace(const Invocation& inv) {
    const ExperimentConfig config = load(inv);
    if (!config.duration) {
        throw validation_error("config: 'duration' is required for trace");
    }
    const auto k = require_array5(config.plane_k, "plane_k");
    Vec5 kv;
    for (int i = 0; i < 5; ++i) kv[i] = k[static_cast<std::size_t>(i)];
    const PlaneSpec plane = make_plane(kv);
    const HorizontalPath path = trace_plane_curve(config_initial_state(config),
                                                  RadiusRatio(config.r), plane,
                                                  *config.duration, config.step);
    atomic_write_file(inv.out_dir / "trace.csv", trajectory_csv(path));
    std::cout << "trace: " << path.samples.size() << " samples, plane residual "
              << format_g17(plane_residual(path, plane)) << "\n";
    return 0;
}

int cmd_verify(const Invocation& inv) {
    const ExperimentConfig config = load(inv);
    const HorizontalPath path = roll_from_config(config);
    const GeodesicReport report = verify_geodesic(path, config.trials, config.seed);
    atomic_write_file(inv.out_dir / "geodesic_report.txt", render_geodesic_report(report));
    std::cout << "verify: " << to_string(report.verdict) << "\n";
    return 0;
}

int cmd_shortcut(const Invocation& inv) {
    const ExperimentConfig config = load(inv);
    const HorizontalPath rolled = roll_from_config(config);
    const double anchor_hint = config.anchor.value_or(rolled.duration() - 0.02);
    double anchor = rolled.samples.front().t;
    for (const auto& s : rolled.samples) {
        if (s.t > anchor_hint + 1e-12) break;
        anchor = s.t;
    }
    const double t_bar = config.t_bar.value_or(anchor + 0.01);
    const HorizontalPath path = transport_to_base_at(rolled, anchor);
    const ShortcutSearchResult result = shortcut_search(path, t_bar);
    atomic_write_file(inv.out_dir / "shortcut.txt", render_shortcut_result(result));
    if (!result.success()) {
        std::cerr << "shortcut: "
                  << (result.failure == ShortcutSearchResult::Failure::rank_deficient
                          ? "endpoint Jacobian is rank-deficient (five-plane condition holds)"
                          : "no convergence within the iteration budget")
                  << "\n";
        return 2;
    }
    std::cout << "shortcut: certificate with residual " << format_g17(result.residual) << " in "
              << result.iterations << " iterations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for two spheres rolling without slipping or twisting"};
    app.require_subcommand(1);

    Invocation inv;
    std::uint64_t seed_value = 0;
    bool seed_given = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", inv.config_path, "experiment config (JSON)")
            ->required();
        sub->add_option("--out", inv.out_dir, "output directory")->required();
        sub->add_option("--seed", seed_value, "override the config seed")
            ->each([&](const std::string&) { seed_given = true; });
    };

    add_common(app.add_subcommand("roll", "integrate a horizontal path and emit its CSV"));
    add_common(app.add_subcommand("bend", "bend a path and check the gauge jumps at the breaks"));
    add_common(app.add_subcommand("jacobian", "endpoint-map Jacobian report (analytic and FD)"));
    add_common(app.add_subcommand("trace", "trace the horizontal curve determined by a 5-plane"));
    add_common(app.add_subcommand("verify", "verify a geodesic candidate end to end"));
    add_common(app.add_subcommand("shortcut", "search for a non-minimality certificate"));

    CLI11_PARSE(app, argc, argv);

    inv.command = app.get_subcommands().front()->get_name();
    if (seed_given) {
        inv.seed_override = seed_value;
    }

    try {
        std::filesystem::create_directories(inv.out_dir);
        if (inv.command == "roll") return cmd_roll(inv);
        if (inv.command == "bend") return cmd_bend(inv);
        if (inv.command == "jacobian") return cmd_jacobian(inv);
        if (inv.command == "trace") return cmd_trace(inv);
        if (inv.command == "verify") return cmd_verify(inv);
        if (inv.command == "shortcut") return cmd_shortcut(inv);
        std::cerr << "unknown command: " << inv.command << "\n";
        return 1;
    } catch (const validation_error& err) {
        std::cerr << "validation error: " << err.what() << "\n";
        return 1;
    } catch (const numerical_error& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
