#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rollgeo/dynamics.hpp"

namespace rollgeo {

/// Five strictly increasing break times inside (0, T) and the bend angles.
struct BendSpec {
    std::array<double, 5> times{};
    std::array<double, 5> angles{};
};

/// Throws validation_error unless the times are strictly increasing and
/// interior to (0, duration).
void validate_bend_times(const std::array<double, 5>& times, double duration);

/// The bending perturbation: on (t_j, t_{j+1}] the accumulated rotations
/// R_{u(t_1)}^{a_1} ... R_{u(t_j)}^{a_j} act on u and a, and the opposite-angle
/// products about v(t_1)..v(t_j) act on v and b. Sample times are preserved,
/// so arc length is unchanged and an all-zero spec reproduces p bit for bit.
HorizontalPath bend(const HorizontalPath& p, const BendSpec& spec);

/// Left/right limits of the bent path at one break time. The contact data
/// u, v agree on both sides; the (a, b) jump is the gauge shift by the break
/// angle, so the underlying configuration class is continuous.
struct BreakJump {
    double time = 0.0;
    RawState left;
    RawState right;
    double gauge_angle = 0.0;
};

std::array<BreakJump, 5> bend_breaks(const HorizontalPath& p, const BendSpec& spec);

/// Precomputed data for evaluating the endpoint map repeatedly: the rotation
/// axes u(t_i), v(t_i) and the terminal state. Requires the path to end at
/// base_state() within base_tol.
class BendContext {
public:
    BendContext(const HorizontalPath& p, const std::array<double, 5>& times,
                double base_tol = 1e-8);

    /// Terminal state of the bent path (all five rotations applied).
    RawState bent_terminal(const Vec5& alpha) const noexcept;

    /// omega(alpha) = chart coordinates of the bent path's endpoint.
    ChartCoords omega(const Vec5& alpha) const;

    const RawState& break_state(int i) const { return break_states_[static_cast<std::size_t>(i)]; }
    double terminal_time() const noexcept { return terminal_time_; }
    double radius() const noexcept { return r_; }

private:
    std::array<RawState, 5> break_states_;
    RawState terminal_;
    double terminal_time_ = 0.0;
    double r_ = 1.0;
};

/// chart_coords of the bent endpoint; p must end at base_state() within 1e-8.
ChartCoords omega(const HorizontalPath& p, const std::array<double, 5>& times, const Vec5& alpha);

enum class JacobianMode { analytic, finite_difference };

/// J[i][j] = d omega_j / d alpha_i at alpha = 0, with singular values.
struct OmegaJacobian {
    Mat5 matrix = Mat5::Zero();
    JacobianMode mode = JacobianMode::analytic;
    Vec5 singular_values = Vec5::Zero();
};

/// analytic mode fills row i with the first-order coefficients of the
/// implemented chart, (u2, -u1, -v2, v1, u3 - v3) at t_i; finite_difference
/// mode takes central differences of omega with step 1e-5 per angle.
OmegaJacobian omega_jacobian(const HorizontalPath& p, const std::array<double, 5>& times,
                             JacobianMode mode);

/// sigma5 / sigma1; zero for the zero matrix.
double singularity_measure(const OmegaJacobian& j) noexcept;

/// One entry where the measured value differs from the nominal closed-form
/// coefficient (the classical row pattern with the r factor in columns 3-4
/// and the +u2 z-component in the marker derivative).
struct JacobianDeviation {
    std::string entry;
    double nominal = 0.0;
    double measured = 0.0;
};

struct JacobianReport {
    std::array<double, 5> times{};
    double r = 1.0;
    OmegaJacobian analytic;
    OmegaJacobian finite_difference;
    double max_abs_difference = 0.0;  // analytic vs finite difference, entrywise
    std::vector<JacobianDeviation> deviations;
};

/// Runs both modes, compares them, and lists every nominal closed-form entry
/// that the measured Jacobian contradicts.
JacobianReport make_jacobian_report(const HorizontalPath& p, const std::array<double, 5>& times);

/// A bend of the length-T prefix reaching the point the path itself only
/// reaches at t_bar > T: evidence that the path is not length-minimizing.
struct ShortcutCertificate {
    Vec5 alpha = Vec5::Zero();
    double t_anchor = 0.0;
    double t_bar = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct ShortcutSearchResult {
    enum class Failure { none, rank_deficient, no_convergence };

    std::optional<ShortcutCertificate> certificate;
    Failure failure = Failure::none;
    double jacobian_ratio = 0.0;  // sigma5/sigma1 at alpha = 0
    double residual = 0.0;
    int iterations = 0;

    bool success() const noexcept { return certificate.has_value(); }
};

/// Damped Newton iteration solving omega(alpha) = chart(p(t_bar)) from
/// alpha = 0. The anchor time T is the latest sample time before t_bar at
/// which the path passes through base_state() (within 1e-8); break times are
/// T i/6. Rank deficiency of the Jacobian at 0 is reported as a failure, not
/// an error: it is the signature of the five-plane condition.
ShortcutSearchResult shortcut_search(const HorizontalPath& p, double t_bar,
                                     double tol = 1e-8, int max_iter = 20);

}  // namespace rollgeo
