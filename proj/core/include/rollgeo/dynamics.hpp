#pragma once

#include <utility>
#include <vector>

#include "rollgeo/state.hpp"

namespace rollgeo {

/// Radius of M2; M1 always has radius 1.
struct RadiusRatio {
    double value = 1.0;
    RadiusRatio() = default;
    explicit RadiusRatio(double r);
};

struct ControlSegment {
    double duration = 0.0;
    double theta = 0.0;  // direction cos(theta) X1 + sin(theta) X2
};

/// Piecewise-constant steering schedule. Segment durations must be positive.
class ControlSchedule {
public:
    ControlSchedule() = default;
    explicit ControlSchedule(std::vector<ControlSegment> segments);

    const std::vector<ControlSegment>& segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }
    double total_duration() const noexcept { return total_; }
    double theta_at(double t) const noexcept;

private:
    std::vector<ControlSegment> segments_;
    double total_ = 0.0;
};

/// Which v-rate convention the frame fields use. invariant_preserving scales
/// the v-rows by 1/r so the M2 contact point r*v moves at unit speed and the
/// tangency invariants are conserved; classical_rows keeps the unscaled rows
/// (b, -(v x b)), which coincide with the former only at r = 1.
enum class FrameConvention { invariant_preserving, classical_rows };

struct StateTangent {
    Vec3 du, dv, da, db;
};

/// The horizontal frame at s: X1 = (a, b/r, -u, -v/r), X2 = (u x a, -(v x b)/r, 0, 0).
std::pair<StateTangent, StateTangent> frame(const RawState& s, RadiusRatio r,
                                            FrameConvention conv = FrameConvention::invariant_preserving);

struct PathSample {
    double t = 0.0;
    RawState state;
    double theta = 0.0;  // control in effect from this sample to the next
};

/// A time-sampled horizontal trajectory: samples at every integrator step and
/// every segment boundary, strictly increasing t from 0. When controls is
/// empty (traced curves), re-integration between samples holds the sample's
/// own theta constant.
struct HorizontalPath {
    RadiusRatio r;
    double step = 0.0;
    ControlSchedule controls;
    std::vector<PathSample> samples;

    double duration() const noexcept { return samples.empty() ? 0.0 : samples.back().t; }
    const PathSample& front() const { return samples.front(); }
    const PathSample& back() const { return samples.back(); }
};

/// Integrates s' = cos(theta) X1 + sin(theta) X2 with a classical one-step
/// 4th-order scheme and per-step projection back onto the state invariants.
HorizontalPath roll(const RawState& s0, RadiusRatio r, const ControlSchedule& controls,
                    double step, FrameConvention conv = FrameConvention::invariant_preserving);

/// Closed-form constant-control solution: great-circle motion on both factors
/// with parallel-transported markers. Serves as the integrator oracle.
RawState great_circle_roll(const RawState& s0, RadiusRatio r, double theta, double t) noexcept;

/// Final sample time (unit-speed parametrization).
double arc_length(const HorizontalPath& p) noexcept;

/// State at an arbitrary time, re-integrated from the nearest retained sample
/// at or before t (never more than one step away).
RawState state_at(const HorizontalPath& p, double t);

/// One projected 4th-order step from s over dt under constant theta. Exposed
/// for the tracer and tests.
RawState rk4_project_step(const RawState& s, RadiusRatio r, double theta, double dt,
                          FrameConvention conv = FrameConvention::invariant_preserving);

/// Rotation pair carrying s onto base_state(): g1 maps {a, u x a, u} to
/// {e1, e2, e3} and g2 maps {b, v x b, v} likewise.
std::pair<RotationSequence, RotationSequence> base_transport(const RawState& s);

/// Applies the product symmetry to every sample.
HorizontalPath act_path(const RotationSequence& g1, const RotationSequence& g2,
                        const HorizontalPath& p);

/// act_path with the pair taking the state at sample time t_anchor to base_state().
HorizontalPath transport_to_base_at(const HorizontalPath& p, double t_anchor);

/// transport_to_base_at anchored at the final sample.
HorizontalPath transport_to_base(const HorizontalPath& p);

/// The sub-path on [0, t_cut]; t_cut must be a sample time.
HorizontalPath prefix(const HorizontalPath& p, double t_cut);

/// Index of the sample at time t (within 1e-9(1+t)); throws when t is not a
/// sample time.
std::size_t sample_index_at(const HorizontalPath& p, double t);

}  // namespace rollgeo
