#include "rollgeo/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace rollgeo {

RadiusRatio::RadiusRatio(double r) : value(r) {
    if (!std::isfinite(r) || r <= 0.0) {
        throw validation_error("RadiusRatio: r must be finite and positive");
    }
}

ControlSchedule::ControlSchedule(std::vector<ControlSegment> segments)
    : segments_(std::move(segments)) {
    for (const auto& seg : segments_) {
        if (!std::isfinite(seg.duration) || seg.duration <= 0.0) {
            throw validation_error("ControlSchedule: segment durations must be positive");
        }
        if (!std::isfinite(seg.theta)) {
            throw validation_error("ControlSchedule: segment theta must be finite");
        }
        total_ += seg.duration;
    }
    if (!std::isfinite(total_)) {
        throw validation_error("ControlSchedule: total duration must be finite");
    }
}

double ControlSchedule::theta_at(double t) const noexcept {
    double acc = 0.0;
    for (const auto& seg : segments_) {
        acc += seg.duration;
        if (t < acc) {
            return seg.theta;
        }
    }
    return segments_.empty() ? 0.0 : segments_.back().theta;
}

std::pair<StateTangent, StateTangent> frame(const RawState& s, RadiusRatio r,
                                            FrameConvention conv) {
    const double inv_r = 1.0 / r.value;
    const double v_scale = (conv == FrameConvention::invariant_preserving) ? inv_r : 1.0;
    StateTangent x1{s.a, v_scale * s.b, -s.u, -inv_r * s.v};
    StateTangent x2{s.u.cross(s.a), -v_scale * s.v.cross(s.b), Vec3::Zero(), Vec3::Zero()};
    return {x1, x2};
}

namespace {

struct Flat12 {
    Vec3 u, v, a, b;

    Flat12 operator+(const Flat12& o) const { return {u + o.u, v + o.v, a + o.a, b + o.b}; }
    Flat12 operator*(double c) const { return {c * u, c * v, c * a, c * b}; }
};

Flat12 derivative(const Flat12& s, double inv_r, double v_scale, double ct, double st) {
    Flat12 d;
    d.u = ct * s.a + st * s.u.cross(s.a);
    d.v = v_scale * (ct * s.b - st * s.v.cross(s.b));
    d.a = -ct * s.u;
    d.b = (-ct * inv_r) * s.v;
    return d;
}

RawState project(const Flat12& s) {
    RawState out;
    out.u = s.u.normalized();
    out.v = s.v.normalized();
    out.a = (s.a - s.a.dot(out.u) * out.u).normalized();
    out.b = (s.b - s.b.dot(out.v) * out.v).normalized();
    return out;
}

void check_finite(const RawState& s) {
    if (!s.u.allFinite() || !s.v.allFinite() || !s.a.allFinite() || !s.b.allFinite()) {
        throw numerical_error("roll: non-finite state during integration");
    }
}

}  // namespace

RawState rk4_project_step(const RawState& s, RadiusRatio r, double theta, double dt,
                          FrameConvention conv) {
    const double inv_r = 1.0 / r.value;
    const double v_scale = (conv == FrameConvention::invariant_preserving) ? inv_r : 1.0;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const Flat12 y{s.u, s.v, s.a, s.b};
    const Flat12 k1 = derivative(y, inv_r, v_scale, ct, st);
    const Flat12 k2 = derivative(y + k1 * (0.5 * dt), inv_r, v_scale, ct, st);
    const Flat12 k3 = derivative(y + k2 * (0.5 * dt), inv_r, v_scale, ct, st);
    const Flat12 k4 = derivative(y + k3 * dt, inv_r, v_scale, ct, st);
    return project(y + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0));
}

HorizontalPath roll(const RawState& s0, RadiusRatio r, const ControlSchedule& controls,
                    double step, FrameConvention conv) {
    if (!std::isfinite(step) || step <= 0.0) {
        throw validation_error("roll: step must be positive");
    }
    validate_state(s0, 1e-9);

    HorizontalPath path;
    path.r = r;
    path.step = step;
    path.controls = controls;

    std::size_t count = 1;
    for (const auto& seg : controls.segments()) {
        count += static_cast<std::size_t>(std::ceil(seg.duration / step - 1e-12));
    }
    path.samples.reserve(count);

    const double theta0 = controls.empty() ? 0.0 : controls.segments().front().theta;
    path.samples.push_back(PathSample{0.0, s0, theta0});

    double seg_start = 0.0;
    RawState s = s0;
    for (const auto& seg : controls.segments()) {
        const auto n = static_cast<std::size_t>(std::ceil(seg.duration / step - 1e-12));
        const double h = seg.duration / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            s = rk4_project_step(s, r, seg.theta, h, conv);
            check_finite(s);
            const double t = (i + 1 == n) ? seg_start + seg.duration
                                          : seg_start + static_cast<double>(i + 1) * h;
            path.samples.push_back(PathSample{t, s, seg.theta});
        }
        seg_start += seg.duration;
    }
    // Each sample records the control in effect from it to the next sample,
    // so segment-boundary samples carry the incoming segment's theta.
    for (auto& sample : path.samples) {
        sample.theta = controls.theta_at(sample.t);
    }
    return path;
}

RawState great_circle_roll(const RawState& s0, RadiusRatio r, double theta, double t) noexcept {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);

    const Vec3 du = ct * s0.a + st * s0.u.cross(s0.a);
    const Vec3 mu = s0.u.cross(du);
    const double cu = std::cos(t), su = std::sin(t);
    RawState out;
    out.u = cu * s0.u + su * du;
    out.a = ct * (-su * s0.u + cu * du) - st * mu;

    const Vec3 dv = ct * s0.b - st * s0.v.cross(s0.b);
    const Vec3 mv = s0.v.cross(dv);
    const double phase = t / r.value;
    const double cv = std::cos(phase), sv = std::sin(phase);
    out.v = cv * s0.v + sv * dv;
    out.b = ct * (-sv * s0.v + cv * dv) + st * mv;
    return out;
}

double arc_length(const HorizontalPath& p) noexcept {
    return p.duration();
}

namespace {

std::size_t last_sample_at_or_before(const HorizontalPath& p, double t) {
    const auto& ss = p.samples;
    auto it = std::upper_bound(ss.begin(), ss.end(), t,
                               [](double value, const PathSample& s) { return value < s.t; });
    if (it == ss.begin()) {
        return 0;
    }
    return static_cast<std::size_t>(std::distance(ss.begin(), it)) - 1;
}

}  // namespace

RawState state_at(const HorizontalPath& p, double t) {
    if (p.samples.empty()) {
        throw validation_error("state_at: empty path");
    }
    const double tol = 1e-9 * (1.0 + std::abs(t));
    if (t < -tol || t > p.duration() + tol) {
        throw validation_error("state_at: time outside the path domain");
    }
    const std::size_t i = last_sample_at_or_before(p, t);
    const PathSample& s = p.samples[i];
    const double dt = t - s.t;
    if (std::abs(dt) <= tol) {
        return s.state;
    }
    const double theta = p.controls.empty() ? s.theta : p.controls.theta_at(s.t);
    return rk4_project_step(s.state, p.r, theta, dt);
}

std::size_t sample_index_at(const HorizontalPath& p, double t) {
    const double tol = 1e-9 * (1.0 + std::abs(t));
    const std::size_t i = last_sample_at_or_before(p, t);
    if (i < p.samples.size() && std::abs(p.samples[i].t - t) <= tol) {
        return i;
    }
    if (i + 1 < p.samples.size() && std::abs(p.samples[i + 1].t - t) <= tol) {
        return i + 1;
    }
    throw validation_error("sample_index_at: t is not a sample time");
}

std::pair<RotationSequence, RotationSequence> base_transport(const RawState& s) {
    validate_state(s, 1e-8);
    return {RotationSequence::frame_to_base(UnitVec3::normalized(s.u), UnitVec3::normalized(s.a)),
            RotationSequence::frame_to_base(UnitVec3::normalized(s.v), UnitVec3::normalized(s.b))};
}

HorizontalPath act_path(const RotationSequence& g1, const RotationSequence& g2,
                        const HorizontalPath& p) {
    HorizontalPath out;
    out.r = p.r;
    out.step = p.step;
    out.controls = p.controls;
    out.samples.reserve(p.samples.size());
    for (const auto& s : p.samples) {
        out.samples.push_back(PathSample{s.t, act(g1, g2, s.state), s.theta});
    }
    return out;
}

HorizontalPath transport_to_base_at(const HorizontalPath& p, double t_anchor) {
    const RawState anchor = state_at(p, t_anchor);
    const auto [g1, g2] = base_transport(anchor);
    return act_path(g1, g2, p);
}

HorizontalPath transport_to_base(const HorizontalPath& p) {
    if (p.samples.empty()) {
        throw validation_error("transport_to_base: empty path");
    }
    return transport_to_base_at(p, p.back().t);
}

HorizontalPath prefix(const HorizontalPath& p, double t_cut) {
    const std::size_t idx = sample_index_at(p, t_cut);
    HorizontalPath out;
    out.r = p.r;
    out.step = p.step;
    out.samples.assign(p.samples.begin(), p.samples.begin() + static_cast<std::ptrdiff_t>(idx) + 1);

    if (!p.controls.empty()) {
        std::vector<ControlSegment> clipped;
        double remaining = out.samples.back().t;
        for (const auto& seg : p.controls.segments()) {
            if (remaining <= 1e-12) break;
            ControlSegment c = seg;
            c.duration = std::min(c.duration, remaining);
            clipped.push_back(c);
            remaining -= c.duration;
        }
        out.controls = ControlSchedule(std::move(clipped));
    }
    return out;
}

}  // namespace rollgeo
