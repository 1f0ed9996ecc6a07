#include "rollgeo/bending.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace rollgeo {

void validate_bend_times(const std::array<double, 5>& times, double duration) {
    double prev = 0.0;
    for (double t : times) {
        if (!std::isfinite(t) || t <= prev) {
            throw validation_error("BendSpec: times must be finite, strictly increasing and > 0");
        }
        prev = t;
    }
    if (times.back() >= duration) {
        throw validation_error("BendSpec: times must lie strictly inside (0, duration)");
    }
}

namespace {

struct BreakAxes {
    std::array<Vec3, 5> u;
    std::array<Vec3, 5> v;
};

BreakAxes break_axes(const HorizontalPath& p, const std::array<double, 5>& times) {
    BreakAxes axes;
    for (std::size_t i = 0; i < 5; ++i) {
        const RawState s = state_at(p, times[i]);
        axes.u[i] = s.u;
        axes.v[i] = s.v;
    }
    return axes;
}

// Applies the first `count` accumulated rotations (written left to right, so
// index count-1 acts first) to one state. Zero angles short-circuit bitwise.
RawState apply_bend(const BreakAxes& axes, const std::array<double, 5>& angles,
                    std::size_t count, const RawState& s) {
    RawState out = s;
    for (std::size_t k = count; k-- > 0;) {
        if (angles[k] == 0.0) continue;
        const AxisAngle ru{UnitVec3::normalized(axes.u[k]), angles[k]};
        const AxisAngle rv{UnitVec3::normalized(axes.v[k]), -angles[k]};
        out.u = rotate(ru, out.u);
        out.a = rotate(ru, out.a);
        out.v = rotate(rv, out.v);
        out.b = rotate(rv, out.b);
    }
    return out;
}

}  // namespace

HorizontalPath bend(const HorizontalPath& p, const BendSpec& spec) {
    validate_bend_times(spec.times, p.duration());
    for (double a : spec.angles) {
        if (!std::isfinite(a)) {
            throw validation_error("BendSpec: angles must be finite");
        }
    }
    const BreakAxes axes = break_axes(p, spec.times);

    HorizontalPath out;
    out.r = p.r;
    out.step = p.step;
    out.controls = p.controls;
    out.samples.reserve(p.samples.size());

    std::size_t count = 0;
    for (const auto& s : p.samples) {
        while (count < 5 && spec.times[count] < s.t) ++count;
        out.samples.push_back(PathSample{s.t, apply_bend(axes, spec.angles, count, s.state), s.theta});
    }
    return out;
}

std::array<BreakJump, 5> bend_breaks(const HorizontalPath& p, const BendSpec& spec) {
    validate_bend_times(spec.times, p.duration());
    const BreakAxes axes = break_axes(p, spec.times);

    std::array<BreakJump, 5> jumps;
    for (std::size_t j = 0; j < 5; ++j) {
        const RawState s = state_at(p, spec.times[j]);
        jumps[j].time = spec.times[j];
        jumps[j].gauge_angle = spec.angles[j];
        jumps[j].left = apply_bend(axes, spec.angles, j, s);
        jumps[j].right = apply_bend(axes, spec.angles, j + 1, s);
    }
    return jumps;
}

BendContext::BendContext(const HorizontalPath& p, const std::array<double, 5>& times,
                         double base_tol) {
    validate_bend_times(times, p.duration());
    terminal_time_ = p.duration();
    terminal_ = p.back().state;
    r_ = p.r.value;
    if (state_distance(terminal_, base_state()) > base_tol) {
        throw validation_error("BendContext: path must end at the base state");
    }
    for (std::size_t i = 0; i < 5; ++i) {
        break_states_[i] = state_at(p, times[i]);
    }
}

RawState BendContext::bent_terminal(const Vec5& alpha) const noexcept {
    RawState out = terminal_;
    for (std::size_t k = 5; k-- > 0;) {
        const double ang = alpha[static_cast<int>(k)];
        if (ang == 0.0) continue;
        const AxisAngle ru{UnitVec3::normalized(break_states_[k].u), ang};
        const AxisAngle rv{UnitVec3::normalized(break_states_[k].v), -ang};
        out.u = rotate(ru, out.u);
        out.a = rotate(ru, out.a);
        out.v = rotate(rv, out.v);
        out.b = rotate(rv, out.b);
    }
    return out;
}

ChartCoords BendContext::omega(const Vec5& alpha) const {
    return chart_coords(bent_terminal(alpha));
}

ChartCoords omega(const HorizontalPath& p, const std::array<double, 5>& times, const Vec5& alpha) {
    return BendContext(p, times).omega(alpha);
}

namespace {

constexpr double kFdStep = 1e-5;

Mat5 fd_jacobian(const BendContext& ctx, const Vec5& at) {
    Mat5 j;
    for (int i = 0; i < 5; ++i) {
        Vec5 plus = at;
        Vec5 minus = at;
        plus[i] += kFdStep;
        minus[i] -= kFdStep;
        j.row(i) = ((ctx.omega(plus).w - ctx.omega(minus).w) / (2.0 * kFdStep)).transpose();
    }
    return j;
}

Vec5 svd_values(const Mat5& m) {
    return Eigen::JacobiSVD<Mat5>(m).singularValues();
}

}  // namespace

OmegaJacobian omega_jacobian(const HorizontalPath& p, const std::array<double, 5>& times,
                             JacobianMode mode) {
    BendContext ctx(p, times);
    OmegaJacobian out;
    out.mode = mode;
    if (mode == JacobianMode::analytic) {
        for (int i = 0; i < 5; ++i) {
            const RawState& s = ctx.break_state(i);
            out.matrix.row(i) << s.u.y(), -s.u.x(), -s.v.y(), s.v.x(), s.u.z() - s.v.z();
        }
    } else {
        out.matrix = fd_jacobian(ctx, Vec5::Zero());
    }
    out.singular_values = svd_values(out.matrix);
    return out;
}

double singularity_measure(const OmegaJacobian& j) noexcept {
    const double s1 = j.singular_values[0];
    if (s1 <= 0.0) {
        return 0.0;
    }
    return j.singular_values[4] / s1;
}

JacobianReport make_jacobian_report(const HorizontalPath& p, const std::array<double, 5>& times) {
    JacobianReport report;
    report.times = times;
    report.r = p.r.value;
    report.analytic = omega_jacobian(p, times, JacobianMode::analytic);
    report.finite_difference = omega_jacobian(p, times, JacobianMode::finite_difference);
    report.max_abs_difference =
        (report.analytic.matrix - report.finite_difference.matrix).cwiseAbs().maxCoeff();

    BendContext ctx(p, times);
    const auto deviates = [](double nominal, double measured) {
        return std::abs(nominal - measured) > std::max(1e-9, 1e-6 * std::abs(measured));
    };

    // Matrix entries: nominal rows carry the r factor in columns 3 and 4.
    for (int i = 0; i < 5; ++i) {
        const RawState& s = ctx.break_state(i);
        const double nominal[5] = {s.u.y(), -s.u.x(), -report.r * s.v.y(), report.r * s.v.x(),
                                   s.u.z() - s.v.z()};
        for (int jcol = 0; jcol < 5; ++jcol) {
            const double measured = report.finite_difference.matrix(i, jcol);
            if (deviates(nominal[jcol], measured)) {
                report.deviations.push_back(JacobianDeviation{
                    "matrix[" + std::to_string(i + 1) + "][" + std::to_string(jcol + 1) + "]",
                    nominal[jcol], measured});
            }
        }
    }

    // Marker derivatives: the nominal z-components are +u2(t_i) for a and
    // -v2(t_i) for b; the measured values come from central differences of
    // the bent terminal markers.
    for (int i = 0; i < 5; ++i) {
        Vec5 plus = Vec5::Zero();
        Vec5 minus = Vec5::Zero();
        plus[i] = kFdStep;
        minus[i] = -kFdStep;
        const RawState sp = ctx.bent_terminal(plus);
        const RawState sm = ctx.bent_terminal(minus);
        const Vec3 da = (sp.a - sm.a) / (2.0 * kFdStep);
        const Vec3 db = (sp.b - sm.b) / (2.0 * kFdStep);
        const RawState& s = ctx.break_state(i);
        if (deviates(s.u.y(), da.z())) {
            report.deviations.push_back(
                JacobianDeviation{"da_dalpha[" + std::to_string(i + 1) + "].z", s.u.y(), da.z()});
        }
        if (deviates(-s.v.y(), db.z())) {
            report.deviations.push_back(
                JacobianDeviation{"db_dalpha[" + std::to_string(i + 1) + "].z", -s.v.y(), db.z()});
        }
    }
    return report;
}

namespace {

// Latest sample time strictly before t_bar at which the path sits at the base
// state; the anchor must leave room for five interior break times.
double find_anchor_time(const HorizontalPath& p, double t_bar) {
    const RawState base = base_state();
    const double min_t = 6.0 * p.step;
    for (std::size_t i = p.samples.size(); i-- > 0;) {
        const PathSample& s = p.samples[i];
        if (s.t >= t_bar || s.t < min_t) continue;
        if (state_distance(s.state, base) <= 1e-8) {
            return s.t;
        }
    }
    throw validation_error(
        "shortcut_search: the path does not pass through the base state before t_bar");
}

}  // namespace

ShortcutSearchResult shortcut_search(const HorizontalPath& p, double t_bar, double tol,
                                     int max_iter) {
    if (!std::isfinite(t_bar) || t_bar > p.duration() + 1e-12) {
        throw validation_error("shortcut_search: t_bar must lie within the path domain");
    }
    const double anchor = find_anchor_time(p, t_bar);

    std::array<double, 5> times{};
    for (int i = 0; i < 5; ++i) {
        times[static_cast<std::size_t>(i)] = anchor * static_cast<double>(i + 1) / 6.0;
    }
    const HorizontalPath head = prefix(p, anchor);
    BendContext ctx(head, times);

    ShortcutSearchResult result;
    result.jacobian_ratio = singularity_measure(omega_jacobian(head, times, JacobianMode::analytic));
    if (result.jacobian_ratio <= 1e-7) {
        result.failure = ShortcutSearchResult::Failure::rank_deficient;
        return result;
    }

    const Vec5 target = chart_coords(state_at(p, t_bar)).w;
    Vec5 alpha = Vec5::Zero();
    Vec5 residual = ctx.omega(alpha).w - target;

    for (int iter = 1; iter <= max_iter; ++iter) {
        if (residual.norm() <= tol) {
            result.certificate = ShortcutCertificate{alpha, anchor, t_bar, residual.norm(), iter - 1};
            result.residual = residual.norm();
            result.iterations = iter - 1;
            return result;
        }
        // Rows of J are d/d alpha_i, so the linear model is omega + J^T delta.
        const Mat5 j = fd_jacobian(ctx, alpha);
        const Vec5 delta = j.transpose().colPivHouseholderQr().solve(-residual);

        double lambda = 1.0;
        Vec5 next = alpha + delta;
        Vec5 next_res;
        for (int halving = 0;; ++halving) {
            bool ok = true;
            try {
                next_res = ctx.omega(next).w - target;
            } catch (const numerical_error&) {
                ok = false;  // stepped outside the chart; damp further
            }
            if (ok && next_res.norm() < residual.norm()) break;
            if (halving >= 8) {
                if (!ok) next_res = residual;
                break;
            }
            lambda *= 0.5;
            next = alpha + lambda * delta;
        }
        alpha = next;
        residual = next_res;
    }

    if (residual.norm() <= tol) {
        result.certificate = ShortcutCertificate{alpha, anchor, t_bar, residual.norm(), max_iter};
        result.residual = residual.norm();
        result.iterations = max_iter;
        return result;
    }
    result.failure = ShortcutSearchResult::Failure::no_convergence;
    result.residual = residual.norm();
    result.iterations = max_iter;
    return result;
}

}  // namespace rollgeo
