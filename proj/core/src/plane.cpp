#include "rollgeo/plane.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace rollgeo {

Vec5 contact_features(const RawState& s) noexcept {
    Vec5 phi;
    phi << s.u.x(), s.u.y(), s.v.x(), s.v.y(), s.u.z() - s.v.z();
    return phi;
}

PlaneSpec make_plane(const Vec5& k, const RawState& base) {
    const double n = k.norm();
    if (!k.allFinite() || n < 1e-12) {
        throw validation_error("make_plane: coefficients must be finite and not all zero");
    }
    return PlaneSpec{k / n, base};
}

PlaneSpec transform_plane(const PlaneSpec& plane, const RotationSequence& g1,
                          const RotationSequence& g2) {
    // Split k into the 6-dimensional normal (K_u, K_v), rotate each half, and
    // re-express in feature form; that requires the rotated plane to still
    // pass through the base contact (K_u3 + K_v3 = 0).
    const Vec3 ku(plane.k[0], plane.k[1], plane.k[4]);
    const Vec3 kv(plane.k[2], plane.k[3], -plane.k[4]);
    const Vec3 ku2 = g1.apply(ku);
    const Vec3 kv2 = g2.apply(kv);
    if (std::abs(ku2.z() + kv2.z()) > 1e-9 * (1.0 + ku2.norm() + kv2.norm())) {
        throw validation_error("transform_plane: the rotated plane misses the base contact");
    }
    Vec5 k;
    k << ku2.x(), ku2.y(), kv2.x(), kv2.y(), ku2.z();
    return make_plane(k);
}

double plane_residual(const HorizontalPath& p, const PlaneSpec& plane) noexcept {
    double worst = 0.0;
    for (const auto& s : p.samples) {
        worst = std::max(worst, std::abs(plane.k.dot(contact_features(s.state))));
    }
    return worst;
}

PlaneFit fit_plane(const HorizontalPath& p) {
    if (p.samples.size() < 5) {
        throw validation_error("fit_plane: need at least five samples (degenerate rank)");
    }
    Eigen::MatrixXd phi(static_cast<Eigen::Index>(p.samples.size()), 5);
    for (Eigen::Index i = 0; i < phi.rows(); ++i) {
        phi.row(i) = contact_features(p.samples[static_cast<std::size_t>(i)].state).transpose();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeFullV);

    PlaneFit fit;
    fit.singular_values = svd.singularValues();
    fit.sigma_max = fit.singular_values[0];
    fit.sigma_min = fit.singular_values[4];
    if (fit.sigma_max <= 1e-14) {
        throw numerical_error("fit_plane: feature matrix is numerically zero");
    }
    const double null_tol = std::max(1e-7 * fit.sigma_max, 1e-14);
    for (int i = 0; i < 5; ++i) {
        if (fit.singular_values[i] <= null_tol) ++fit.null_space_dim;
    }

    Vec5 k = svd.matrixV().col(4);
    for (int i = 0; i < 5; ++i) {
        if (std::abs(k[i]) > 1e-12) {
            if (k[i] < 0.0) k = -k;
            break;
        }
    }
    fit.plane = make_plane(k);
    return fit;
}

namespace {

struct Direction {
    double c = 1.0;
    double s = 0.0;
};

Direction plane_direction(const RawState& s, double inv_r, const Vec5& k,
                          const Direction* prev) {
    const Vec3 ua = s.u.cross(s.a);
    const Vec3 vb = s.v.cross(s.b);
    Vec5 d1, d2;
    d1 << s.a.x(), s.a.y(), inv_r * s.b.x(), inv_r * s.b.y(), s.a.z() - inv_r * s.b.z();
    d2 << ua.x(), ua.y(), -inv_r * vb.x(), -inv_r * vb.y(), ua.z() + inv_r * vb.z();
    const double a = k.dot(d1);
    const double b = k.dot(d2);
    const double h = std::hypot(a, b);
    if (h <= 1e-12) {
        throw numerical_error("trace_plane_curve: degenerate point, the plane does not determine a direction");
    }
    Direction dir{b / h, -a / h};
    if (prev == nullptr) {
        if (dir.c < 0.0 || (dir.c == 0.0 && dir.s < 0.0)) {
            dir.c = -dir.c;
            dir.s = -dir.s;
        }
    } else if (dir.c * prev->c + dir.s * prev->s < 0.0) {
        dir.c = -dir.c;
        dir.s = -dir.s;
    }
    return dir;
}

RawState project_state(const RawState& s) {
    RawState out;
    out.u = s.u.normalized();
    out.v = s.v.normalized();
    out.a = (s.a - s.a.dot(out.u) * out.u).normalized();
    out.b = (s.b - s.b.dot(out.v) * out.v).normalized();
    return out;
}

struct Tangent12 {
    Vec3 u, v, a, b;
};

Tangent12 tracer_derivative(const RawState& s, double inv_r, const Direction& d) {
    Tangent12 out;
    out.u = d.c * s.a + d.s * s.u.cross(s.a);
    out.v = inv_r * (d.c * s.b - d.s * s.v.cross(s.b));
    out.a = -d.c * s.u;
    out.b = (-d.c * inv_r) * s.v;
    return out;
}

RawState advance(const RawState& s, const Tangent12& d, double h) {
    return RawState{s.u + h * d.u, s.v + h * d.v, s.a + h * d.a, s.b + h * d.b};
}

}  // namespace

HorizontalPath trace_plane_curve(const RawState& s0, RadiusRatio r, const PlaneSpec& plane,
                                 double duration, double step) {
    if (!std::isfinite(duration) || duration <= 0.0) {
        throw validation_error("trace_plane_curve: duration must be positive");
    }
    if (!std::isfinite(step) || step <= 0.0) {
        throw validation_error("trace_plane_curve: step must be positive");
    }
    validate_state(s0, 1e-9);
    if (std::abs(plane.k.norm() - 1.0) > 1e-12) {
        throw validation_error("trace_plane_curve: plane coefficients must have unit norm");
    }
    if (std::abs(plane.k.dot(contact_features(s0))) > 1e-10) {
        throw validation_error("trace_plane_curve: start state is off the plane");
    }
    const double inv_r = 1.0 / r.value;

    const auto n = static_cast<std::size_t>(std::ceil(duration / step - 1e-12));
    const double h = duration / static_cast<double>(n);

    HorizontalPath path;
    path.r = r;
    path.step = step;
    path.samples.reserve(n + 1);

    RawState s = s0;
    Direction prev;
    bool have_prev = false;
    path.samples.push_back(PathSample{0.0, s, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const Direction d0 = plane_direction(s, inv_r, plane.k, have_prev ? &prev : nullptr);
        const auto stage = [&](const RawState& y) {
            const Direction d = plane_direction(y, inv_r, plane.k, &d0);
            return tracer_derivative(y, inv_r, d);
        };
        const Tangent12 k1 = stage(s);
        const Tangent12 k2 = stage(project_state(advance(s, k1, 0.5 * h)));
        const Tangent12 k3 = stage(project_state(advance(s, k2, 0.5 * h)));
        const Tangent12 k4 = stage(project_state(advance(s, k3, h)));
        Tangent12 sum;
        sum.u = k1.u + 2.0 * (k2.u + k3.u) + k4.u;
        sum.v = k1.v + 2.0 * (k2.v + k3.v) + k4.v;
        sum.a = k1.a + 2.0 * (k2.a + k3.a) + k4.a;
        sum.b = k1.b + 2.0 * (k2.b + k3.b) + k4.b;
        s = project_state(advance(s, sum, h / 6.0));
        if (!s.u.allFinite() || !s.v.allFinite() || !s.a.allFinite() || !s.b.allFinite()) {
            throw numerical_error("trace_plane_curve: non-finite state during integration");
        }
        // The sample's theta records the direction used from the previous
        // sample; the start sample keeps it too for re-integration.
        const double theta = std::atan2(d0.s, d0.c);
        path.samples[i].theta = theta;
        path.samples.push_back(PathSample{static_cast<double>(i + 1) * h, s, theta});
        prev = d0;
        have_prev = true;
    }
    return path;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent_with_geodesic: return "consistent-with-geodesic";
        case Verdict::not_minimizing: return "not-minimizing";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// Largest sample time at most duration - margin; falls back to the final
// sample when the path is too short for an interior anchor.
double pick_anchor(const HorizontalPath& p, double margin) {
    const double target = p.duration() - margin;
    double anchor = p.back().t;
    for (std::size_t i = p.samples.size(); i-- > 0;) {
        if (p.samples[i].t <= target && i > 0) {
            anchor = p.samples[i].t;
            break;
        }
    }
    return anchor;
}

}  // namespace

GeodesicReport verify_geodesic(const HorizontalPath& p, int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw validation_error("verify_geodesic: trials must be at least 1");
    }
    if (p.samples.size() < 16) {
        throw validation_error("verify_geodesic: path has too few samples");
    }

    GeodesicReport report;
    report.trials = trials;
    report.seed = seed;

    const double anchor = pick_anchor(p, 0.02);
    report.anchor_time = anchor;
    const HorizontalPath transported = transport_to_base_at(p, anchor);
    const HorizontalPath head = prefix(transported, anchor);

    Rng rng(seed);

    try {
        report.fit = fit_plane(head);
        report.max_residual = plane_residual(head, report.fit.plane);

        std::vector<double> pool;
        pool.reserve(head.samples.size());
        for (std::size_t i = 1; i + 1 < head.samples.size(); ++i) {
            pool.push_back(head.samples[i].t);
        }
        const double min_sep = 2.0 * head.step;
        std::array<double, 5> first_tuple{};
        for (int trial = 0; trial < trials; ++trial) {
            const std::vector<double> tuple = sample_time_tuple(rng, pool, min_sep);
            std::array<double, 5> times{};
            std::copy(tuple.begin(), tuple.end(), times.begin());
            if (trial == 0) first_tuple = times;
            const OmegaJacobian j = omega_jacobian(head, times, JacobianMode::analytic);
            report.singularity_max = std::max(report.singularity_max, singularity_measure(j));
        }

        // Discrepancy notes carried by every report.
        report.deviations.push_back(
            "v_rate_rows: integrated fields use dv = b/r and -(v x b)/r; the unscaled rows "
            "b and -(v x b) coincide only at r = 1 (here r = " + format_number(p.r.value) + ")");

        double w5_dev = 0.0;
        for (int probe = 0; probe < 8; ++probe) {
            const auto idx = static_cast<std::size_t>(rng.below(head.samples.size()));
            const RawState& s = head.samples[idx].state;
            const double theta = rng.angle();
            w5_dev = std::max(w5_dev,
                              std::abs(chart_w5(gauge_shift(s, theta)) - chart_w5(s)));
        }
        report.deviations.push_back(
            std::string("w5_on_raw_representative: ") +
            (w5_dev <= 1e-9 ? "gauge-invariant" : "not gauge-invariant") +
            " (max deviation " + format_number(w5_dev) +
            "); the chart evaluates w5 on the canonical gauge representative");

        const JacobianReport jrep = make_jacobian_report(head, first_tuple);
        for (const auto& dev : jrep.deviations) {
            report.deviations.push_back("jacobian " + dev.entry +
                                        ": nominal=" + format_number(dev.nominal) +
                                        " measured=" + format_number(dev.measured));
        }

        if (report.max_residual <= 1e-8 && report.singularity_max <= 1e-7) {
            report.verdict = Verdict::consistent_with_geodesic;
            return report;
        }
    } catch (const std::runtime_error& err) {
        report.verdict = Verdict::inconclusive;
        report.note = std::string("degenerate analysis: ") + err.what();
        return report;
    }

    if (anchor + 0.01 <= p.duration() + 1e-12) {
        const ShortcutSearchResult sc = shortcut_search(transported, anchor + 0.01, 1e-8, 20);
        if (sc.success()) {
            report.verdict = Verdict::not_minimizing;
            report.certificate = sc.certificate;
            return report;
        }
        report.note = sc.failure == ShortcutSearchResult::Failure::rank_deficient
                          ? "shortcut search: endpoint Jacobian is rank-deficient at zero"
                          : "shortcut search did not converge within the iteration budget";
    } else {
        report.note = "path too short to attempt a shortcut certificate";
    }
    report.verdict = Verdict::inconclusive;
    return report;
}

}  // namespace rollgeo
