#include <doctest.h>

#include <cmath>

#include "../support.hpp"

using namespace rollgeo;
using namespace rollgeo::testing;

TEST_CASE("contact_features at the base state and along a pure-X2 roll") {
    CHECK(contact_features(base_state()).norm() == 0.0);
    const double r = 2.0;
    for (double t : {0.4, 1.3}) {
        const RawState s = great_circle_roll(base_state(), RadiusRatio(r), M_PI / 2.0, t);
        const Vec5 phi = contact_features(s);
        CHECK(std::abs(phi[0]) < 1e-12);
        CHECK(std::abs(phi[1] - std::sin(t)) < 1e-12);
        CHECK(std::abs(phi[2]) < 1e-12);
        CHECK(std::abs(phi[3] + std::sin(t / r)) < 1e-12);
        CHECK(std::abs(phi[4] - (std::cos(t) - std::cos(t / r))) < 1e-12);
    }
}

TEST_CASE("contact_features are exactly gauge-invariant") {
    Rng rng(501);
    const RawState s = random_state(rng);
    const Vec5 a = contact_features(s);
    const Vec5 b = contact_features(gauge_shift(s, rng.angle()));
    for (int i = 0; i < 5; ++i) {
        CHECK(a[i] == b[i]);
    }
}

TEST_CASE("make_plane normalizes and rejects zero coefficients") {
    Vec5 k;
    k << 3.0, 0.0, 0.0, 0.0, 4.0;
    const PlaneSpec plane = make_plane(k);
    CHECK(std::abs(plane.k.norm() - 1.0) < 1e-15);
    CHECK(plane.k[0] == doctest::Approx(0.6));
    CHECK_THROWS_AS(make_plane(Vec5::Zero()), validation_error);
}

TEST_CASE("a pure-X1 path lies on the u2 plane") {
    const ControlSchedule c({{2.5, 0.0}});
    const HorizontalPath p = roll(base_state(), RadiusRatio(2.0), c, 1e-3);
    Vec5 k;
    k << 0.0, 1.0, 0.0, 0.0, 0.0;
    CHECK(plane_residual(p, make_plane(k)) < 1e-12);
    const HorizontalPath fine = roll(base_state(), RadiusRatio(2.0), c, 5e-4);
    CHECK(plane_residual(fine, make_plane(k)) < 1e-12);
}

TEST_CASE("fit_plane on a pure-X1 path finds the two-dimensional null space") {
    const ControlSchedule c({{2.5, 0.0}});
    const HorizontalPath p = roll(base_state(), RadiusRatio(2.0), c, 1e-3);
    const PlaneFit fit = fit_plane(p);
    CHECK(fit.sigma_min < 1e-10);
    CHECK(fit.null_space_dim == 2);
    CHECK(plane_residual(p, fit.plane) < 1e-10);
}

TEST_CASE("fit_plane rejects degenerate sample sets") {
    const HorizontalPath p = roll(base_state(), RadiusRatio(1.0), ControlSchedule{}, 1e-3);
    CHECK_THROWS_AS(fit_plane(p), validation_error);
}

TEST_CASE("a generic path admits no plane") {
    Rng rng(502);
    const HorizontalPath p =
        roll(base_state(), RadiusRatio(0.2), random_schedule(rng, 8, 0.8, 1.3), 1e-3);
    const PlaneFit fit = fit_plane(p);
    CHECK(fit.null_space_dim == 0);
    CHECK(plane_residual(p, fit.plane) > 1e-4);
}

TEST_CASE("tracing the u2 plane from the base state gives the pure-X1 roll") {
    Vec5 k;
    k << 0.0, 1.0, 0.0, 0.0, 0.0;
    for (double r : {1.0, 2.0}) {
        const HorizontalPath p =
            trace_plane_curve(base_state(), RadiusRatio(r), make_plane(k), 1.5, 1e-3);
        CHECK(std::abs(p.samples.front().theta) < 1e-14);
        double worst = 0.0;
        for (std::size_t i = 0; i < p.samples.size(); i += 31) {
            const RawState oracle =
                great_circle_roll(base_state(), RadiusRatio(r), 0.0, p.samples[i].t);
            worst = std::max(worst, state_distance(p.samples[i].state, oracle));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("the vertical-feature plane is degenerate at the base state") {
    Vec5 k;
    k << 0.0, 0.0, 0.0, 0.0, 1.0;
    for (double r : {1.0, 2.0}) {
        CHECK_THROWS_AS(trace_plane_curve(base_state(), RadiusRatio(r), make_plane(k), 1.0, 1e-3),
                        numerical_error);
    }
}

TEST_CASE("trace_plane_curve rejects an off-plane start") {
    Vec5 k;
    k << 1.0, 0.0, 0.0, 0.0, 0.0;
    const RawState start = great_circle_roll(base_state(), RadiusRatio(1.0), 0.0, 0.7);
    CHECK_THROWS_AS(trace_plane_curve(start, RadiusRatio(1.0), make_plane(k), 1.0, 1e-3),
                    validation_error);
}

TEST_CASE("traced curves stay on their plane") {
    Rng rng(503);
    for (int rep = 0; rep < 3; ++rep) {
        Vec5 k = rng.unit_vec5();
        // keep the start direction well-defined
        const PlaneSpec plane = make_plane(k);
        const RawState n = base_state();
        const double r = rng.uniform(0.5, 2.5);
        Vec5 d1, d2;
        {
            const auto [x1, x2] = frame(n, RadiusRatio(r));
            d1 << x1.du.x(), x1.du.y(), x1.dv.x(), x1.dv.y(), x1.du.z() - x1.dv.z();
            d2 << x2.du.x(), x2.du.y(), x2.dv.x(), x2.dv.y(), x2.du.z() - x2.dv.z();
        }
        if (std::hypot(plane.k.dot(d1), plane.k.dot(d2)) < 0.3) continue;
        const HorizontalPath p = trace_plane_curve(n, RadiusRatio(r), plane, 3.0, 1e-3);
        CHECK(plane_residual(p, plane) < 1e-9);
        double drift = 0.0;
        for (std::size_t i = 1; i < p.samples.size(); ++i) {
            const double f0 = plane.k.dot(contact_features(p.samples[i - 1].state));
            const double f1 = plane.k.dot(contact_features(p.samples[i].state));
            drift = std::max(drift, std::abs(f1 - f0) / (p.samples[i].t - p.samples[i - 1].t));
        }
        CHECK(drift < 1e-9);
        double defect = 0.0;
        for (const auto& s : p.samples) defect = std::max(defect, state_defect(s.state));
        CHECK(defect < 1e-10);
    }
}

TEST_CASE("transform_plane follows a transported trace") {
    Vec5 k;
    k << 0.2, 0.8, 0.2, -0.4, 0.1;
    const PlaneSpec plane = make_plane(k);
    const HorizontalPath p = trace_plane_curve(base_state(), RadiusRatio(2.0), plane, 3.0, 1e-3);
    const double anchor = p.samples[p.samples.size() - 25].t;
    const auto [g1, g2] = base_transport(state_at(p, anchor));
    const HorizontalPath moved = act_path(g1, g2, p);
    const PlaneSpec moved_plane = transform_plane(plane, g1, g2);
    CHECK(plane_residual(moved, moved_plane) < 1e-9);
}

TEST_CASE("fit_plane recovers the traced plane when the null space is simple") {
    Rng rng(504);
    Vec5 k = rng.unit_vec5();
    const PlaneSpec plane = make_plane(k);
    const HorizontalPath p = trace_plane_curve(base_state(), RadiusRatio(2.0), plane, 3.0, 1e-3);
    const PlaneFit fit = fit_plane(p);
    REQUIRE(fit.null_space_dim == 1);
    const double err = std::min((fit.plane.k - plane.k).norm(), (fit.plane.k + plane.k).norm());
    CHECK(err < 1e-8);
}

TEST_CASE("verify_geodesic accepts plane-traced curves") {
    Vec5 k;
    k << 0.2, 0.8, 0.2, -0.4, 0.1;
    const HorizontalPath p =
        trace_plane_curve(base_state(), RadiusRatio(2.0), make_plane(k), 3.0, 1e-3);
    const GeodesicReport report = verify_geodesic(p, 50, 12345);
    CHECK(report.verdict == Verdict::consistent_with_geodesic);
    CHECK(report.max_residual <= 1e-9);
    CHECK(report.singularity_max <= 1e-7);
    CHECK(!report.certificate.has_value());
}

TEST_CASE("verify_geodesic accepts the pure-X1 roll") {
    const ControlSchedule c({{3.0, 0.0}});
    const HorizontalPath p = roll(base_state(), RadiusRatio(1.0), c, 1e-3);
    const GeodesicReport report = verify_geodesic(p, 50, 9);
    CHECK(report.verdict == Verdict::consistent_with_geodesic);
}

TEST_CASE("verify_geodesic flags a generic path with a shortcut certificate") {
    Rng rng(505);
    const HorizontalPath p =
        roll(base_state(), RadiusRatio(0.2), random_schedule(rng, 8, 0.8, 1.3), 1e-3);
    const GeodesicReport report = verify_geodesic(p, 50, 99);
    CHECK(report.verdict == Verdict::not_minimizing);
    REQUIRE(report.certificate.has_value());
    CHECK(report.certificate->residual <= 1e-8);
}

TEST_CASE("verify_geodesic reports carry the discrepancy notes") {
    const ControlSchedule c({{3.0, 0.0}});
    const HorizontalPath p = roll(base_state(), RadiusRatio(1.0), c, 1e-3);
    const GeodesicReport report = verify_geodesic(p, 10, 4);
    bool saw_v_rate = false;
    bool saw_w5 = false;
    for (const auto& d : report.deviations) {
        saw_v_rate = saw_v_rate || d.rfind("v_rate_rows", 0) == 0;
        saw_w5 = saw_w5 || d.rfind("w5_on_raw_representative", 0) == 0;
    }
    CHECK(saw_v_rate);
    CHECK(saw_w5);
}

TEST_CASE("verify_geodesic verdicts survive random transports") {
    Rng rng(506);
    Vec5 k;
    k << 0.2, 0.8, 0.2, -0.4, 0.1;
    const HorizontalPath traced =
        trace_plane_curve(base_state(), RadiusRatio(2.0), make_plane(k), 3.0, 1e-3);
    const GeodesicReport base_report = verify_geodesic(traced, 30, 77);
    for (int rep = 0; rep < 2; ++rep) {
        RotationSequence g1, g2;
        g1.push_back(AxisAngle{UnitVec3(rng.unit_vector(), 1e-9), rng.uniform(-3.0, 3.0)});
        g2.push_back(AxisAngle{UnitVec3(rng.unit_vector(), 1e-9), rng.uniform(-3.0, 3.0)});
        const GeodesicReport moved_report = verify_geodesic(act_path(g1, g2, traced), 30, 77);
        CHECK(moved_report.verdict == base_report.verdict);
        CHECK(moved_report.max_residual < 2.0 * std::max(base_report.max_residual, 1e-12));
    }
}

TEST_CASE("verify_geodesic is deterministic for a fixed seed") {
    Rng rng(507);
    const HorizontalPath p =
        roll(base_state(), RadiusRatio(0.25), random_schedule(rng, 6, 0.8, 1.2), 1e-3);
    const std::string r1 = render_geodesic_report(verify_geodesic(p, 25, 31));
    const std::string r2 = render_geodesic_report(verify_geodesic(p, 25, 31));
    CHECK(r1 == r2);
}
