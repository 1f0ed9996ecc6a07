#include "rollgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace rollgeo {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string trajectory_csv(const HorizontalPath& p) {
    std::string out = "t,u1,u2,u3,v1,v2,v3,a1,a2,a3,b1,b2,b3,theta\n";
    for (const auto& s : p.samples) {
        out += format_g17(s.t);
        const Vec3* vecs[4] = {&s.state.u, &s.state.v, &s.state.a, &s.state.b};
        for (const Vec3* v : vecs) {
            for (int i = 0; i < 3; ++i) {
                out += ',';
                out += format_g17((*v)[i]);
            }
        }
        out += ',';
        out += format_g17(s.theta);
        out += '\n';
    }
    return out;
}

std::vector<PathSample> read_trajectory_rows(std::istream& in) {
    std::vector<PathSample> rows;
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,u1", 0) != 0) {
        throw validation_error("read_trajectory_rows: missing trajectory header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double vals[14];
        char comma;
        for (int i = 0; i < 14; ++i) {
            if (i > 0 && !(ss >> comma)) {
                throw validation_error("read_trajectory_rows: malformed row");
            }
            if (!(ss >> vals[i])) {
                throw validation_error("read_trajectory_rows: malformed row");
            }
        }
        PathSample s;
        s.t = vals[0];
        s.state.u = Vec3(vals[1], vals[2], vals[3]);
        s.state.v = Vec3(vals[4], vals[5], vals[6]);
        s.state.a = Vec3(vals[7], vals[8], vals[9]);
        s.state.b = Vec3(vals[10], vals[11], vals[12]);
        s.theta = vals[13];
        rows.push_back(s);
    }
    return rows;
}

namespace {

void append_matrix_block(std::string& out, const OmegaJacobian& j) {
    out += "mode: ";
    out += (j.mode == JacobianMode::analytic) ? "analytic" : "finite_difference";
    out += "\nmatrix:\n";
    for (int i = 0; i < 5; ++i) {
        out += " ";
        for (int c = 0; c < 5; ++c) {
            out += ' ';
            out += format_g17(j.matrix(i, c));
        }
        out += '\n';
    }
    out += "singular_values:";
    for (int i = 0; i < 5; ++i) {
        out += ' ';
        out += format_g17(j.singular_values[i]);
    }
    out += "\nsingularity_ratio: " + format_g17(singularity_measure(j)) + "\n";
}

}  // namespace

std::string render_jacobian_report(const JacobianReport& report) {
    std::string out;
    out += "r: " + format_g17(report.r) + "\n";
    out += "times:";
    for (double t : report.times) {
        out += ' ';
        out += format_g17(t);
    }
    out += '\n';
    append_matrix_block(out, report.analytic);
    append_matrix_block(out, report.finite_difference);
    out += "max_abs_difference: " + format_g17(report.max_abs_difference) + "\n";
    if (report.deviations.empty()) {
        out += "deviations: none\n";
    } else {
        out += "deviations:\n";
        for (const auto& d : report.deviations) {
            out += "  " + d.entry + ": nominal=" + format_g17(d.nominal) +
                   " measured=" + format_g17(d.measured) + "\n";
        }
    }
    return out;
}

std::string render_geodesic_report(const GeodesicReport& report) {
    std::string out;
    out += "verdict: " + to_string(report.verdict) + "\n";
    out += "anchor_time: " + format_g17(report.anchor_time) + "\n";
    out += "trials: " + std::to_string(report.trials) + "\n";
    out += "seed: " + std::to_string(report.seed) + "\n";
    out += "plane_k:";
    for (int i = 0; i < 5; ++i) {
        out += ' ';
        out += format_g17(report.fit.plane.k[i]);
    }
    out += '\n';
    out += "sigma_min: " + format_g17(report.fit.sigma_min) + "\n";
    out += "sigma_max: " + format_g17(report.fit.sigma_max) + "\n";
    out += "null_space_dim: " + std::to_string(report.fit.null_space_dim) + "\n";
    out += "max_residual: " + format_g17(report.max_residual) + "\n";
    out += "singularity_max: " + format_g17(report.singularity_max) + "\n";
    if (report.certificate.has_value()) {
        const ShortcutCertificate& c = *report.certificate;
        out += "certificate: alpha=[";
        for (int i = 0; i < 5; ++i) {
            if (i > 0) out += ' ';
            out += format_g17(c.alpha[i]);
        }
        out += "] t_anchor=" + format_g17(c.t_anchor) + " t_bar=" + format_g17(c.t_bar) +
               " residual=" + format_g17(c.residual) +
               " iterations=" + std::to_string(c.iterations) + "\n";
    } else {
        out += "certificate: none\n";
    }
    if (report.deviations.empty()) {
        out += "deviations: none\n";
    } else {
        out += "deviations:\n";
        for (const auto& d : report.deviations) {
            out += "  - " + d + "\n";
        }
    }
    if (!report.note.empty()) {
        out += "note: " + report.note + "\n";
    }
    return out;
}

std::string render_shortcut_result(const ShortcutSearchResult& result) {
    std::string out;
    if (result.success()) {
        const ShortcutCertificate& c = *result.certificate;
        out += "status: certificate\n";
        out += "t_anchor: " + format_g17(c.t_anchor) + "\n";
        out += "t_bar: " + format_g17(c.t_bar) + "\n";
        out += "alpha:";
        for (int i = 0; i < 5; ++i) {
            out += ' ';
            out += format_g17(c.alpha[i]);
        }
        out += '\n';
        out += "residual: " + format_g17(c.residual) + "\n";
        out += "iterations: " + std::to_string(c.iterations) + "\n";
    } else {
        out += std::string("status: ") +
               (result.failure == ShortcutSearchResult::Failure::rank_deficient
                    ? "rank_deficient"
                    : "no_convergence") +
               "\n";
        out += "residual: " + format_g17(result.residual) + "\n";
        out += "iterations: " + std::to_string(result.iterations) + "\n";
    }
    out += "jacobian_ratio: " + format_g17(result.jacobian_ratio) + "\n";
    return out;
}

std::string render_break_report(const std::array<BreakJump, 5>& jumps, double tol) {
    std::string out;
    for (const auto& j : jumps) {
        const double contact_jump =
            std::max((j.left.u - j.right.u).lpNorm<Eigen::Infinity>(),
                     (j.left.v - j.right.v).lpNorm<Eigen::Infinity>());
        const bool eq = equivalent(j.left, j.right, tol);
        out += "break t=" + format_g17(j.time) + " angle=" + format_g17(j.gauge_angle) +
               " contact_jump=" + format_g17(contact_jump) +
               " equivalent=" + (eq ? "true" : "false") + "\n";
    }
    return out;
}

void atomic_write_file(const std::filesystem::path& target, std::string_view content) {
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw validation_error("atomic_write_file: cannot open " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw validation_error("atomic_write_file: write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace rollgeo
