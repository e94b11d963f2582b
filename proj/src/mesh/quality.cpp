#include "ddfv/ddfv_mesh.hpp"
#include "ddfv/operators.hpp"
#include "ddfv/tensor.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace ddfv {

QualityReport quality(const DDFVMesh& mesh, const TensorSpec* lambda)
{
    QualityReport r;
    r.size = mesh.size();
    r.num_cells = mesh.num_primal();
    r.num_boundary_edges = mesh.num_boundary();
    r.num_vertices = mesh.num_dual();
    r.num_diamonds = mesh.num_diamonds();
    r.theta_star = 1.0;
    r.max_theta = 1.0;
    r.max_theta_interior = 1.0;

    for (const auto& d : mesh.diamonds()) {
        const double ratio = d.m_sigma / d.m_sigma_star;
        const double theta = (ratio + 1.0 / ratio) / (2.0 * d.sin_alpha);
        double tilde = std::max({d.m_d / d.m_dk, d.m_d / d.m_dks, d.m_d / d.m_dls});
        if (!d.boundary)
            tilde = std::max(tilde, d.m_d / d.m_dl);
        r.theta.push_back(theta);
        r.theta_tilde.push_back(tilde);
        r.theta_star = std::max({r.theta_star, theta, tilde});
        r.max_theta = std::max(r.max_theta, theta);
        if (!d.boundary)
            r.max_theta_interior = std::max(r.max_theta_interior, theta);
        r.min_sin_alpha = std::min(r.min_sin_alpha, d.sin_alpha);
    }

    if (lambda) {
        double worst = 0.0;
        for (const auto& d : mesh.diamonds())
            worst = std::max(worst, local_matrix(d, lambda->diamond_average(d)).cond2());
        r.max_cond_a = worst;
        r.cond_bound = 4.0 * r.theta_star * r.theta_star * lambda->lambda_max() / lambda->lambda_min();
        r.cond_bound_holds = worst < *r.cond_bound;
    }
    return r;
}

std::string format_quality(const QualityReport& r)
{
    char buf[160];
    std::string out;
    auto line = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%-20s %.6g\n", key, v);
        out += buf;
    };
    auto count = [&](const char* key, std::size_t v) {
        std::snprintf(buf, sizeof buf, "%-20s %zu\n", key, v);
        out += buf;
    };
    count("cells", r.num_cells);
    count("vertices", r.num_vertices);
    count("boundary_edges", r.num_boundary_edges);
    count("diamonds", r.num_diamonds);
    line("h", r.size);
    line("theta_interior_max", r.max_theta_interior);
    line("theta_max", r.max_theta);
    line("theta_star", r.theta_star);
    line("min_sin_alpha", r.min_sin_alpha);
    if (r.max_cond_a) {
        line("max_cond_A", *r.max_cond_a);
        line("cond_bound", *r.cond_bound);
        out += std::string("cond_bound_holds     ") + (r.cond_bound_holds ? "yes" : "no") + "\n";
    }
    return out;
}

} // namespace ddfv
