#include "ddfv/properties.hpp"

#include "ddfv/ddfv_mesh.hpp"
#include "ddfv/operators.hpp"
#include "ddfv/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

namespace ddfv {

namespace {

struct NamedMesh {
    std::string name;
    DDFVMesh mesh;
};

std::vector<NamedMesh> suite_meshes()
{
    std::vector<NamedMesh> out;
    out.push_back({"uniform-3", build_ddfv(gen_uniform_quad(3))});
    out.push_back({"uniform-8", build_ddfv(gen_uniform_quad(8))});
    out.push_back({"quad-4", build_ddfv(gen_quad_fvca(4))});
    out.push_back({"quad-8", build_ddfv(gen_quad_fvca(8))});
    out.push_back({"kershaw-4", build_ddfv(gen_kershaw(4))});
    out.push_back({"kershaw-8", build_ddfv(gen_kershaw(8))});
    return out;
}

class Checker {
public:
    Checker(std::string name, double tol) { r_.name = std::move(name), r_.tolerance = tol; }
    /// Records a violation measure for one sample on a named mesh.
    void sample(double violation, const std::string& where)
    {
        if (!(violation <= r_.worst) || std::isnan(violation)) {
            r_.worst = violation;
            r_.detail = where;
        }
    }
    PropertyResult result()
    {
        r_.passed = r_.worst <= r_.tolerance;
        return r_;
    }

private:
    PropertyResult r_;
};

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(scale, 1e-300); }

DiscreteField random_field(const DDFVMesh& mesh, std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    DiscreteField f(mesh);
    for (Index i = 0; i < f.size(); ++i)
        f[i] = dist(rng);
    return f;
}

TensorSpec anisotropic() { return TensorSpec::rotated(1.0, 0.1, std::numbers::pi / 6.0); }

} // namespace

bool PropertyReport::all_passed() const
{
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::string PropertyReport::format() const
{
    std::string out;
    char buf[256];
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "[%s] %-34s worst=%.3e tol=%.1e  %s\n", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.worst, r.tolerance, r.detail.c_str());
        out += buf;
    }
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    std::snprintf(buf, sizeof buf, "seed %llu: %zu properties, %ld failed\n", static_cast<unsigned long long>(seed),
                  results.size(), static_cast<long>(failed));
    out += buf;
    return out;
}

PropertyReport run_property_suite(std::uint64_t seed)
{
    PropertyReport report;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto meshes = suite_meshes();

    {
        Checker c("partition identities", 1e-12);
        for (const auto& [name, m] : meshes) {
            const double area = m.domain_area();
            double sk = 0.0, sks = 0.0, sd = 0.0, so = 0.0;
            for (Index k = 0; k < m.num_primal(); ++k)
                sk += m.measure(k);
            for (Index i = m.dual_offset(); i < m.num_unknowns(); ++i)
                sks += m.measure(i);
            for (const auto& d : m.diamonds())
                sd += d.m_d;
            for (const auto& o : m.overlaps())
                so += o.area;
            c.sample(std::max({rel(sk, 1.0, area), rel(sks, area, area), rel(sd, area, area), rel(so, area, area)}),
                     name);
        }
        report.results.push_back(c.result());
    }
    {
        Checker c("diamond area formula", 1e-12);
        Checker q("quarter diamond consistency", 1e-12);
        Checker b("direct orthonormal bases", 1e-12);
        Checker s("sin(alpha) >= 1/theta_D", 1e-12);
        for (const auto& [name, m] : meshes) {
            for (const auto& d : m.diamonds()) {
                c.sample(rel(d.m_d, 0.5 * d.m_sigma * d.m_sigma_star * d.sin_alpha, d.m_d), name);
                const double primal_split = d.boundary ? d.m_dk : d.m_dk + d.m_dl;
                q.sample(std::max(rel(primal_split, d.m_d, d.m_d), rel(d.m_dks + d.m_dls, d.m_d, d.m_d)), name);
                b.sample(std::max({std::abs(norm(d.n_sigma_k) - 1.0), std::abs(norm(d.tau_ks_ls) - 1.0),
                                   std::abs(norm(d.n_sigma_star_k) - 1.0), std::abs(norm(d.tau_k_l) - 1.0),
                                   std::abs(dot(d.tau_ks_ls, d.n_sigma_k)), std::abs(dot(d.n_sigma_star_k, d.tau_k_l)),
                                   std::abs(cross(d.tau_ks_ls, d.n_sigma_k) - 1.0),
                                   std::abs(cross(d.n_sigma_star_k, d.tau_k_l) - 1.0)}),
                         name);
                const double theta =
                    (d.m_sigma / d.m_sigma_star + d.m_sigma_star / d.m_sigma) / (2.0 * d.sin_alpha);
                s.sample(std::max(0.0, 1.0 / theta - d.sin_alpha), name);
            }
        }
        report.results.push_back(c.result());
        report.results.push_back(q.result());
        report.results.push_back(b.result());
        report.results.push_back(s.result());
    }
    {
        Checker c("discrete duality", 1e-12);
        for (const auto& [name, m] : meshes) {
            for (int trial = 0; trial < 20; ++trial) {
                DiamondVectors xi(m.num_diamonds());
                for (auto& v : xi)
                    v = {unit(rng), unit(rng)};
                DiscreteField v = random_field(m, rng, -1.0, 1.0);
                for (Index i = 0; i < v.size(); ++i)
                    if (m.is_boundary(i) || m.is_boundary_dual(i))
                        v[i] = 0.0;
                const double lhs = bracket_t(m, divergence(m, xi), v);
                const auto gv = grad_d(m, v);
                double rhs = 0.0, scale = 0.0;
                for (Index d = 0; d < xi.size(); ++d) {
                    rhs -= m.diamond(d).m_d * dot(xi[d], gv[d]);
                    scale += m.diamond(d).m_d * norm(xi[d]) * norm(gv[d]);
                }
                c.sample(rel(lhs, rhs, scale), name);
            }
        }
        report.results.push_back(c.result());
    }
    {
        Checker c("gradient affine exactness", 1e-12);
        Checker s("gradient sin/area forms agree", 1e-12);
        for (const auto& [name, m] : meshes) {
            for (int trial = 0; trial < 10; ++trial) {
                const Vec2 a{unit(rng), unit(rng)};
                const double b = unit(rng);
                DiscreteField u(m);
                for (Index i = 0; i < u.size(); ++i)
                    u[i] = dot(a, m.center(i)) + b;
                const auto g = grad_d(m, u);
                for (Index d = 0; d < g.size(); ++d) {
                    c.sample(norm(g[d] - a) / (1.0 + norm(a)), name);
                    const auto& dm = m.diamond(d);
                    const Vec2 gs = grad_diamond_sin(dm, u[dm.k], u[dm.l], u[dm.ks], u[dm.ls]);
                    s.sample(norm(gs - g[d]) / (1.0 + norm(g[d])), name);
                }
            }
        }
        report.results.push_back(c.result());
        report.results.push_back(s.result());
    }
    {
        Checker c("local matrix identity", 1e-12);
        Checker ab("A <= B quadratic forms", 1e-12);
        Checker cond("condition number bound", 0.0);
        const TensorSpec lambda = anisotropic();
        std::normal_distribution<double> gauss;
        for (const auto& [name, m] : meshes) {
            const auto local = local_matrices(m, lambda);
            for (int trial = 0; trial < 5; ++trial) {
                const DiscreteField u = random_field(m, rng, -1.0, 1.0);
                const DiscreteField v = random_field(m, rng, -1.0, 1.0);
                double lhs = 0.0, scale = 0.0;
                for (Index d = 0; d < local.size(); ++d) {
                    const auto du = delta(m.diamond(d), u);
                    const auto dv = delta(m.diamond(d), v);
                    lhs += local[d].form(du, dv);
                    scale += std::abs(local[d].form(du, dv));
                }
                const double rhs = inner_lambda(m, lambda, grad_d(m, u), grad_d(m, v));
                c.sample(rel(lhs, rhs, scale), name);
            }
            const double bound = 4.0 * std::pow(quality(m).theta_star, 2) * lambda.lambda_max() / lambda.lambda_min();
            for (const auto& a : local) {
                const auto b = a.dominant_diagonal();
                for (int trial = 0; trial < 100; ++trial) {
                    const std::array<double, 2> w{gauss(rng), gauss(rng)};
                    const double bw = b.form(w, w);
                    ab.sample(std::max(0.0, a.form(w, w) - bw) / bw, name);
                }
                cond.sample(a.cond2() < bound ? 0.0 : a.cond2() / bound, name);
            }
        }
        report.results.push_back(c.result());
        report.results.push_back(ab.result());
        report.results.push_back(cond.result());
    }
    {
        Checker c("penalization symmetric, nonnegative", 1e-12);
        for (const auto& [name, m] : meshes) {
            for (int trial = 0; trial < 10; ++trial) {
                const DiscreteField u = random_field(m, rng, -1.0, 1.0);
                const DiscreteField v = random_field(m, rng, -1.0, 1.0);
                const double uv = penalization_bracket(m, u, v, 1.0);
                const double vu = penalization_bracket(m, v, u, 1.0);
                const double uu = penalization_bracket(m, u, u, 1.0);
                const double via_operator = bracket_t(m, penalize(m, u, 1.0), v);
                const double scale = std::max(uu, 1e-300);
                c.sample(std::max({rel(uv, vu, scale), rel(uv, via_operator, scale), std::max(0.0, -uu / scale)}),
                         name);
            }
        }
        report.results.push_back(c.result());
    }

    // scheme-level identities on small meshes
    const std::vector<NamedMesh> small = [] {
        std::vector<NamedMesh> s;
        s.push_back({"quad-3", build_ddfv(gen_quad_fvca(3))});
        s.push_back({"kershaw-4", build_ddfv(gen_kershaw(4))});
        return s;
    }();
    SchemeParams params;
    params.dt = 0.01;
    params.t_final = 0.1;
    params.kappa = 0.5;
    params.beta = 1.0;
    params.lambda = anisotropic();
    {
        Checker c("jacobian vs finite differences", 1e-6);
        for (const auto& [name, m] : small) {
            const DiscreteField pot = project_potential(m, [](const Point& x) { return -x.y + 0.3 * x.x * x.x; });
            const Scheme scheme(m, params, pot);
            const DiscreteField u = random_field(m, rng, 0.5, 2.0);
            const DiscreteField u_prev = random_field(m, rng, 0.5, 2.0);
            for (bool per_cell : {false, true}) {
                const auto eval = [&](const DiscreteField& x) {
                    return per_cell ? scheme.residual(u_prev, x) : scheme.variational_residual(u_prev, x);
                };
                const Eigen::MatrixXd jac(per_cell ? scheme.jacobian(u) : scheme.variational_jacobian(u));
                for (Index j = 0; j < u.size(); ++j) {
                    const double step = 1e-6 * u[j];
                    DiscreteField up = u, um = u;
                    up[j] += step;
                    um[j] -= step;
                    const DiscreteField fp = eval(up), fm = eval(um);
                    for (Index i = 0; i < u.size(); ++i) {
                        const double fd = (fp[i] - fm[i]) / (2.0 * step);
                        const double an = jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                        c.sample(std::abs(an - fd) / (1.0 + std::abs(an)), name + (per_cell ? " per-cell" : ""));
                    }
                }
            }
        }
        report.results.push_back(c.result());
    }
    {
        Checker c("residual/variational equivalence", 1e-12);
        for (const auto& [name, m] : small) {
            const DiscreteField pot = project_potential(m, [](const Point& x) { return -x.y; });
            const Scheme scheme(m, params, pot);
            const DiscreteField u = random_field(m, rng, 0.5, 2.0);
            const DiscreteField u_prev = random_field(m, rng, 0.5, 2.0);
            const DiscreteField f = scheme.variational_residual(u_prev, u);
            const DiscreteField r = scheme.residual(u_prev, u);
            const DiscreteField g = scheme.chemical_potential(u);
            DiscreteField du(m);
            for (Index i = 0; i < u.size(); ++i)
                du[i] = (u[i] - u_prev[i]) / params.dt;
            for (int trial = 0; trial < 10; ++trial) {
                const DiscreteField psi = random_field(m, rng, -1.0, 1.0);
                const double variational = bracket_t(m, du, psi) + scheme.flux_form(u, g, psi) +
                                           params.kappa * penalization_bracket(m, g, psi, params.beta);
                double tested = 0.0, boundary = 0.0, scale = 0.0;
                for (Index i = 0; i < u.size(); ++i) {
                    tested += f[i] * psi[i];
                    scale += std::abs(f[i] * psi[i]);
                    if (m.is_boundary(i))
                        boundary += 0.5 * r[i] * psi[i];
                }
                const double per_cell = bracket_t(m, r, psi) - boundary;
                c.sample(std::max(rel(tested, variational, scale), rel(per_cell, variational, scale)), name);
            }
        }
        report.results.push_back(c.result());
    }
    {
        Checker c("fisher <= I-hat", 1e-12);
        const DDFVMesh m = build_ddfv(gen_quad_fvca(4));
        SchemeParams p = params;
        p.lambda = TensorSpec::identity();
        const Scheme scheme(m, p, DiscreteField(m));
        for (int trial = 0; trial < 100; ++trial) {
            const DiscreteField u = random_field(m, rng, 0.05, 3.0);
            const double fisher = fisher_norm(m, p.lambda, u);
            const double i_hat = dissipation(scheme, u).i_hat;
            c.sample(std::max(0.0, fisher - i_hat) / std::max(i_hat, 1e-300), "quad-4");
        }
        report.results.push_back(c.result());
    }
    {
        Checker c("dissipation sandwich I <= I_B", 1e-12);
        for (const auto& [name, m] : small) {
            const Scheme scheme(m, params, project_potential(m, [](const Point& x) { return -x.y; }));
            for (int trial = 0; trial < 20; ++trial) {
                const Dissipation d = dissipation(scheme, random_field(m, rng, 0.2, 3.0));
                c.sample(std::max({0.0, -d.i, d.i - d.i_b}) / std::max(d.i_b, 1e-300), name);
            }
        }
        report.results.push_back(c.result());
    }
    return report;
}

} // namespace ddfv
