#include "fdfsi/flow_solver.hpp"

#include <sstream>
#include <stdexcept>

#include "fdfsi/advection.hpp"
#include "fdfsi/operators.hpp"

namespace fdfsi {

FaceField face_density(const CellField& phi, const CellField& psi, const MaterialTable& table,
                       const Grid& g, bool include_solid) {
    const double w = table.smear_width(g);
    FaceField r(g);
    auto blend = [&](double ph, double ps) {
        const double rf = blend_flow(ph, table.rho_l, table.rho_g, w);
        return include_solid ? blend_full(rf, ps, table.rho_s, w) : rf;
    };
    for (int j = -kGhost; j < g.ny + kGhost; ++j)
        for (int i = -kGhost + 1; i < g.nx + kGhost; ++i)
            r.u(i, j) = blend(0.5 * (phi(i - 1, j) + phi(i, j)), 0.5 * (psi(i - 1, j) + psi(i, j)));
    for (int j = -kGhost; j < g.ny + kGhost; ++j) {
        r.u(-kGhost, j) = r.u(-kGhost + 1, j);
        r.u(g.nx + kGhost, j) = r.u(g.nx + kGhost - 1, j);
    }
    for (int j = -kGhost + 1; j < g.ny + kGhost; ++j)
        for (int i = -kGhost; i < g.nx + kGhost; ++i)
            r.v(i, j) = blend(0.5 * (phi(i, j - 1) + phi(i, j)), 0.5 * (psi(i, j - 1) + psi(i, j)));
    for (int i = -kGhost; i < g.nx + kGhost; ++i) {
        r.v(i, -kGhost) = r.v(i, -kGhost + 1);
        r.v(i, g.ny + kGhost) = r.v(i, g.ny + kGhost - 1);
    }
    return r;
}

FaceField assemble_gravity_force(const FaceField& rho_flow, const FaceField& rho_full,
                                 GravityMode mode, std::array<double, 2> gravity, const Grid& g) {
    const FaceField& rho = (mode == GravityMode::Full) ? rho_full : rho_flow;
    FaceField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) f.u(i, j) = rho.u(i, j) * gravity[0];
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.v(i, j) = rho.v(i, j) * gravity[1];
    return f;
}

void extrapolate_cycle_velocities(const FaceField& u_n, const FaceField& u_prev,
                                  const FaceField& u_k, int cycle, const Grid& g, FaceField& u1,
                                  FaceField& u2) {
    auto combine = [&](double c_k, double c_n, double c_p, FaceField& out) {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i <= g.nx; ++i)
                out.u(i, j) = c_k * u_k.u(i, j) + c_n * u_n.u(i, j) + c_p * u_prev.u(i, j);
        for (int j = 0; j <= g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                out.v(i, j) = c_k * u_k.v(i, j) + c_n * u_n.v(i, j) + c_p * u_prev.v(i, j);
        fill_velocity_ghosts(out, g);
    };
    if (cycle == 0) {
        combine(0.0, 2.0, -1.0, u1);
        combine(0.0, 1.5, -0.5, u2);
    } else {
        combine(1.0, 0.0, 0.0, u1);
        combine(3.0 / 8.0, 3.0 / 4.0, -1.0 / 8.0, u2);
    }
}

namespace {

/// Neumann-style fill for face-centered scalars (densities): boundary faces
/// copy their neighbors, ghosts mirror; periodic axes wrap.
void fill_face_scalar_ghosts(FaceField& f, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    if (g.bc_x == AxisBc::Wall) {
        for (int j = 0; j < ny; ++j) {
            f.u(0, j) = f.u(1, j);
            f.u(nx, j) = f.u(nx - 1, j);
            for (int m = 1; m <= kGhost; ++m) {
                f.u(-m, j) = f.u(m, j);
                f.u(nx + m, j) = f.u(nx - m, j);
            }
        }
    } else {
        for (int j = 0; j < ny; ++j) {
            f.u(nx, j) = f.u(0, j);
            for (int m = 1; m <= kGhost; ++m) {
                f.u(-m, j) = f.u(nx - m, j);
                f.u(nx + m, j) = f.u(m, j);
            }
        }
    }
    for (int i = -kGhost; i <= nx + kGhost; ++i) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_y == AxisBc::Periodic) {
                f.u(i, -m) = f.u(i, ny - m);
                f.u(i, ny - 1 + m) = f.u(i, m - 1);
            } else {
                f.u(i, -m) = f.u(i, m - 1);
                f.u(i, ny - 1 + m) = f.u(i, ny - m);
            }
        }
    }
    if (g.bc_y == AxisBc::Wall) {
        for (int i = 0; i < nx; ++i) {
            f.v(i, 0) = f.v(i, 1);
            f.v(i, ny) = f.v(i, ny - 1);
            for (int m = 1; m <= kGhost; ++m) {
                f.v(i, -m) = f.v(i, m);
                f.v(i, ny + m) = f.v(i, ny - m);
            }
        }
    } else {
        for (int i = 0; i < nx; ++i) {
            f.v(i, ny) = f.v(i, 0);
            for (int m = 1; m <= kGhost; ++m) {
                f.v(i, -m) = f.v(i, ny - m);
                f.v(i, ny + m) = f.v(i, m);
            }
        }
    }
    for (int j = -kGhost; j <= ny + kGhost; ++j) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_x == AxisBc::Periodic) {
                f.v(-m, j) = f.v(nx - m, j);
                f.v(nx - 1 + m, j) = f.v(m - 1, j);
            } else {
                f.v(-m, j) = f.v(m - 1, j);
                f.v(nx - 1 + m, j) = f.v(nx - m, j);
            }
        }
    }
}

/// Flux divergence of a face-centered scalar on the staggered momentum control
/// volumes, optionally accumulating the momentum flux with the same advective
/// velocity and limited density. Writes DOF faces of out_r (and out_c).
void face_transport_rhs(const Grid& g, const FaceField& adv, const FaceField& s,
                        const FaceField* vel, FaceField& out_r, FaceField* out_c) {
    const int nx = g.nx, ny = g.ny;
    const double dx = g.dx, dy = g.dy;

    // x-component control volumes
    {
        // x-direction fluxes live at cell centers; cell i sits between faces i, i+1
        std::vector<double> fr(nx + 2), fc(nx + 2);  // index shift: cell i -> fr[i+1]
        std::vector<double> gr_prev(nx + 1), gc_prev(nx + 1), gr(nx + 1), gc(nx + 1);
        auto node_row = [&](int j, std::vector<double>& r_out, std::vector<double>& c_out) {
            for (int i = (g.bc_x == AxisBc::Wall ? 1 : 0); i <= nx - 1; ++i) {
                const double va = 0.5 * (adv.v(i - 1, j) + adv.v(i, j));
                double rf, uf = 0.0;
                if (va >= 0.0) {
                    rf = cui_face_value(s.u(i, j - 2), s.u(i, j - 1), s.u(i, j));
                    if (vel) uf = cui_face_value(vel->u(i, j - 2), vel->u(i, j - 1), vel->u(i, j));
                } else {
                    rf = cui_face_value(s.u(i, j + 1), s.u(i, j), s.u(i, j - 1));
                    if (vel) uf = cui_face_value(vel->u(i, j + 1), vel->u(i, j), vel->u(i, j - 1));
                }
                r_out[i] = va * rf;
                c_out[i] = va * rf * uf;
            }
        };
        node_row(0, gr_prev, gc_prev);
        for (int j = 0; j < ny; ++j) {
            for (int i = -1; i <= nx; ++i) {
                const double ua = 0.5 * (adv.u(i, j) + adv.u(i + 1, j));
                double rf, uf = 0.0;
                if (ua >= 0.0) {
                    rf = cui_face_value(s.u(i - 1, j), s.u(i, j), s.u(i + 1, j));
                    if (vel) uf = cui_face_value(vel->u(i - 1, j), vel->u(i, j), vel->u(i + 1, j));
                } else {
                    rf = cui_face_value(s.u(i + 2, j), s.u(i + 1, j), s.u(i, j));
                    if (vel) uf = cui_face_value(vel->u(i + 2, j), vel->u(i + 1, j), vel->u(i, j));
                }
                fr[i + 1] = ua * rf;
                fc[i + 1] = ua * rf * uf;
            }
            node_row(j + 1, gr, gc);
            for (int i = (g.bc_x == AxisBc::Wall ? 1 : 0); i <= nx - 1; ++i) {
                out_r.u(i, j) = (fr[i + 1] - fr[i]) / dx + (gr[i] - gr_prev[i]) / dy;
                if (out_c) out_c->u(i, j) = (fc[i + 1] - fc[i]) / dx + (gc[i] - gc_prev[i]) / dy;
            }
            std::swap(gr, gr_prev);
            std::swap(gc, gc_prev);
        }
    }

    // y-component control volumes (mirror of the above)
    {
        std::vector<double> fr(nx + 1), fc(nx + 1);  // node fluxes along x, node i in [0,nx]
        std::vector<double> gr_prev(nx), gc_prev(nx), gr(nx), gc(nx);
        auto center_row = [&](int j, std::vector<double>& r_out, std::vector<double>& c_out) {
            // y-direction fluxes at cell centers: cell j sits between faces j, j+1
            for (int i = 0; i < nx; ++i) {
                const double va = 0.5 * (adv.v(i, j) + adv.v(i, j + 1));
                double rf, vf = 0.0;
                if (va >= 0.0) {
                    rf = cui_face_value(s.v(i, j - 1), s.v(i, j), s.v(i, j + 1));
                    if (vel) vf = cui_face_value(vel->v(i, j - 1), vel->v(i, j), vel->v(i, j + 1));
                } else {
                    rf = cui_face_value(s.v(i, j + 2), s.v(i, j + 1), s.v(i, j));
                    if (vel) vf = cui_face_value(vel->v(i, j + 2), vel->v(i, j + 1), vel->v(i, j));
                }
                r_out[i] = va * rf;
                c_out[i] = va * rf * vf;
            }
        };
        const int jlo = (g.bc_y == AxisBc::Wall) ? 1 : 0;
        center_row(jlo - 1, gr_prev, gc_prev);
        for (int j = jlo; j <= ny - 1; ++j) {
            for (int i = 0; i <= nx; ++i) {
                const double ua = 0.5 * (adv.u(i, j - 1) + adv.u(i, j));
                double rf, vf = 0.0;
                if (ua >= 0.0) {
                    rf = cui_face_value(s.v(i - 2, j), s.v(i - 1, j), s.v(i, j));
                    if (vel) vf = cui_face_value(vel->v(i - 2, j), vel->v(i - 1, j), vel->v(i, j));
                } else {
                    rf = cui_face_value(s.v(i + 1, j), s.v(i, j), s.v(i - 1, j));
                    if (vel) vf = cui_face_value(vel->v(i + 1, j), vel->v(i, j), vel->v(i - 1, j));
                }
                fr[i] = ua * rf;
                fc[i] = ua * rf * vf;
            }
            center_row(j, gr, gc);
            for (int i = 0; i < nx; ++i) {
                out_r.v(i, j) = (fr[i + 1] - fr[i]) / dx + (gr[i] - gr_prev[i]) / dy;
                if (out_c) out_c->v(i, j) = (fc[i + 1] - fc[i]) / dx + (gc[i] - gc_prev[i]) / dy;
            }
            std::swap(gr, gr_prev);
            std::swap(gc, gc_prev);
        }
    }
}

void check_stage_cfl(const FaceField& u, const Grid& g, double dt, const char* stage) {
    const double c = cfl_number(u, g, dt);
    if (c > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "ssp_rk3_density_and_convection: stage " << stage << " CFL " << c << " exceeds 0.5";
        throw std::runtime_error(msg.str());
    }
}

}  // namespace

void ssp_rk3_density_and_convection(const FaceField& rho_n, const FaceField& u_n,
                                    const FaceField& u1, const FaceField& u2, double dt,
                                    const Grid& g, FaceField& rho_breve, FaceField& conv) {
    check_stage_cfl(u_n, g, dt, "u^n");
    check_stage_cfl(u1, g, dt, "u^(1)");
    check_stage_cfl(u2, g, dt, "u^(2)");

    FaceField rhs(g), stage(g);

    // stage 1: rho^(1) = rho^n - dt R(u^n, rho^n)
    face_transport_rhs(g, u_n, rho_n, nullptr, rhs, nullptr);
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            stage.u(i, j) = rho_n.u(i, j) - dt * rhs.u(i, j);
        else
            stage.v(i, j) = rho_n.v(i, j) - dt * rhs.v(i, j);
    });
    fill_face_scalar_ghosts(stage, g);

    // stage 2: rho^(2) = 3/4 rho^n + 1/4 rho^(1) - 1/4 dt R(u^(1), rho^(1))
    face_transport_rhs(g, u1, stage, nullptr, rhs, nullptr);
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            stage.u(i, j) = 0.75 * rho_n.u(i, j) + 0.25 * stage.u(i, j) - 0.25 * dt * rhs.u(i, j);
        else
            stage.v(i, j) = 0.75 * rho_n.v(i, j) + 0.25 * stage.v(i, j) - 0.25 * dt * rhs.v(i, j);
    });
    fill_face_scalar_ghosts(stage, g);

    // stage 3 shares the advective velocity and limited density with the
    // convective momentum flux
    face_transport_rhs(g, u2, stage, &u2, rhs, &conv);
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            rho_breve.u(i, j) =
                rho_n.u(i, j) / 3.0 + 2.0 / 3.0 * stage.u(i, j) - 2.0 / 3.0 * dt * rhs.u(i, j);
        else
            rho_breve.v(i, j) =
                rho_n.v(i, j) / 3.0 + 2.0 / 3.0 * stage.v(i, j) - 2.0 / 3.0 * dt * rhs.v(i, j);
    });
    fill_face_scalar_ghosts(rho_breve, g);
}

FlowSolver::FlowSolver(const Grid& g)
    : grid_(g), helmholtz_(g), poisson_(g), a_(g), rhs_(g), beta_(g), dp_(g.nx, g.ny) {}

MomentumSolveResult FlowSolver::momentum_solve(const MomentumInputs& in, FaceField& u,
                                               CellField& p) {
    const Grid& g = grid_;
    if (in.theta != 0.0 && (!in.chi_over_k || !in.u_target))
        throw std::invalid_argument("momentum_solve: theta=1 requires chi_over_k and u_target");

    fill_cell_ghosts(p, g);
    FaceField gradp = gradient(p, g);

    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0) {
            const double pen = in.theta != 0.0 ? in.theta * in.chi_over_k->u(i, j) : 0.0;
            a_.u(i, j) = in.rho_breve->u(i, j) / in.dt + pen;
            rhs_.u(i, j) = in.rho_n->u(i, j) * in.u_n->u(i, j) / in.dt - in.conv->u(i, j) +
                           0.5 * in.lmu_un->u(i, j) + in.body_force->u(i, j) - gradp.u(i, j) +
                           (in.theta != 0.0 ? pen * in.u_target->u(i, j) : 0.0);
            beta_.u(i, j) = 1.0 / a_.u(i, j);
        } else {
            const double pen = in.theta != 0.0 ? in.theta * in.chi_over_k->v(i, j) : 0.0;
            a_.v(i, j) = in.rho_breve->v(i, j) / in.dt + pen;
            rhs_.v(i, j) = in.rho_n->v(i, j) * in.u_n->v(i, j) / in.dt - in.conv->v(i, j) +
                           0.5 * in.lmu_un->v(i, j) + in.body_force->v(i, j) - gradp.v(i, j) +
                           (in.theta != 0.0 ? pen * in.u_target->v(i, j) : 0.0);
            beta_.v(i, j) = 1.0 / a_.v(i, j);
        }
    });
    enforce_velocity_bc(beta_, g);  // periodic aliases for the Poisson coefficients

    MomentumSolveResult result;
    HelmholtzCoefficients coeff{&a_, in.mu, in.mu_node};
    result.helmholtz = helmholtz_.solve(coeff, rhs_, u, in.helmholtz_rtol);

    // incremental projection: div(beta grad dp) = div u*
    CellField div = divergence(u, g);
    result.poisson = poisson_.solve(div, dp_, in.poisson_rtol, in.poisson_atol);
    result.div_tolerance = std::max(in.poisson_rtol * max_abs_cell(div), in.poisson_atol);

    fill_cell_ghosts(dp_, g);
    FaceField graddp = gradient(dp_, g);
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            u.u(i, j) -= beta_.u(i, j) * graddp.u(i, j);
        else
            u.v(i, j) -= beta_.v(i, j) * graddp.v(i, j);
    });
    enforce_velocity_bc(u, g);
    fill_velocity_ghosts(u, g);

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) p(i, j) += dp_(i, j);
    fill_cell_ghosts(p, g);

    CellField div_after = divergence(u, g);
    result.div_residual = max_abs_cell(div_after);
    return result;
}

}  // namespace fdfsi
