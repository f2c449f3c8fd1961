#include "fdfsi/simulation.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "fdfsi/advection.hpp"
#include "fdfsi/operators.hpp"

namespace fdfsi {

std::string format_timing_report(const TimingReport& r) {
    std::ostringstream out;
    if (!r.enabled) return "timers disabled\n";
    for (int c = 0; c < 4; ++c) {
        out << timer_category_name(static_cast<TimerCategory>(c)) << ": " << r.seconds[c] << " s ("
            << r.fractions[c] * 100.0 << "%)\n";
    }
    out << "total: " << r.total << " s\n";
    return out.str();
}

Simulation::Simulation(const SimulationConfig& cfg)
    : cfg_(cfg), grid_(cfg.nx, cfg.ny, cfg.lx, cfg.ly),
      state_(grid_), phi_(cfg.nx, cfg.ny), psi_(cfg.nx, cfg.ny), flow_solver_(grid_),
      timers_(cfg.timers) {
    if (cfg_.dt <= 0.0) throw std::invalid_argument("Simulation: dt must be positive");
    if (cfg_.n_cycles < 1) throw std::invalid_argument("Simulation: n_cycles must be >= 1");
    if (cfg_.water_depth <= 0.0 || cfg_.water_depth >= cfg_.ly)
        throw std::invalid_argument("Simulation: water_depth must lie inside the domain");

    params_.dt = cfg_.dt;
    params_.n_cycles = cfg_.n_cycles;
    params_.theta_fd = (cfg_.coupling == Coupling::BP && cfg_.body != BodyKind::None) ? 1 : 0;
    params_.gravity = {0.0, -cfg_.gravity};
    params_.gravity_mode = gravity_mode_for(cfg_);
    params_.helmholtz_rtol = cfg_.helmholtz_rtol;
    params_.poisson_rtol = cfg_.poisson_rtol;
    params_.poisson_atol = cfg_.poisson_atol;

    reinit_params_.band_width = cfg_.materials.n_cells + 3;

    // startup CFL estimate from the free-fall terminal velocity
    if (cfg_.body != BodyKind::None) {
        const auto setup = build_body(cfg_);
        const double fall = std::max(setup.state.x_com[1] - cfg_.water_depth, 0.0);
        const double v_est = 1.2 * std::sqrt(2.0 * cfg_.gravity * std::max(fall, 1e-12));
        const double cfl = v_est * cfg_.dt / grid_.min_spacing();
        if (cfl > 0.5) {
            std::ostringstream msg;
            msg << "Simulation: startup CFL estimate " << cfl
                << " exceeds 0.5 (free-fall terminal " << v_est << " m/s)";
            throw std::invalid_argument(msg.str());
        }
    }
    init_fields();
}

void Simulation::init_fields() {
    phi_ = init_signed_distance(HalfPlaneShape{cfg_.water_depth}, grid_);

    if (cfg_.body != BodyKind::None) {
        auto setup = build_body(cfg_);
        ref_shape_ = setup.ref_shape;
        shape_area_ = setup.shape_area;
        body_ = setup.state;
        psi_ = body_psi(body_);
        if (cfg_.coupling == Coupling::IB) {
            markers_ = generate_markers(ref_shape_, {0.0, 0.0}, grid_, cfg_.marker_spacing_factor);
            update_marker_world_positions(markers_, body_);
            marker_ub_old_ =
                rigid_marker_velocities(markers_, body_.u_r, body_.w_r, body_.x_com);
        }
    } else {
        const double far = 10.0 * std::max(cfg_.lx, cfg_.ly);
        psi_ = CellField(cfg_.nx, cfg_.ny, far);
    }

    const auto mats = set_material_properties(phi_, psi_, cfg_.materials, grid_);
    state_.mu = mats.mu;
    state_.rho_face = face_density(phi_, psi_, cfg_.materials, grid_, true);
    state_.rho_breve = state_.rho_face;
    fill_velocity_ghosts(state_.u, grid_);
    fill_velocity_ghosts(state_.u_prev, grid_);
    fill_cell_ghosts(state_.p, grid_);
    initial_liquid_area_ = negative_phase_area(phi_, grid_, cfg_.materials.smear_width(grid_));
}

CellField Simulation::body_psi(const RigidBodyState& pose) const {
    const double a = pose.rotation_angle();
    const double c = std::cos(a), s = std::sin(a);
    CellField f(grid_.nx, grid_.ny);
    for (int j = -kGhost; j < grid_.ny + kGhost; ++j)
        for (int i = -kGhost; i < grid_.nx + kGhost; ++i) {
            const auto cc = grid_.cell_center(i, j);
            const double rx = cc[0] - pose.x_com[0];
            const double ry = cc[1] - pose.x_com[1];
            // rotate into the body frame (inverse rotation)
            f(i, j) = signed_distance(ref_shape_, c * rx + s * ry, -s * rx + c * ry);
        }
    return f;
}

double Simulation::body_lowest_point() const {
    if (cfg_.body == BodyKind::None) return std::numeric_limits<double>::infinity();
    if (std::holds_alternative<CircleShape>(ref_shape_))
        return body_.x_com[1] - std::get<CircleShape>(ref_shape_).radius;
    double low = std::numeric_limits<double>::infinity();
    for (const auto& v : std::get<PolygonShape>(ref_shape_).vertices) {
        const auto w = body_.q.rotate2d(v);
        low = std::min(low, body_.x_com[1] + w[1]);
    }
    return low;
}

double Simulation::liquid_area() const {
    return negative_phase_area(phi_, grid_, cfg_.materials.smear_width(grid_));
}

ForceTorque Simulation::eval_bp_force(const RigidBodyState& pose) const {
    const auto surface = extract_stairstep_surface(psi_, grid_);
    return hydrodynamic_force_torque(state_.p, state_.u, state_.mu, surface, grid_, pose.x_com);
}

void Simulation::update_penalization_diag(const FaceField& u_new, const FaceField& chi_face,
                                          const FaceField& u_target) {
    double worst = 0.0;
    for_each_velocity_dof(grid_, [&](int comp, int i, int j) {
        const double chi = (comp == 0) ? chi_face.u(i, j) : chi_face.v(i, j);
        if (chi < 0.99) return;
        const double ut = (comp == 0) ? u_target.u(i, j) : u_target.v(i, j);
        const double uu = (comp == 0) ? u_new.u(i, j) : u_new.v(i, j);
        const double ratio = std::abs(uu - ut) / (1e-4 * std::max(1.0, std::abs(ut)));
        worst = std::max(worst, ratio);
    });
    max_penalization_ratio_ = std::max(max_penalization_ratio_, worst);
}

void Simulation::step() {
    try {
        auto total = timers_.total_scope();
        do_step();
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "step " << step_count_ + 1 << " (t=" << time_ << "): " << e.what();
        throw std::runtime_error(msg.str());
    }
    ++step_count_;
    time_ += params_.dt;
    first_step_ = false;
}

void Simulation::do_step() {
    const Grid& g = grid_;
    const double dt = params_.dt;
    const bool has_b = cfg_.body != BodyKind::None;
    const bool bp = cfg_.coupling == Coupling::BP;

    // ---- start-of-step (time level n) quantities
    const FaceField u_n = state_.u;
    const FaceField& u_prev = first_step_ ? u_n : state_.u_prev;
    const CellField phi_n = phi_;
    const RigidBodyState body_n = body_;

    FaceField lmu_un(g);
    {
        auto t = timers_.scope(TimerCategory::InsSolver);
        state_.rho_face = face_density(phi_, psi_, cfg_.materials, g, true);
        const auto mats_n = set_material_properties(phi_, psi_, cfg_.materials, g);
        const NodeField mu_n_node = cell_to_node(mats_n.mu, g);
        lmu_un = viscous_operator(u_n, mats_n.mu, mu_n_node, g);
        state_.mu = mats_n.mu;
    }

    if (has_b && !bp) {
        auto t = timers_.scope(TimerCategory::FsiCorrection);
        update_marker_world_positions(markers_, body_n);
        marker_ub_old_ = rigid_marker_velocities(markers_, body_n.u_r, body_n.w_r, body_n.x_com);
    }

    const CellField psi_n = psi_;

    FaceField u_k = state_.u;
    CellField phi_k = phi_;
    RigidBodyState body_k = body_;

    FaceField u1(g), u2(g), conv(g);
    FaceField chi_over_k(g), chi_face(g), u_target(g);
    MaterialFields mat;
    NodeField mu_node;
    MomentumSolveResult mres;

    for (int k = 0; k < params_.n_cycles; ++k) {
        // (a) level-set advection with midpoint velocity and field
        {
            auto t = timers_.scope(TimerCategory::LevelSetUpdate);
            FaceField u_mid(g);
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i <= g.nx; ++i)
                    u_mid.u(i, j) = 0.5 * (u_k.u(i, j) + u_n.u(i, j));
            for (int j = 0; j <= g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    u_mid.v(i, j) = 0.5 * (u_k.v(i, j) + u_n.v(i, j));
            fill_velocity_ghosts(u_mid, g);
            const double cfl = cfl_number(u_mid, g, dt);
            if (cfl > 0.5 + 1e-12) {
                std::ostringstream msg;
                msg << "level-set advection CFL " << cfl << " exceeds 0.5";
                throw std::runtime_error(msg.str());
            }

            CellField phi_mid(g.nx, g.ny);
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    phi_mid(i, j) = 0.5 * (phi_k(i, j) + phi_n(i, j));
            fill_cell_ghosts(phi_mid, g);
            const CellField q = advection_flux_divergence(u_mid, phi_mid, g);
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) phi_k(i, j) = phi_n(i, j) - dt * q(i, j);

            if (has_b && cfg_.psi_numeric) {
                CellField psi_mid(g.nx, g.ny);
                for (int j = 0; j < g.ny; ++j)
                    for (int i = 0; i < g.nx; ++i)
                        psi_mid(i, j) = 0.5 * (psi_(i, j) + psi_n(i, j));
                fill_cell_ghosts(psi_mid, g);
                const CellField qp = advection_flux_divergence(u_mid, psi_mid, g);
                for (int j = 0; j < g.ny; ++j)
                    for (int i = 0; i < g.nx; ++i) psi_(i, j) = psi_n(i, j) - dt * qp(i, j);
                reinitialize(psi_, reinit_params_, g);
            }

            // (c) reinitialize phi
            reinitialize(phi_k, reinit_params_, g);
        }

        // FD/BP: forces from the (n+1,k) fields drive this cycle's body state
        RigidBodyState body_k1 = body_k;
        if (has_b && bp) {
            {
                auto t = timers_.scope(TimerCategory::FsiCorrection);
                const ForceTorque f = (k == 0) ? force_latest_ : eval_bp_force(body_k);
                body_k1 = integrate_free_motion(body_n, f.force, f.torque, params_.gravity, dt,
                                                time_ + dt);
            }
            if (!cfg_.psi_numeric) {
                auto t = timers_.scope(TimerCategory::LevelSetUpdate);
                psi_ = body_psi(body_k1);  // (b) analytic update from the new pose
            }
        } else if (has_b && !bp && !cfg_.psi_numeric) {
            auto t = timers_.scope(TimerCategory::LevelSetUpdate);
            psi_ = body_psi(body_k);  // (b) latest available pose estimate
        }

        // (d) material properties
        FaceField grav(g);
        {
            auto t = timers_.scope(TimerCategory::InsSolver);
            mat = set_material_properties(phi_k, psi_, cfg_.materials, g);
            mu_node = cell_to_node(mat.mu, g);
            state_.mu = mat.mu;
            const FaceField rho_flow_f = face_density(phi_k, psi_, cfg_.materials, g, false);
            const FaceField rho_full_f = face_density(phi_k, psi_, cfg_.materials, g, true);
            grav = assemble_gravity_force(rho_flow_f, rho_full_f, params_.gravity_mode,
                                          params_.gravity, g);

            // (e) cycle extrapolations and consistent mass/momentum transport
            extrapolate_cycle_velocities(u_n, u_prev, u_k, k, g, u1, u2);
            ssp_rk3_density_and_convection(state_.rho_face, u_n, u1, u2, dt, g, state_.rho_breve,
                                           conv);
        }

        const double theta = (has_b && bp) ? 1.0 : 0.0;
        if (theta != 0.0) {
            auto t = timers_.scope(TimerCategory::FsiCorrection);
            const CellField chi =
                build_chi(psi_, cfg_.materials.n_cells, g, cfg_.chi_binary);
            chi_face = cell_to_face(chi, g);
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i <= g.nx; ++i)
                    chi_over_k.u(i, j) = chi_face.u(i, j) / cfg_.permeability;
            for (int j = 0; j <= g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    chi_over_k.v(i, j) = chi_face.v(i, j) / cfg_.permeability;
            u_target = build_target_velocity(body_k1, g);
        }

        // (f) momentum solve + projection
        {
            auto t = timers_.scope(TimerCategory::InsSolver);
            MomentumInputs in;
            in.rho_n = &state_.rho_face;
            in.rho_breve = &state_.rho_breve;
            in.u_n = &u_n;
            in.conv = &conv;
            in.lmu_un = &lmu_un;
            in.mu = &mat.mu;
            in.mu_node = &mu_node;
            in.body_force = &grav;
            in.chi_over_k = theta != 0.0 ? &chi_over_k : nullptr;
            in.u_target = theta != 0.0 ? &u_target : nullptr;
            in.dt = dt;
            in.theta = theta;
            in.helmholtz_rtol = params_.helmholtz_rtol;
            in.poisson_rtol = params_.poisson_rtol;
            in.poisson_atol = params_.poisson_atol;
            mres = flow_solver_.momentum_solve(in, u_k, state_.p);
        }
        if (theta != 0.0) update_penalization_diag(u_k, chi_face, u_target);
        if (mres.div_tolerance > 0.0)
            max_divergence_ratio_ = std::max(
                max_divergence_ratio_, mres.div_residual / (10.0 * mres.div_tolerance));

        // (g) FD/IB coupling: redistribution, correction, marker update
        if (has_b && !bp) {
            auto t = timers_.scope(TimerCategory::FsiCorrection);
            update_marker_world_positions_midpoint(markers_, body_n, body_k);  // X^{n+1/2,k}
            const std::array<double, 2> com_mid{0.5 * (body_n.x_com[0] + body_k.x_com[0]),
                                                0.5 * (body_n.x_com[1] + body_k.x_com[1])};
            const auto u_interp = interpolate(u_k, g, markers_);

            std::array<double, 2> ur;
            double wr;
            if (cfg_.motion == MotionKind::Prescribed) {
                RigidBodyState tmp = body_n;
                if (tmp.prescribed_velocity) {
                    const auto pv = tmp.prescribed_velocity(time_ + dt);
                    tmp.prescribed_u = {pv[0], pv[1]};
                    tmp.prescribed_w = pv[2];
                }
                ur = tmp.prescribed_u;
                wr = tmp.prescribed_w;
            } else {
                const auto red = momentum_redistribution(u_interp, markers_, cfg_.materials.rho_s,
                                                         com_mid, body_n.locks,
                                                         body_n.prescribed_u, body_n.prescribed_w);
                ur = red.u_r;
                wr = red.w_r;
            }
            const auto u_b = rigid_marker_velocities(markers_, ur, wr, com_mid);
            velocity_correction(u_k, g, markers_, u_b, u_interp);
            enforce_velocity_bc(u_k, g);
            fill_velocity_ghosts(u_k, g);
            marker_du_.resize(markers_.size());
            for (std::size_t l = 0; l < markers_.size(); ++l)
                marker_du_[l] = {u_b[l][0] - u_interp[l][0], u_b[l][1] - u_interp[l][1]};

            // body update: midpoint-velocity position advance from the step start
            body_k1 = body_n;
            body_k1.u_r = ur;
            body_k1.w_r = wr;
            body_k1.x_com[0] = body_n.x_com[0] + dt * 0.5 * (ur[0] + body_n.u_r[0]);
            body_k1.x_com[1] = body_n.x_com[1] + dt * 0.5 * (ur[1] + body_n.u_r[1]);
            body_k1.q = Quaternion::from_z_rotation(dt * 0.5 * (wr + body_n.w_r)) * body_n.q;
            body_k1.q.normalize();
        }

        body_k = body_k1;  // (h) next cycle's midpoint uses this pose estimate
    }

    // ---- accept the cycle results
    state_.u_prev = u_n;
    state_.u = u_k;
    phi_ = phi_k;
    body_ = body_k;
    last_div_res_ = mres.div_residual;

    if (has_b) {
        if (!cfg_.psi_numeric) {
            auto t = timers_.scope(TimerCategory::LevelSetUpdate);
            psi_ = body_psi(body_);  // keep psi synchronized with the accepted pose
        }
        auto t = timers_.scope(TimerCategory::FsiCorrection);
        if (bp) {
            force_latest_ = eval_bp_force(body_);
        } else {
            update_marker_world_positions(markers_, body_);
            const auto u_b_new =
                rigid_marker_velocities(markers_, body_.u_r, body_.w_r, body_.x_com);
            if (marker_du_.empty()) marker_du_.assign(markers_.size(), {0.0, 0.0});
            const auto ft = lagrangian_force_torque(u_b_new, marker_ub_old_, marker_du_, markers_,
                                                    cfg_.materials.rho_s, dt, body_.x_com);
            force_latest_ = {ft.force, ft.torque};
        }
    }

    const double cfl = cfl_number(state_.u, g, dt);
    max_velocity_seen_ = std::max(max_velocity_seen_, max_norm(state_.u, g));
    if (cfl > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "runtime CFL " << cfl << " exceeds 0.5 after step";
        throw std::runtime_error(msg.str());
    }
}

void Simulation::record_state() {
    TimeSeriesRecord r;
    r.t = time_;
    if (cfg_.body != BodyKind::None) {
        r.x = body_.x_com[0];
        r.y = body_.x_com[1];
        r.theta = body_.rotation_angle();
        r.u = body_.u_r[0];
        r.v = body_.u_r[1];
        r.omega = body_.w_r;
        r.fx = force_latest_.force[0];
        r.fy = force_latest_.force[1];
        r.mz = force_latest_.torque;
    }
    r.div_res = last_div_res_;
    records_.push_back(r);
}

void Simulation::run() {
    const double t_end = cfg_.end_time;
    while (time_ < t_end - 1e-12 * std::max(1.0, t_end) &&
           (cfg_.max_steps < 0 || step_count_ < cfg_.max_steps)) {
        step();
        if (step_count_ % cfg_.record_interval == 0) record_state();
        if (cfg_.field_interval > 0 && step_count_ % cfg_.field_interval == 0) {
            std::filesystem::create_directories(cfg_.out_dir);
            std::ostringstream name;
            name << cfg_.out_dir << "/fields_" << step_count_ << ".dat";
            const auto snap = make_snapshot(grid_, time_, state_.u, state_.p, phi_, psi_,
                                            set_material_properties(phi_, psi_, cfg_.materials,
                                                                    grid_)
                                                .rho);
            write_field_dump(name.str(), snap);
        }
    }
    write_outputs();
}

void Simulation::write_outputs() const {
    std::filesystem::create_directories(cfg_.out_dir);
    auto records = records_;
    compute_accelerations(records);
    write_time_series_csv(cfg_.out_dir + "/timeseries.csv", records);
}

}  // namespace fdfsi
