#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdfsi/flow_solver.hpp"
#include "fdfsi/fsi_bp.hpp"
#include "fdfsi/fsi_ib.hpp"
#include "fdfsi/output.hpp"
#include "fdfsi/scenario.hpp"
#include "fdfsi/timing.hpp"

namespace fdfsi {

/// Fixed-point time loop coupling level-set transport, the conservative
/// momentum solve and the selected FSI scheme. One Simulation instance owns
/// all state; instances are independent and may run on separate threads.
class Simulation {
  public:
    explicit Simulation(const SimulationConfig& cfg);

    /// One full time step (n_cycles fixed-point cycles). Sub-operation errors
    /// abort the step with step/time context attached.
    void step();

    /// Steps until end_time (or max_steps), recording the time series and
    /// periodic field dumps, then writes outputs into cfg.out_dir.
    void run();

    double time() const { return time_; }
    long step_count() const { return step_count_; }
    const Grid& grid() const { return grid_; }
    const SimulationConfig& config() const { return cfg_; }
    const FlowState& flow() const { return state_; }
    FlowState& flow() { return state_; }
    const CellField& phi() const { return phi_; }
    const CellField& psi() const { return psi_; }
    const RigidBodyState& body() const { return body_; }
    bool has_body() const { return cfg_.body != BodyKind::None; }
    const LagrangianMesh& markers() const { return markers_; }
    const std::vector<TimeSeriesRecord>& records() const { return records_; }
    CategoryTimers& timers() { return timers_; }
    TimingReport timing_report() const { return timers_.report(); }

    /// World-frame y of the body's lowest boundary point (impact detection).
    double body_lowest_point() const;
    double initial_liquid_area() const { return initial_liquid_area_; }
    double liquid_area() const;

    /// Largest |u - u_target| / (1e-4 max(1, |u_target|)) seen over all cycles
    /// of all steps on faces with chi >= 0.99 (BP runs only).
    double max_penalization_ratio() const { return max_penalization_ratio_; }
    /// Largest div_residual / (10 * pressure tolerance) seen over the run.
    double max_divergence_ratio() const { return max_divergence_ratio_; }
    double max_velocity_seen() const { return max_velocity_seen_; }

    /// Force/torque on the body evaluated from the latest fields.
    ForceTorque current_body_force() const { return force_latest_; }

    void write_outputs() const;

  private:
    void init_fields();
    void do_step();
    void record_state();
    CellField body_psi(const RigidBodyState& pose) const;
    void sync_markers_midpoint(const RigidBodyState& pose_new);
    ForceTorque eval_bp_force(const RigidBodyState& pose) const;
    void update_penalization_diag(const FaceField& u_new, const FaceField& chi_face,
                                  const FaceField& u_target);

    SimulationConfig cfg_;
    Grid grid_;
    TimeStepParams params_;
    FlowState state_;
    CellField phi_;
    CellField psi_;
    RigidBodyState body_;
    Shape ref_shape_;  // body frame, COM at origin
    double shape_area_ = 0.0;
    double body_low_offset_ = 0.0;  // COM to lowest body point at zero rotation
    LagrangianMesh markers_;
    FlowSolver flow_solver_;
    ReinitParams reinit_params_;
    CategoryTimers timers_;

    // cached between steps: force on the end-of-step fields drives cycle 0
    ForceTorque force_latest_;
    std::vector<std::array<double, 2>> marker_du_;      // last-cycle velocity corrections
    std::vector<std::array<double, 2>> marker_ub_old_;  // U_b at step start

    std::vector<TimeSeriesRecord> records_;
    double time_ = 0.0;
    long step_count_ = 0;
    double initial_liquid_area_ = 0.0;
    double max_penalization_ratio_ = 0.0;
    double max_divergence_ratio_ = 0.0;
    double max_velocity_seen_ = 0.0;
    double last_div_res_ = 0.0;
    bool first_step_ = true;
};

}  // namespace fdfsi
