#pragma once

#include "fdfsi/grid.hpp"
#include "fdfsi/levelset.hpp"
#include "fdfsi/linear_solvers.hpp"

namespace fdfsi {

enum class GravityMode { FlowOnly, Full };

struct TimeStepParams {
    double dt = 0.0;
    int n_cycles = 2;
    int theta_fd = 0;  // 1 keeps the penalization term in the implicit solve
    std::array<double, 2> gravity{0.0, -9.81};
    GravityMode gravity_mode = GravityMode::FlowOnly;
    double helmholtz_rtol = 1e-8;
    double poisson_rtol = 1e-10;
    double poisson_atol = 1e-13;
};

/// Fields evolved by the conservative-form incompressible solver.
struct FlowState {
    FaceField u;          // u^n
    FaceField u_prev;     // u^{n-1} for the cycle extrapolations
    CellField p;          // p^{n-1/2}
    FaceField rho_face;   // level-set synchronized rho^n on faces
    FaceField rho_breve;  // latest SSP-RK3 transported density
    CellField mu;         // latest viscosity on cells

    explicit FlowState(const Grid& g)
        : u(g), u_prev(g), p(g.nx, g.ny), rho_face(g), rho_breve(g), mu(g.nx, g.ny) {}
};

/// Density blended directly on faces from face-averaged level sets.
/// include_solid=false yields the stage-1 ("flow") blend used for gravity.
FaceField face_density(const CellField& phi, const CellField& psi, const MaterialTable& table,
                       const Grid& g, bool include_solid);

/// Gravity body force per unit volume on faces.
FaceField assemble_gravity_force(const FaceField& rho_flow, const FaceField& rho_full,
                                 GravityMode mode, std::array<double, 2> gravity, const Grid& g);

/// Cycle velocity extrapolations for the SSP-RK3 stages: u1 approximates
/// u^{n+1}, u2 approximates u^{n+1/2}.
void extrapolate_cycle_velocities(const FaceField& u_n, const FaceField& u_prev,
                                  const FaceField& u_k, int cycle, const Grid& g, FaceField& u1,
                                  FaceField& u2);

/// Three-stage SSP-RK3 update of the face density with CUI-limited fluxes.
/// The convective momentum term C is assembled from the same stage-3 advective
/// velocity and limited density, which couples mass and momentum transport.
void ssp_rk3_density_and_convection(const FaceField& rho_n, const FaceField& u_n,
                                    const FaceField& u1, const FaceField& u2, double dt,
                                    const Grid& g, FaceField& rho_breve, FaceField& conv);

struct MomentumInputs {
    const FaceField* rho_n = nullptr;
    const FaceField* rho_breve = nullptr;
    const FaceField* u_n = nullptr;
    const FaceField* conv = nullptr;
    const FaceField* lmu_un = nullptr;  // L_{mu^n} u^n, added with weight 1/2
    const CellField* mu = nullptr;
    const NodeField* mu_node = nullptr;
    const FaceField* body_force = nullptr;
    const FaceField* chi_over_k = nullptr;  // required when theta = 1
    const FaceField* u_target = nullptr;    // required when theta = 1
    double dt = 0.0;
    double theta = 0.0;
    double helmholtz_rtol = 1e-8;
    double poisson_rtol = 1e-10;
    double poisson_atol = 1e-13;
};

struct MomentumSolveResult {
    SolveStats helmholtz;
    SolveStats poisson;
    double div_residual = 0.0;   // max-norm of div u after projection
    double div_tolerance = 0.0;  // pressure tolerance actually applied
};

/// Implicit Helmholtz solve of the discrete momentum equation followed by an
/// incremental pressure projection. Updates u (to u^{n+1,k+1}) and p in place.
class FlowSolver {
  public:
    explicit FlowSolver(const Grid& g);

    MomentumSolveResult momentum_solve(const MomentumInputs& in, FaceField& u, CellField& p);

  private:
    Grid grid_;
    HelmholtzSolver helmholtz_;
    PoissonSolver poisson_;
    FaceField a_, rhs_, beta_;
    CellField dp_;
};

}  // namespace fdfsi
