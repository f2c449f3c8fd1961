#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "fdfsi/grid.hpp"
#include "fdfsi/rigid_body.hpp"

namespace fdfsi {

/// One-dimensional weight of the four-point regularized delta kernel,
/// evaluated at a grid-scaled offset. Partition of unity: the weights at the
/// four integers bracketing any offset sum to one exactly.
inline double delta4_1d(double r) {
    const double a = std::abs(r);
    if (a >= 2.0) return 0.0;
    if (a <= 1.0) return 0.125 * (3.0 - 2.0 * a + std::sqrt(1.0 + 4.0 * a - 4.0 * a * a));
    return 0.125 * (5.0 - 2.0 * a - std::sqrt(-7.0 + 12.0 * a - 4.0 * a * a));
}

/// Interior marker cloud of a rigid body. Reference offsets are kept in the
/// body frame (about the COM at t = 0); world positions are regenerated from
/// the rigid pose, which keeps the cloud distortion-free.
struct LagrangianMesh {
    std::vector<std::array<double, 2>> ref;  // body-frame offsets from the COM
    std::vector<std::array<double, 2>> pos;  // current world positions
    double ds1 = 0.0;
    double ds2 = 0.0;
    bool coarse_spacing_warning = false;  // spacing_factor > 1: leakage risk

    double cell_weight() const { return ds1 * ds2; }
    double total_weight() const { return cell_weight() * static_cast<double>(ref.size()); }
    std::size_t size() const { return ref.size(); }
};

/// Lattice of markers filling the shape interior with spacing
/// spacing_factor * (dx, dy). The shape is given in the body frame; offsets
/// are stored relative to com_body. Throws if the mesh comes out empty.
LagrangianMesh generate_markers(const Shape& shape_body_frame, std::array<double, 2> com_body,
                                const Grid& g, double spacing_factor = 0.5);

/// World positions from the rigid pose: X = X_com + R(q) * ref.
void update_marker_world_positions(LagrangianMesh& mesh, const RigidBodyState& pose);

/// Positions at the cycle midpoint pose (average of two poses' COM and angle).
void update_marker_world_positions_midpoint(LagrangianMesh& mesh, const RigidBodyState& pose_a,
                                            const RigidBodyState& pose_b);

/// Explicit marker advection X += dt * U_b with a domain-margin check; the
/// driver re-syncs positions rigidly from the body pose afterwards.
void update_marker_positions(LagrangianMesh& mesh, const std::vector<std::array<double, 2>>& u_b,
                             double dt, const Grid& g);

/// Velocity interpolation U = J[X] u. Throws if any marker's kernel support
/// is clipped by the domain boundary (markers must stay 2 cells inside).
std::vector<std::array<double, 2>> interpolate(const FaceField& u, const Grid& g,
                                               const LagrangianMesh& mesh);

/// Force spreading f += S[X] F (accumulates into out).
void spread(const std::vector<std::array<double, 2>>& force, const LagrangianMesh& mesh,
            const Grid& g, FaceField& out);

struct RedistributedMotion {
    std::array<double, 2> u_r{0.0, 0.0};
    double w_r = 0.0;
    double cloud_mass = 0.0;     // rho_s * sum of weights
    double cloud_inertia = 0.0;  // rho_s * sum |R|^2 weights
};

/// Linear and angular momentum of the uncorrected velocity field redistributed
/// over the marker cloud. Locked DOFs are overridden with prescribed values
/// after the sums. Radius arms use the current marker positions about com.
RedistributedMotion momentum_redistribution(const std::vector<std::array<double, 2>>& u_interp,
                                            const LagrangianMesh& mesh, double rho_s,
                                            std::array<double, 2> com, const DofLocks& locks,
                                            std::array<double, 2> prescribed_u,
                                            double prescribed_w);

/// Rigid marker velocities U_b = U_r + W_r x R about com.
std::vector<std::array<double, 2>> rigid_marker_velocities(const LagrangianMesh& mesh,
                                                           std::array<double, 2> u_r, double w_r,
                                                           std::array<double, 2> com);

/// Eulerian velocity correction u += S[X](U_b - J[X] u_tilde); no divergence
/// projection follows.
void velocity_correction(FaceField& u, const Grid& g, const LagrangianMesh& mesh,
                         const std::vector<std::array<double, 2>>& u_b,
                         const std::vector<std::array<double, 2>>& u_interp);

struct ForceTorqueIB {
    std::array<double, 2> force{0.0, 0.0};
    double torque = 0.0;
};

/// Hydrodynamic force/torque recovered from the marker velocity balance as a
/// post-processing step.
ForceTorqueIB lagrangian_force_torque(const std::vector<std::array<double, 2>>& u_b_new,
                                      const std::vector<std::array<double, 2>>& u_b_old,
                                      const std::vector<std::array<double, 2>>& du,
                                      const LagrangianMesh& mesh, double rho_s, double dt,
                                      std::array<double, 2> x_com);

}  // namespace fdfsi
