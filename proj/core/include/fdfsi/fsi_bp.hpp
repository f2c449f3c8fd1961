#pragma once

#include <vector>

#include "fdfsi/grid.hpp"
#include "fdfsi/rigid_body.hpp"

namespace fdfsi {

/// Indicator chi = 1 - H_body(psi): 1 deep inside the body, 0 outside.
CellField build_chi(const CellField& psi, int n_cells, const Grid& g, bool binary = false);

/// Rigid-body velocity evaluated at every face center.
FaceField build_target_velocity(const RigidBodyState& body, const Grid& g);

struct StairStepFace {
    int comp;  // 0 = x-face, 1 = y-face
    int i;
    int j;
    double normal_x;
    double normal_y;
    double area;  // per unit depth
};

/// Grid-aligned body surface: faces between cells whose psi values have
/// opposite sign, normals pointing out of the body.
struct StairStepSurface {
    std::vector<StairStepFace> faces;
    /// Sum of n_f * dA_f; zero within round-off for a closed interior body.
    std::array<double, 2> normal_area_sum{0.0, 0.0};
};

/// Throws if the body touches the domain boundary ring or no sign change is
/// found (body vanished or left the grid).
StairStepSurface extract_stairstep_surface(const CellField& psi, const Grid& g);

struct ForceTorque {
    std::array<double, 2> force{0.0, 0.0};
    double torque = 0.0;
};

/// Pressure and viscous tractions summed over the stair-step faces; pressure
/// and viscosity are interpolated onto faces by simple averaging, velocity
/// gradients by centered differences (valid on both sides of the interface).
ForceTorque hydrodynamic_force_torque(const CellField& p, const FaceField& u,
                                      const CellField& mu, const StairStepSurface& surface,
                                      const Grid& g, std::array<double, 2> x_com);

}  // namespace fdfsi
