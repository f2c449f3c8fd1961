#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

#include "fdfsi/grid.hpp"

namespace fdfsi {

/// Negative below y0 (liquid side), positive above.
struct HalfPlaneShape {
    double y0 = 0.0;
};

/// Negative inside the circle.
struct CircleShape {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.0;
};

/// Negative inside; vertices in counter-clockwise order.
struct PolygonShape {
    std::vector<std::array<double, 2>> vertices;
};

using Shape = std::variant<HalfPlaneShape, CircleShape, PolygonShape>;

/// Exact signed distance to the shape boundary.
double signed_distance(const Shape& s, double x, double y);

/// Signed distance sampled on cell centers, including the ghost band.
CellField init_signed_distance(const Shape& s, const Grid& g);

/// Sine-smoothed Heaviside ramp: 0 for value <= -width, 1 for value >= width.
inline double smoothed_heaviside(double value, double width) {
    if (value < -width) return 0.0;
    if (value > width) return 1.0;
    const double s = value / width;
    return 0.5 * (1.0 + s + std::sin(M_PI * s) / M_PI);
}

struct MaterialTable {
    double rho_l = 1000.0;
    double rho_g = 1.2;
    double rho_s = 500.0;
    double mu_l = 1.0e-3;
    double mu_g = 1.8e-5;
    double mu_s = 1.0e-3;  // solid viscosity follows the liquid by default
    int n_cells = 2;

    double smear_width(const Grid& g) const { return n_cells * g.min_spacing(); }
};

/// Stage-1 blend across the liquid-gas interface.
inline double blend_flow(double phi, double zeta_l, double zeta_g, double width) {
    return zeta_l + (zeta_g - zeta_l) * smoothed_heaviside(phi, width);
}

/// Stage-2 blend folding in the solid phase.
inline double blend_full(double zeta_flow, double psi, double zeta_s, double width) {
    return zeta_s + (zeta_flow - zeta_s) * smoothed_heaviside(psi, width);
}

struct MaterialFields {
    CellField rho;       // full two-stage blend
    CellField mu;        // full two-stage blend
    CellField rho_flow;  // stage-1 blend, used for the flow-only gravity mode
};

/// Two-stage material blending on cell centers (ghost cells included).
MaterialFields set_material_properties(const CellField& phi, const CellField& psi,
                                       const MaterialTable& table, const Grid& g);

struct ReinitParams {
    double pseudo_dt_factor = 0.3;  // pseudo time step as a fraction of min(dx,dy)
    int max_iters = 50;
    double residual_tol = 0.05;  // on || |grad phi| - 1 || in the band
    int band_width = 5;          // cells on either side of the zero contour
};

struct ReinitReport {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Relax phi toward a signed distance function near its zero contour by
/// pseudo-time integration of the Eikonal relaxation equation. Interface-
/// adjacent cells are anchored with a first-order subcell distance correction
/// so the zero contour stays put. Cells outside the band are left untouched.
ReinitReport reinitialize(CellField& phi, const ReinitParams& params, const Grid& g);

/// Max of | |grad_h phi| - 1 | (central differences) over cells within
/// band_cells * min_spacing of the zero contour.
double eikonal_residual(const CellField& phi, const Grid& g, double band_cells);

/// Area of the phi < 0 region with the transition band half-weighted:
/// integral of (1 - H(phi)) over the domain.
double negative_phase_area(const CellField& phi, const Grid& g, double width);

}  // namespace fdfsi
