#pragma once

#include "fdfsi/grid.hpp"

namespace fdfsi {

/// Limited upwind face value from the (far-upwind, upwind, downwind) triple.
/// Cubic upwind interpolation (kappa = 1/2 base profile) bounded by the
/// universal-limiter region in normalized-variable form; falls back to the
/// upwind value outside the monotone range.
inline double cui_face_value(double q_up2, double q_up, double q_dn) {
    const double den = q_dn - q_up2;
    if (den == 0.0) return q_up;
    const double qhat = (q_up - q_up2) / den;
    if (qhat <= 0.0 || qhat >= 1.0) return q_up;
    double f = 0.75 * qhat + 0.375;
    if (f > 2.0 * qhat) f = 2.0 * qhat;
    if (f > 1.0) f = 1.0;
    return q_up2 + f * den;
}

/// Conservative advection term Q(u, q) = div_h(u q) on cell centers.
/// q must have ghost cells filled; u must have boundary faces set.
CellField advection_flux_divergence(const FaceField& u, const CellField& q, const Grid& g);

/// One conservative transport step q^{n+1} = q^n - dt Q(u, q^{n+1/2}) with the
/// midpoint state built by an internal predictor pass. Aborts if the advective
/// CFL number exceeds 0.5.
CellField advect(const CellField& q, const FaceField& u, double dt, const Grid& g);

}  // namespace fdfsi
