#pragma once

#include "fdfsi/grid.hpp"

namespace fdfsi {

/// (div u)_{i,j} = (u_{i+1/2,j} - u_{i-1/2,j})/dx + (v_{i,j+1/2} - v_{i,j-1/2})/dy.
/// Boundary faces of u must be set; interior cells of the result are filled.
CellField divergence(const FaceField& u, const Grid& g);

/// Face-centered central difference of a cell field. Requires ghost cells.
/// Gradient is evaluated on all faces including boundary ones.
FaceField gradient(const CellField& p, const Grid& g);

/// Two-point arithmetic average of a cell field onto faces. Requires ghosts.
FaceField cell_to_face(const CellField& c, const Grid& g);

/// Four-point average of a cell field onto nodes. Requires ghosts.
NodeField cell_to_node(const CellField& c, const Grid& g);

/// Variable-viscosity vector operator L_mu u = div[mu (grad u + grad u^T)].
/// mu_cell holds viscosity at cell centers (ghosts filled), mu_node at nodes.
/// u must have ghosts filled. The result is defined on velocity DOFs only;
/// pinned boundary faces are left at zero.
FaceField viscous_operator(const FaceField& u, const CellField& mu_cell, const NodeField& mu_node,
                           const Grid& g);

/// Max-norm over velocity DOFs.
double max_norm(const FaceField& f, const Grid& g);

/// Max-norm over interior cells.
double max_abs_cell(const CellField& c);

/// Max CFL number max(|u| dt / dx, |v| dt / dy) over all faces.
double cfl_number(const FaceField& u, const Grid& g, double dt);

}  // namespace fdfsi
