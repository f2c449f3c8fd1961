#include "fdfsi/fsi_bp.hpp"

#include <stdexcept>

namespace fdfsi {

CellField build_chi(const CellField& psi, int n_cells, const Grid& g, bool binary) {
    const double w = n_cells * g.min_spacing();
    CellField chi(g.nx, g.ny);
    for (int j = -kGhost; j < g.ny + kGhost; ++j)
        for (int i = -kGhost; i < g.nx + kGhost; ++i)
            chi(i, j) = binary ? (psi(i, j) < 0.0 ? 1.0 : 0.0)
                               : 1.0 - smoothed_heaviside(psi(i, j), w);
    return chi;
}

FaceField build_target_velocity(const RigidBodyState& body, const Grid& g) {
    FaceField t(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const auto c = g.xface_center(i, j);
            t.u(i, j) = rigid_velocity_at(body, c[0], c[1])[0];
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto c = g.yface_center(i, j);
            t.v(i, j) = rigid_velocity_at(body, c[0], c[1])[1];
        }
    return t;
}

StairStepSurface extract_stairstep_surface(const CellField& psi, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        if (psi(0, j) < 0.0 || psi(nx - 1, j) < 0.0)
            throw std::runtime_error("extract_stairstep_surface: body touches domain boundary");
    for (int i = 0; i < nx; ++i)
        if (psi(i, 0) < 0.0 || psi(i, ny - 1) < 0.0)
            throw std::runtime_error("extract_stairstep_surface: body touches domain boundary");

    StairStepSurface s;
    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i <= nx - 1; ++i) {
            const double a = psi(i - 1, j), b = psi(i, j);
            if (a * b < 0.0) {
                const double n = (a < 0.0) ? 1.0 : -1.0;  // out of the body
                s.faces.push_back({0, i, j, n, 0.0, g.dy});
                s.normal_area_sum[0] += n * g.dy;
            }
        }
    }
    for (int j = 1; j <= ny - 1; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double a = psi(i, j - 1), b = psi(i, j);
            if (a * b < 0.0) {
                const double n = (a < 0.0) ? 1.0 : -1.0;
                s.faces.push_back({1, i, j, 0.0, n, g.dx});
                s.normal_area_sum[1] += n * g.dx;
            }
        }
    }
    if (s.faces.empty())
        throw std::runtime_error("extract_stairstep_surface: empty surface (body off-grid?)");
    return s;
}

ForceTorque hydrodynamic_force_torque(const CellField& p, const FaceField& u, const CellField& mu,
                                      const StairStepSurface& surface, const Grid& g,
                                      std::array<double, 2> x_com) {
    const double dx = g.dx, dy = g.dy;
    ForceTorque ft;
    for (const auto& f : surface.faces) {
        const int i = f.i, j = f.j;
        double pf, muf, dudx, dudy, dvdx, dvdy, cx, cy;
        if (f.comp == 0) {
            pf = 0.5 * (p(i - 1, j) + p(i, j));
            muf = 0.5 * (mu(i - 1, j) + mu(i, j));
            dudx = (u.u(i + 1, j) - u.u(i - 1, j)) / (2.0 * dx);
            dudy = (u.u(i, j + 1) - u.u(i, j - 1)) / (2.0 * dy);
            dvdx = ((u.v(i, j) + u.v(i, j + 1)) - (u.v(i - 1, j) + u.v(i - 1, j + 1))) / (2.0 * dx);
            dvdy = ((u.v(i, j + 1) - u.v(i, j)) + (u.v(i - 1, j + 1) - u.v(i - 1, j))) / (2.0 * dy);
            const auto c = g.xface_center(i, j);
            cx = c[0];
            cy = c[1];
        } else {
            pf = 0.5 * (p(i, j - 1) + p(i, j));
            muf = 0.5 * (mu(i, j - 1) + mu(i, j));
            dudx = ((u.u(i + 1, j) + u.u(i + 1, j - 1)) - (u.u(i, j) + u.u(i, j - 1))) / (2.0 * dx);
            dudy = ((u.u(i, j) - u.u(i, j - 1)) + (u.u(i + 1, j) - u.u(i + 1, j - 1))) / (2.0 * dy);
            dvdx = (u.v(i + 1, j) - u.v(i - 1, j)) / (2.0 * dx);
            dvdy = (u.v(i, j + 1) - u.v(i, j - 1)) / (2.0 * dy);
            const auto c = g.yface_center(i, j);
            cx = c[0];
            cy = c[1];
        }
        const double shear = dudy + dvdx;
        const double tx = -pf * f.normal_x + muf * (2.0 * dudx * f.normal_x + shear * f.normal_y);
        const double ty = -pf * f.normal_y + muf * (shear * f.normal_x + 2.0 * dvdy * f.normal_y);
        ft.force[0] += tx * f.area;
        ft.force[1] += ty * f.area;
        ft.torque += (cx - x_com[0]) * ty * f.area - (cy - x_com[1]) * tx * f.area;
    }
    return ft;
}

}  // namespace fdfsi
