#include "fdfsi/advection.hpp"

#include <sstream>
#include <stdexcept>

#include "fdfsi/operators.hpp"

namespace fdfsi {

CellField advection_flux_divergence(const FaceField& f, const CellField& q, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    CellField out(nx, ny);

    std::vector<double> fx(nx + 1);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const double uf = f.u(i, j);
            const double qf = (uf >= 0.0) ? cui_face_value(q(i - 2, j), q(i - 1, j), q(i, j))
                                          : cui_face_value(q(i + 1, j), q(i, j), q(i - 1, j));
            fx[i] = uf * qf;
        }
        for (int i = 0; i < nx; ++i) out(i, j) = (fx[i + 1] - fx[i]) / g.dx;
    }

    std::vector<double> gy_prev(nx), gy(nx);
    auto yflux_row = [&](int j, std::vector<double>& row) {
        for (int i = 0; i < nx; ++i) {
            const double vf = f.v(i, j);
            row[i] = vf * ((vf >= 0.0) ? cui_face_value(q(i, j - 2), q(i, j - 1), q(i, j))
                                       : cui_face_value(q(i, j + 1), q(i, j), q(i, j - 1)));
        }
    };
    yflux_row(0, gy_prev);
    for (int j = 0; j < ny; ++j) {
        yflux_row(j + 1, gy);
        for (int i = 0; i < nx; ++i) out(i, j) += (gy[i] - gy_prev[i]) / g.dy;
        std::swap(gy, gy_prev);
    }
    return out;
}

CellField advect(const CellField& q, const FaceField& u, double dt, const Grid& g) {
    const double cfl = cfl_number(u, g, dt);
    if (cfl > 0.5 + 1e-12) {
        std::ostringstream msg;
        msg << "advect: CFL " << cfl << " exceeds 0.5 (dt=" << dt << ", dx=" << g.dx
            << ", dy=" << g.dy << ")";
        throw std::runtime_error(msg.str());
    }

    CellField qn = q;
    fill_cell_ghosts(qn, g);
    CellField rhs = advection_flux_divergence(u, qn, g);

    CellField qmid(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) qmid(i, j) = qn(i, j) - 0.5 * dt * rhs(i, j);
    fill_cell_ghosts(qmid, g);
    rhs = advection_flux_divergence(u, qmid, g);

    CellField out(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out(i, j) = qn(i, j) - dt * rhs(i, j);
    return out;
}

}  // namespace fdfsi
