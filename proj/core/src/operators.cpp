#include "fdfsi/operators.hpp"

#include <cmath>

namespace fdfsi {

CellField divergence(const FaceField& f, const Grid& g) {
    CellField d(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            d(i, j) = (f.u(i + 1, j) - f.u(i, j)) / g.dx + (f.v(i, j + 1) - f.v(i, j)) / g.dy;
    return d;
}

FaceField gradient(const CellField& p, const Grid& g) {
    FaceField r(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) r.u(i, j) = (p(i, j) - p(i - 1, j)) / g.dx;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) r.v(i, j) = (p(i, j) - p(i, j - 1)) / g.dy;
    return r;
}

FaceField cell_to_face(const CellField& c, const Grid& g) {
    FaceField r(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) r.u(i, j) = 0.5 * (c(i - 1, j) + c(i, j));
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) r.v(i, j) = 0.5 * (c(i, j - 1) + c(i, j));
    return r;
}

NodeField cell_to_node(const CellField& c, const Grid& g) {
    NodeField r(g.nx, g.ny);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            r(i, j) = 0.25 * (c(i - 1, j - 1) + c(i, j - 1) + c(i - 1, j) + c(i, j));
    return r;
}

FaceField viscous_operator(const FaceField& f, const CellField& mu_cell, const NodeField& mu_node,
                           const Grid& g) {
    FaceField r(g);
    const double dx = g.dx, dy = g.dy;

    // x-momentum: d/dx[2 mu du/dx] + d/dy[mu (du/dy + dv/dx)]
    const int ilo = (g.bc_x == AxisBc::Wall) ? 1 : 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = ilo; i <= g.nx - 1; ++i) {
            const double txx_e = 2.0 * mu_cell(i, j) * (f.u(i + 1, j) - f.u(i, j)) / dx;
            const double txx_w = 2.0 * mu_cell(i - 1, j) * (f.u(i, j) - f.u(i - 1, j)) / dx;
            const double txy_n = mu_node(i, j + 1) * ((f.u(i, j + 1) - f.u(i, j)) / dy +
                                                      (f.v(i, j + 1) - f.v(i - 1, j + 1)) / dx);
            const double txy_s = mu_node(i, j) * ((f.u(i, j) - f.u(i, j - 1)) / dy +
                                                  (f.v(i, j) - f.v(i - 1, j)) / dx);
            r.u(i, j) = (txx_e - txx_w) / dx + (txy_n - txy_s) / dy;
        }
    }

    // y-momentum: d/dx[mu (du/dy + dv/dx)] + d/dy[2 mu dv/dy]
    const int jlo = (g.bc_y == AxisBc::Wall) ? 1 : 0;
    for (int j = jlo; j <= g.ny - 1; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double tyy_n = 2.0 * mu_cell(i, j) * (f.v(i, j + 1) - f.v(i, j)) / dy;
            const double tyy_s = 2.0 * mu_cell(i, j - 1) * (f.v(i, j) - f.v(i, j - 1)) / dy;
            const double txy_e = mu_node(i + 1, j) * ((f.u(i + 1, j) - f.u(i + 1, j - 1)) / dy +
                                                      (f.v(i + 1, j) - f.v(i, j)) / dx);
            const double txy_w = mu_node(i, j) * ((f.u(i, j) - f.u(i, j - 1)) / dy +
                                                  (f.v(i, j) - f.v(i - 1, j)) / dx);
            r.v(i, j) = (txy_e - txy_w) / dx + (tyy_n - tyy_s) / dy;
        }
    }
    return r;
}

double max_norm(const FaceField& f, const Grid& g) {
    double m = 0.0;
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        const double a = std::abs(comp == 0 ? f.u(i, j) : f.v(i, j));
        if (a > m) m = a;
    });
    return m;
}

double max_abs_cell(const CellField& c) {
    double m = 0.0;
    for (int j = 0; j < c.ny(); ++j)
        for (int i = 0; i < c.nx(); ++i) m = std::max(m, std::abs(c(i, j)));
    return m;
}

double cfl_number(const FaceField& f, const Grid& g, double dt) {
    double c = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) c = std::max(c, std::abs(f.u(i, j)) * dt / g.dx);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) c = std::max(c, std::abs(f.v(i, j)) * dt / g.dy);
    return c;
}

}  // namespace fdfsi
