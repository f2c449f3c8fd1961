#include "fdfsi/grid.hpp"

#include <stdexcept>

namespace fdfsi {

Grid::Grid(int nx_, int ny_, double lx_, double ly_, std::array<double, 2> origin_, AxisBc bcx,
           AxisBc bcy)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_), origin(origin_), bc_x(bcx), bc_y(bcy) {
    if (nx <= 0 || ny <= 0 || lx <= 0.0 || ly <= 0.0)
        throw std::invalid_argument("Grid: cell counts and extents must be positive");
    dx = lx / nx;
    dy = ly / ny;
}

void fill_cell_ghosts(CellField& f, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    // x direction first, interior rows only
    for (int j = 0; j < ny; ++j) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_x == AxisBc::Periodic) {
                f(-m, j) = f(nx - m, j);
                f(nx - 1 + m, j) = f(m - 1, j);
            } else {
                f(-m, j) = f(m - 1, j);
                f(nx - 1 + m, j) = f(nx - m, j);
            }
        }
    }
    // y direction over the full ghosted width so corners get values
    for (int i = -kGhost; i < nx + kGhost; ++i) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_y == AxisBc::Periodic) {
                f(i, -m) = f(i, ny - m);
                f(i, ny - 1 + m) = f(i, m - 1);
            } else {
                f(i, -m) = f(i, m - 1);
                f(i, ny - 1 + m) = f(i, ny - m);
            }
        }
    }
}

void enforce_velocity_bc(FaceField& f, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    if (g.bc_x == AxisBc::Wall) {
        for (int j = 0; j < ny; ++j) {
            f.u(0, j) = 0.0;
            f.u(nx, j) = 0.0;
        }
    } else {
        for (int j = 0; j < ny; ++j) f.u(nx, j) = f.u(0, j);
    }
    if (g.bc_y == AxisBc::Wall) {
        for (int i = 0; i < nx; ++i) {
            f.v(i, 0) = 0.0;
            f.v(i, ny) = 0.0;
        }
    } else {
        for (int i = 0; i < nx; ++i) f.v(i, ny) = f.v(i, 0);
    }
}

void fill_velocity_ghosts(FaceField& f, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    enforce_velocity_bc(f, g);

    // u component: normal direction is x, tangential is y.
    for (int j = 0; j < ny; ++j) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_x == AxisBc::Periodic) {
                f.u(-m, j) = f.u(nx - m, j);
                f.u(nx + m, j) = f.u(m, j);
            } else {  // odd reflection about the boundary face
                f.u(-m, j) = -f.u(m, j);
                f.u(nx + m, j) = -f.u(nx - m, j);
            }
        }
    }
    for (int i = -kGhost; i <= nx + kGhost; ++i) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_y == AxisBc::Periodic) {
                f.u(i, -m) = f.u(i, ny - m);
                f.u(i, ny - 1 + m) = f.u(i, m - 1);
            } else {  // linear reflection through zero wall value
                f.u(i, -m) = -f.u(i, m - 1);
                f.u(i, ny - 1 + m) = -f.u(i, ny - m);
            }
        }
    }

    // v component: normal direction is y, tangential is x.
    for (int i = 0; i < nx; ++i) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_y == AxisBc::Periodic) {
                f.v(i, -m) = f.v(i, ny - m);
                f.v(i, ny + m) = f.v(i, m);
            } else {
                f.v(i, -m) = -f.v(i, m);
                f.v(i, ny + m) = -f.v(i, ny - m);
            }
        }
    }
    for (int j = -kGhost; j <= ny + kGhost; ++j) {
        for (int m = 1; m <= kGhost; ++m) {
            if (g.bc_x == AxisBc::Periodic) {
                f.v(-m, j) = f.v(nx - m, j);
                f.v(nx - 1 + m, j) = f.v(m - 1, j);
            } else {
                f.v(-m, j) = -f.v(m - 1, j);
                f.v(nx - 1 + m, j) = -f.v(nx - m, j);
            }
        }
    }
}

}  // namespace fdfsi
