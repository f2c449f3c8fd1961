#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fdfsi/linear_solvers.hpp"
#include "fdfsi/operators.hpp"

using namespace fdfsi;

namespace {

std::mt19937 rng(77);
double urand(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// dense oracle for the variable-coefficient Poisson operator: assemble
// -div(beta grad p) * cell_area as an n x n matrix and solve by elimination
std::vector<double> dense_poisson_solve(const Grid& g, const FaceField& beta,
                                        const std::vector<double>& rhs_cells) {
    const int nx = g.nx, ny = g.ny, n = nx * ny;
    const double ax = g.dy / g.dx, ay = g.dx / g.dy;
    std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);
    auto add = [&](int r, int c, double v) { A[static_cast<std::size_t>(r) * n + c] += v; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int id = j * nx + i;
            auto couple = [&](int nb, double t) {
                add(id, id, t);
                add(id, nb, -t);
            };
            if (i > 0)
                couple(id - 1, beta.u(i, j) * ax);
            else if (g.bc_x == AxisBc::Periodic)
                couple(j * nx + nx - 1, beta.u(0, j) * ax);
            if (i < nx - 1)
                couple(id + 1, beta.u(i + 1, j) * ax);
            else if (g.bc_x == AxisBc::Periodic)
                couple(j * nx + 0, beta.u(nx, j) * ax);
            if (j > 0)
                couple(id - nx, beta.v(i, j) * ay);
            else if (g.bc_y == AxisBc::Periodic)
                couple((ny - 1) * nx + i, beta.v(i, 0) * ay);
            if (j < ny - 1)
                couple(id + nx, beta.v(i, j + 1) * ay);
            else if (g.bc_y == AxisBc::Periodic)
                couple(0 * nx + i, beta.v(i, ny) * ay);
        }
    }
    // pin unknown 0 against the constant nullspace
    for (int c = 0; c < n; ++c) A[c] = 0.0;
    A[0] = 1.0;
    std::vector<double> b(n);
    for (int id = 0; id < n; ++id) b[id] = -rhs_cells[id] * g.cell_area();
    b[0] = 0.0;
    std::vector<int> piv;
    dense_factor(A, piv, n);
    dense_solve(A, piv, n, b);
    double mean = 0.0;
    for (double v : b) mean += v;
    mean /= n;
    for (double& v : b) v -= mean;
    return b;
}

FaceField random_beta(const Grid& g, bool with_jump) {
    FaceField beta(g, 1.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            beta.u(i, j) = with_jump && j < g.ny / 2 ? urand(0.8e-3, 1.2e-3) : urand(0.5, 2.0);
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            beta.v(i, j) = with_jump && j < g.ny / 2 ? urand(0.8e-3, 1.2e-3) : urand(0.5, 2.0);
    enforce_velocity_bc(beta, g);
    return beta;
}

std::vector<double> zero_mean_rhs(int n) {
    std::vector<double> r(n);
    double mean = 0.0;
    for (double& v : r) mean += (v = urand());
    mean /= n;
    for (double& v : r) v -= mean;
    return r;
}

}  // namespace

TEST_CASE("dense elimination roundtrip") {
    const int n = 12;
    std::vector<double> A(n * n), Acopy;
    std::vector<double> x_true(n), b(n, 0.0);
    for (int r = 0; r < n; ++r) {
        x_true[r] = urand();
        for (int c = 0; c < n; ++c) A[r * n + c] = urand();
        A[r * n + r] += 6.0;  // diagonally dominant
    }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) b[r] += A[r * n + c] * x_true[c];
    Acopy = A;
    std::vector<int> piv;
    dense_factor(Acopy, piv, n);
    dense_solve(Acopy, piv, n, b);
    for (int r = 0; r < n; ++r) CHECK(b[r] == doctest::Approx(x_true[r]).epsilon(1e-10));
}

TEST_CASE("Poisson MG-PCG matches the dense oracle") {
    SUBCASE("wall domain, odd dimensions, high-contrast coefficients") {
        const Grid g(13, 9, 1.3, 0.9);
        const FaceField beta = random_beta(g, true);
        const auto rhs = zero_mean_rhs(13 * 9);

        PoissonSolver solver(g);
        solver.set_coefficients(beta);
        CellField rhs_field(13, 9), p(13, 9);
        for (int j = 0; j < 9; ++j)
            for (int i = 0; i < 13; ++i) rhs_field(i, j) = rhs[j * 13 + i];
        const auto stats = solver.solve(rhs_field, p, 1e-12, 1e-14, 500);
        CHECK(stats.converged);

        const auto oracle = dense_poisson_solve(g, beta, rhs);
        double pmean = 0.0;
        for (int j = 0; j < 9; ++j)
            for (int i = 0; i < 13; ++i) pmean += p(i, j);
        pmean /= 13 * 9;
        for (int j = 0; j < 9; ++j)
            for (int i = 0; i < 13; ++i)
                CHECK(p(i, j) - pmean == doctest::Approx(oracle[j * 13 + i]).epsilon(1e-7));
    }
    SUBCASE("periodic domain") {
        const Grid g(12, 8, 1.0, 1.0, {0.0, 0.0}, AxisBc::Periodic, AxisBc::Periodic);
        FaceField beta = random_beta(g, false);
        const auto rhs = zero_mean_rhs(12 * 8);

        PoissonSolver solver(g);
        solver.set_coefficients(beta);
        CellField rhs_field(12, 8), p(12, 8);
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 12; ++i) rhs_field(i, j) = rhs[j * 12 + i];
        const auto stats = solver.solve(rhs_field, p, 1e-12, 1e-14, 500);
        CHECK(stats.converged);

        const auto oracle = dense_poisson_solve(g, beta, rhs);
        double pmean = 0.0;
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 12; ++i) pmean += p(i, j);
        pmean /= 12 * 8;
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 12; ++i)
                CHECK(p(i, j) - pmean == doctest::Approx(oracle[j * 12 + i]).epsilon(1e-7));
    }
}

TEST_CASE("Poisson MG-PCG converges fast on a large high-ratio problem") {
    const Grid g(160, 96, 1.6, 0.96);
    FaceField beta(g, 1e-3);  // air-like everywhere, water-like bottom half
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) beta.u(i, j) = (j < g.ny / 2) ? 1.0 : 1e-3;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) beta.v(i, j) = (j < g.ny / 2) ? 1.0 : 1e-3;
    PoissonSolver solver(g);
    solver.set_coefficients(beta);

    CellField rhs(g.nx, g.ny), p(g.nx, g.ny);
    const auto r = zero_mean_rhs(g.nx * g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rhs(i, j) = r[j * g.nx + i];
    const auto stats = solver.solve(rhs, p, 1e-10, 1e-13, 200);
    CHECK(stats.converged);
    CHECK(stats.iterations <= 60);

    // the returned residual is in rhs units
    CHECK(stats.residual <= 1e-10 * max_abs_cell(rhs) + 1e-13);
}

TEST_CASE("Helmholtz operator is symmetric and the solve recovers a manufactured field") {
    const Grid g(14, 11, 1.4, 1.1);
    CellField mu(14, 11);
    for (int j = -kGhost; j < 11 + kGhost; ++j)
        for (int i = -kGhost; i < 14 + kGhost; ++i) mu(i, j) = 0.5 + 0.3 * urand();
    fill_cell_ghosts(mu, g);
    const NodeField mn = cell_to_node(mu, g);
    FaceField a(g);
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            a.u(i, j) = 50.0 + 10.0 * urand();
        else
            a.v(i, j) = 50.0 + 10.0 * urand();
    });

    auto apply = [&](const FaceField& x_in, FaceField& out) {
        FaceField x = x_in;
        fill_velocity_ghosts(x, g);
        const FaceField lx = viscous_operator(x, mu, mn, g);
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0)
                out.u(i, j) = a.u(i, j) * x.u(i, j) - 0.5 * lx.u(i, j);
            else
                out.v(i, j) = a.v(i, j) * x.v(i, j) - 0.5 * lx.v(i, j);
        });
    };

    SUBCASE("symmetry <Ax,y> = <x,Ay> on random fields") {
        FaceField x(g), y(g), ax(g), ay(g);
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0) {
                x.u(i, j) = urand();
                y.u(i, j) = urand();
            } else {
                x.v(i, j) = urand();
                y.v(i, j) = urand();
            }
        });
        apply(x, ax);
        apply(y, ay);
        double lhs = 0.0, rhs = 0.0;
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0) {
                lhs += ax.u(i, j) * y.u(i, j);
                rhs += x.u(i, j) * ay.u(i, j);
            } else {
                lhs += ax.v(i, j) * y.v(i, j);
                rhs += x.v(i, j) * ay.v(i, j);
            }
        });
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }

    SUBCASE("solve recovers manufactured solution") {
        FaceField x_true(g);
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0)
                x_true.u(i, j) = urand();
            else
                x_true.v(i, j) = urand();
        });
        FaceField rhs(g);
        apply(x_true, rhs);

        HelmholtzSolver solver(g);
        HelmholtzCoefficients coeff{&a, &mu, &mn};
        FaceField x(g, 0.0);
        const auto stats = solver.solve(coeff, rhs, x, 1e-12);
        CHECK(stats.converged);
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0)
                CHECK(x.u(i, j) == doctest::Approx(x_true.u(i, j)).epsilon(1e-6));
            else
                CHECK(x.v(i, j) == doctest::Approx(x_true.v(i, j)).epsilon(1e-6));
        });
    }
}
