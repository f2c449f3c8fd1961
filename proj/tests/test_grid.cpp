#include <doctest.h>

#include <cmath>
#include <random>

#include "fdfsi/grid.hpp"
#include "fdfsi/operators.hpp"

using namespace fdfsi;

namespace {

FaceField sample_faces(const Grid& g, double (*fu)(double, double), double (*fv)(double, double)) {
    FaceField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i) {
            const auto c = g.xface_center(i, j);
            f.u(i, j) = fu(c[0], c[1]);
        }
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto c = g.yface_center(i, j);
            f.v(i, j) = fv(c[0], c[1]);
        }
    return f;
}

std::mt19937 rng(20240811);

double urand() {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

void randomize_cells(CellField& c, const Grid& g) {
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) c(i, j) = urand();
    fill_cell_ghosts(c, g);
}

void randomize_faces(FaceField& f, const Grid& g) {
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            f.u(i, j) = urand();
        else
            f.v(i, j) = urand();
    });
    fill_velocity_ghosts(f, g);
}

}  // namespace

TEST_CASE("divergence of constant and linear fields") {
    const Grid g(4, 4, 2.0, 2.0);
    SUBCASE("constant (1,0) is divergence free") {
        FaceField f(g, 0.0);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i <= 4; ++i) f.u(i, j) = 1.0;
        const CellField d = divergence(f, g);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) CHECK(d(i, j) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("u=(x,-y) is divergence free to machine precision") {
        const FaceField f = sample_faces(
            g, [](double x, double) { return x; }, [](double, double y) { return -y; });
        const CellField d = divergence(f, g);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) CHECK(std::abs(d(i, j)) < 1e-13);
    }
    SUBCASE("u=(x,y) has divergence exactly 2 (stencil exact for linears)") {
        const FaceField f = sample_faces(
            g, [](double x, double) { return x; }, [](double, double y) { return y; });
        const CellField d = divergence(f, g);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) CHECK(d(i, j) == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("gradient of constant and linear cell fields") {
    const Grid g(6, 5, 1.2, 1.0);
    CellField p(6, 5);
    SUBCASE("constant field has zero gradient") {
        p.fill(3.5);
        const FaceField r = gradient(p, g);
        for (int j = 0; j < 5; ++j)
            for (int i = 1; i < 6; ++i) CHECK(r.u(i, j) == doctest::Approx(0.0));
    }
    SUBCASE("p = x gives unit x-gradient at interior faces") {
        for (int j = -kGhost; j < 5 + kGhost; ++j)
            for (int i = -kGhost; i < 6 + kGhost; ++i) p(i, j) = g.cell_center(i, j)[0];
        const FaceField r = gradient(p, g);
        for (int j = 0; j < 5; ++j)
            for (int i = 1; i < 6; ++i) CHECK(r.u(i, j) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("gradient is the negative adjoint of divergence on a periodic grid") {
    const Grid g(8, 8, 1.0, 1.0, {0.0, 0.0}, AxisBc::Periodic, AxisBc::Periodic);
    CellField p(8, 8);
    randomize_cells(p, g);
    FaceField u(g);
    randomize_faces(u, g);

    const FaceField gp = gradient(p, g);
    const CellField du = divergence(u, g);

    // brute-force inner products with the cell-volume weight
    double lhs = 0.0;
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        lhs += (comp == 0 ? gp.u(i, j) * u.u(i, j) : gp.v(i, j) * u.v(i, j)) * g.cell_area();
    });
    double rhs = 0.0;
    for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) rhs += p(i, j) * du(i, j) * g.cell_area();
    CHECK(lhs == doctest::Approx(-rhs).epsilon(1e-12));
}

TEST_CASE("cell_to_face averaging") {
    const Grid g(4, 3, 4.0, 3.0);
    CellField c(4, 3);
    SUBCASE("constant stays constant") {
        c.fill(7.25);
        fill_cell_ghosts(c, g);
        const FaceField f = cell_to_face(c, g);
        CHECK(f.u(2, 1) == doctest::Approx(7.25));
        CHECK(f.v(1, 2) == doctest::Approx(7.25));
    }
    SUBCASE("linear field is reproduced exactly at interior faces") {
        for (int j = -kGhost; j < 3 + kGhost; ++j)
            for (int i = -kGhost; i < 4 + kGhost; ++i) c(i, j) = g.cell_center(i, j)[0];
        const FaceField f = cell_to_face(c, g);
        for (int j = 0; j < 3; ++j)
            for (int i = 1; i < 4; ++i)
                CHECK(f.u(i, j) == doctest::Approx(g.xface_center(i, j)[0]).epsilon(1e-14));
    }
    SUBCASE("density step 1000/1.2 averages to 500.6") {
        for (int j = -kGhost; j < 3 + kGhost; ++j)
            for (int i = -kGhost; i < 4 + kGhost; ++i) c(i, j) = (i < 2) ? 1000.0 : 1.2;
        const FaceField f = cell_to_face(c, g);
        CHECK(f.u(2, 1) == doctest::Approx(500.6));
    }
}

TEST_CASE("viscous operator basics") {
    SUBCASE("constant velocity gives zero") {
        const Grid g(8, 8, 1.0, 1.0, {0.0, 0.0}, AxisBc::Periodic, AxisBc::Periodic);
        FaceField f(g, 2.5);
        fill_velocity_ghosts(f, g);
        CellField mu(8, 8, 0.3);
        fill_cell_ghosts(mu, g);
        const NodeField mn = cell_to_node(mu, g);
        const FaceField r = viscous_operator(f, mu, mn, g);
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            CHECK(std::abs(comp == 0 ? r.u(i, j) : r.v(i, j)) < 1e-12);
        });
    }
    SUBCASE("u=(sin y, 0): converges to -mu sin y at second order") {
        const double mu_val = 0.7;
        auto err_at = [&](int n) {
            const Grid g(n, n, 2.0 * M_PI, 2.0 * M_PI, {0.0, 0.0}, AxisBc::Periodic,
                         AxisBc::Periodic);
            FaceField f(g);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i <= n; ++i) f.u(i, j) = std::sin(g.xface_center(i, j)[1]);
            fill_velocity_ghosts(f, g);
            CellField mu(n, n, mu_val);
            fill_cell_ghosts(mu, g);
            const NodeField mn = cell_to_node(mu, g);
            const FaceField r = viscous_operator(f, mu, mn, g);
            double e = 0.0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                    e = std::max(e, std::abs(r.u(i, j) +
                                             mu_val * std::sin(g.xface_center(i, j)[1])));
            return e;
        };
        const double e1 = err_at(16), e2 = err_at(32);
        const double order = std::log2(e1 / e2);
        CHECK(order >= 1.9);
    }
    SUBCASE("mirror symmetry in x") {
        const Grid g(10, 6, 1.0, 0.6);
        FaceField f(g);
        randomize_faces(f, g);
        CellField mu(10, 6, 0.42);
        fill_cell_ghosts(mu, g);
        const NodeField mn = cell_to_node(mu, g);
        const FaceField r = viscous_operator(f, mu, mn, g);

        FaceField fm(g);
        for (int j = 0; j < 6; ++j)
            for (int i = 0; i <= 10; ++i) fm.u(i, j) = -f.u(10 - i, j);
        for (int j = 0; j <= 6; ++j)
            for (int i = 0; i < 10; ++i) fm.v(i, j) = f.v(9 - i, j);
        fill_velocity_ghosts(fm, g);
        const FaceField rm = viscous_operator(fm, mu, mn, g);
        for (int j = 0; j < 6; ++j)
            for (int i = 1; i < 10; ++i)
                CHECK(rm.u(i, j) == doctest::Approx(-r.u(10 - i, j)).epsilon(1e-11));
        for (int j = 1; j < 6; ++j)
            for (int i = 0; i < 10; ++i)
                CHECK(rm.v(i, j) == doctest::Approx(r.v(9 - i, j)).epsilon(1e-11));
    }
}

TEST_CASE("divergence of gradient equals the 5-point Laplacian on interior cells") {
    const Grid g(6, 6, 1.0, 1.0);
    CellField p(6, 6);
    randomize_cells(p, g);
    const CellField lap = divergence(gradient(p, g), g);
    for (int j = 1; j < 5; ++j)
        for (int i = 1; i < 5; ++i) {
            const double expect = (p(i + 1, j) - 2.0 * p(i, j) + p(i - 1, j)) / (g.dx * g.dx) +
                                  (p(i, j + 1) - 2.0 * p(i, j) + p(i, j - 1)) / (g.dy * g.dy);
            CHECK(lap(i, j) == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("operators are linear") {
    const Grid g(7, 5, 1.4, 1.0);
    CellField f1(7, 5), f2(7, 5);
    randomize_cells(f1, g);
    randomize_cells(f2, g);
    const double a = 1.7, b = -0.6;

    CellField combo(7, 5);
    for (int j = -kGhost; j < 5 + kGhost; ++j)
        for (int i = -kGhost; i < 7 + kGhost; ++i) combo(i, j) = a * f1(i, j) + b * f2(i, j);

    const FaceField g1 = gradient(f1, g), g2 = gradient(f2, g), gc = gradient(combo, g);
    for (int j = 0; j < 5; ++j)
        for (int i = 1; i < 7; ++i)
            CHECK(gc.u(i, j) == doctest::Approx(a * g1.u(i, j) + b * g2.u(i, j)).epsilon(1e-12));

    FaceField u1(g), u2(g);
    randomize_faces(u1, g);
    randomize_faces(u2, g);
    FaceField uc(g);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i <= 7; ++i) uc.u(i, j) = a * u1.u(i, j) + b * u2.u(i, j);
    for (int j = 0; j <= 5; ++j)
        for (int i = 0; i < 7; ++i) uc.v(i, j) = a * u1.v(i, j) + b * u2.v(i, j);
    const CellField d1 = divergence(u1, g), d2 = divergence(u2, g), dc = divergence(uc, g);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 7; ++i)
            CHECK(dc(i, j) == doctest::Approx(a * d1(i, j) + b * d2(i, j)).epsilon(1e-12));
}
