#include <benchmark/benchmark.h>

#include <random>

#include "fdfsi/advection.hpp"
#include "fdfsi/flow_solver.hpp"
#include "fdfsi/fsi_ib.hpp"
#include "fdfsi/linear_solvers.hpp"
#include "fdfsi/operators.hpp"

using namespace fdfsi;

namespace {

Grid make_grid(int n) { return Grid(n, n, 1.0, 1.0); }

FaceField random_faces(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FaceField f(g);
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            f.u(i, j) = 0.1 * dist(rng);
        else
            f.v(i, j) = 0.1 * dist(rng);
    });
    fill_velocity_ghosts(f, g);
    return f;
}

}  // namespace

static void BM_Divergence(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)));
    const FaceField f = random_faces(g, 1);
    for (auto _ : state) {
        auto d = divergence(f, g);
        benchmark::DoNotOptimize(d);
    }
    state.SetItemsProcessed(state.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_Divergence)->Arg(128)->Arg(256);

static void BM_ViscousOperator(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)));
    const FaceField f = random_faces(g, 2);
    CellField mu(g.nx, g.ny, 1e-3);
    fill_cell_ghosts(mu, g);
    const NodeField mn = cell_to_node(mu, g);
    for (auto _ : state) {
        auto r = viscous_operator(f, mu, mn, g);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_ViscousOperator)->Arg(128)->Arg(256);

static void BM_CuiAdvection(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)));
    const FaceField f = random_faces(g, 3);
    CellField q(g.nx, g.ny);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) q(i, j) = g.cell_center(i, j)[1];
    fill_cell_ghosts(q, g);
    for (auto _ : state) {
        auto r = advection_flux_divergence(f, q, g);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_CuiAdvection)->Arg(128)->Arg(256);

static void BM_Rk3Transport(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)));
    const FaceField adv = random_faces(g, 4);
    FaceField rho(g, 1000.0), rho_out(g), conv(g);
    fill_velocity_ghosts(rho, g);
    const double dt = 0.25 * g.dx;
    for (auto _ : state) {
        ssp_rk3_density_and_convection(rho, adv, adv, adv, dt, g, rho_out, conv);
        benchmark::DoNotOptimize(rho_out);
    }
    state.SetItemsProcessed(state.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_Rk3Transport)->Arg(128)->Arg(256);

static void BM_PoissonMgSolve(benchmark::State& state) {
    const Grid g = make_grid(static_cast<int>(state.range(0)));
    PoissonSolver solver(g);
    FaceField beta(g, 1.0);
    // a high-contrast stripe mimicking an air-water interface
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i <= g.nx; ++i)
            beta.u(i, j) = (j < g.ny / 3) ? 1e-3 : 0.8;
    for (int j = 0; j <= g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) beta.v(i, j) = (j < g.ny / 3) ? 1e-3 : 0.8;
    solver.set_coefficients(beta);
    CellField rhs(g.nx, g.ny), p(g.nx, g.ny);
    double mean = 0.0;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) mean += (rhs(i, j) = dist(rng));
    mean /= g.nx * g.ny;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) rhs(i, j) -= mean;
    for (auto _ : state) {
        p.fill(0.0);
        auto stats = solver.solve(rhs, p, 1e-10, 1e-13);
        benchmark::DoNotOptimize(stats);
    }
    state.SetItemsProcessed(state.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_PoissonMgSolve)->Arg(128)->Arg(256);

static void BM_DeltaSpread(benchmark::State& state) {
    const Grid g = make_grid(128);
    const auto mesh = generate_markers(CircleShape{{0.5, 0.5}, 0.2}, {0.5, 0.5}, g, 0.5);
    LagrangianMesh m = mesh;
    for (auto& p : m.pos) {
        p[0] += 0.5;
        p[1] += 0.5;
    }
    std::vector<std::array<double, 2>> force(m.size(), {1.0, -1.0});
    FaceField out(g);
    for (auto _ : state) {
        out.fill(0.0);
        spread(force, m, g, out);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * m.size());
}
BENCHMARK(BM_DeltaSpread)->Arg(0);

BENCHMARK_MAIN();
