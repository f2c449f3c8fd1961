#include "fdfsi/levelset.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fdfsi {

namespace {

double polygon_signed_distance(const PolygonShape& p, double x, double y) {
    const auto& v = p.vertices;
    const int n = static_cast<int>(v.size());
    if (n < 3) throw std::invalid_argument("PolygonShape needs at least 3 vertices");
    double d2 = std::numeric_limits<double>::max();
    bool inside = false;
    for (int i = 0, j = n - 1; i < n; j = i++) {
        const double ex = v[j][0] - v[i][0];
        const double ey = v[j][1] - v[i][1];
        const double wx = x - v[i][0];
        const double wy = y - v[i][1];
        const double ee = ex * ex + ey * ey;
        const double t = ee > 0.0 ? std::clamp((wx * ex + wy * ey) / ee, 0.0, 1.0) : 0.0;
        const double qx = wx - t * ex;
        const double qy = wy - t * ey;
        d2 = std::min(d2, qx * qx + qy * qy);
        // even-odd crossing test
        if ((v[i][1] > y) != (v[j][1] > y)) {
            const double xint = v[i][0] + (y - v[i][1]) / (v[j][1] - v[i][1]) * (v[j][0] - v[i][0]);
            if (x < xint) inside = !inside;
        }
    }
    const double d = std::sqrt(d2);
    return inside ? -d : d;
}

}  // namespace

double signed_distance(const Shape& s, double x, double y) {
    return std::visit(
        [&](const auto& shape) -> double {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, HalfPlaneShape>) {
                return y - shape.y0;
            } else if constexpr (std::is_same_v<T, CircleShape>) {
                const double rx = x - shape.center[0];
                const double ry = y - shape.center[1];
                return std::sqrt(rx * rx + ry * ry) - shape.radius;
            } else {
                return polygon_signed_distance(shape, x, y);
            }
        },
        s);
}

CellField init_signed_distance(const Shape& s, const Grid& g) {
    CellField f(g.nx, g.ny);
    for (int j = -kGhost; j < g.ny + kGhost; ++j)
        for (int i = -kGhost; i < g.nx + kGhost; ++i) {
            const auto c = g.cell_center(i, j);
            f(i, j) = signed_distance(s, c[0], c[1]);
        }
    return f;
}

MaterialFields set_material_properties(const CellField& phi, const CellField& psi,
                                       const MaterialTable& table, const Grid& g) {
    const double w = table.smear_width(g);
    MaterialFields out{CellField(g.nx, g.ny), CellField(g.nx, g.ny), CellField(g.nx, g.ny)};
    for (int j = -kGhost; j < g.ny + kGhost; ++j) {
        for (int i = -kGhost; i < g.nx + kGhost; ++i) {
            const double rf = blend_flow(phi(i, j), table.rho_l, table.rho_g, w);
            const double mf = blend_flow(phi(i, j), table.mu_l, table.mu_g, w);
            out.rho_flow(i, j) = rf;
            out.rho(i, j) = blend_full(rf, psi(i, j), table.rho_s, w);
            out.mu(i, j) = blend_full(mf, psi(i, j), table.mu_s, w);
        }
    }
    return out;
}

namespace {

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

struct BandCell {
    int i;
    int j;
    bool interface;
    double target;  // anchored first-order distance for interface cells
    double d_est;   // Chebyshev ring index from the interface cells
};

}  // namespace

ReinitReport reinitialize(CellField& phi, const ReinitParams& params, const Grid& g) {
    const int nx = g.nx, ny = g.ny;
    const double h = g.min_spacing();
    const double dtau = params.pseudo_dt_factor * h;

    fill_cell_ghosts(phi, g);
    const CellField phi0 = phi;  // frozen input: sign and interface anchors

    // Geometric band: Chebyshev dilation of the interface-adjacent cell set.
    // Distance-estimate heuristics misclassify cells where the input's
    // tangential distortion gradient is large, so the band is built from the
    // contour position only.
    std::vector<int> ring(static_cast<std::size_t>(nx) * ny, params.band_width + 1);
    auto ring_at = [&](int i, int j) -> int& { return ring[static_cast<std::size_t>(j) * nx + i]; };
    bool any_interface = false;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double c = phi0(i, j);
            const bool interface = (c * phi0(i - 1, j) < 0.0) || (c * phi0(i + 1, j) < 0.0) ||
                                   (c * phi0(i, j - 1) < 0.0) || (c * phi0(i, j + 1) < 0.0);
            if (!interface) continue;
            any_interface = true;
            for (int dj = -params.band_width; dj <= params.band_width; ++dj) {
                if (j + dj < 0 || j + dj >= ny) continue;
                for (int di = -params.band_width; di <= params.band_width; ++di) {
                    if (i + di < 0 || i + di >= nx) continue;
                    const int cheb = std::max(std::abs(di), std::abs(dj));
                    ring_at(i + di, j + dj) = std::min(ring_at(i + di, j + dj), cheb);
                }
            }
        }
    }
    if (!any_interface) return {0, 0.0, true};

    std::vector<BandCell> cells;
    cells.reserve(static_cast<std::size_t>(nx) * 4);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int cheb = ring_at(i, j);
            if (cheb > params.band_width) continue;
            double target = 0.0;
            if (cheb == 0) {
                const double gx0 = (phi0(i + 1, j) - phi0(i - 1, j)) / (2.0 * g.dx);
                const double gy0 = (phi0(i, j + 1) - phi0(i, j - 1)) / (2.0 * g.dy);
                const double grad = std::max(std::sqrt(gx0 * gx0 + gy0 * gy0), 1e-12);
                target = phi0(i, j) / grad;
            }
            cells.push_back({i, j, cheb == 0, target, static_cast<double>(cheb)});
        }
    }

    // Residual measured over band cells with a full interior central stencil;
    // wall-adjacent cells see ghost copies that flatten the gradient and are skipped.
    const int measure_ring = params.band_width - 1;
    auto residual_now = [&]() {
        double res = 0.0;
        for (const auto& bc : cells) {
            const int i = bc.i, j = bc.j;
            if (i < 1 || i > nx - 2 || j < 1 || j > ny - 2) continue;
            if (bc.d_est > measure_ring) continue;
            const double gx = (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * g.dx);
            const double gy = (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * g.dy);
            res = std::max(res, std::abs(std::sqrt(gx * gx + gy * gy) - 1.0));
        }
        return res;
    };

    ReinitReport report;
    std::vector<double> best(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) best[c] = phi(cells[c].i, cells[c].j);
    double best_res = residual_now();

    std::vector<double> incr(cells.size());
    for (int it = 0; it < params.max_iters; ++it) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto& bc = cells[c];
            const int i = bc.i, j = bc.j;
            if (bc.interface) {
                const double s = phi0(i, j) >= 0.0 ? 1.0 : -1.0;
                incr[c] = -dtau / h * (s * std::abs(phi(i, j)) - bc.target);
                continue;
            }
            // ENO2 one-sided derivatives
            const double dxx_m = (phi(i, j) - 2.0 * phi(i - 1, j) + phi(i - 2, j)) / (g.dx * g.dx);
            const double dxx_0 = (phi(i + 1, j) - 2.0 * phi(i, j) + phi(i - 1, j)) / (g.dx * g.dx);
            const double dxx_p = (phi(i + 2, j) - 2.0 * phi(i + 1, j) + phi(i, j)) / (g.dx * g.dx);
            const double a = (phi(i, j) - phi(i - 1, j)) / g.dx + 0.5 * g.dx * minmod(dxx_m, dxx_0);
            const double b = (phi(i + 1, j) - phi(i, j)) / g.dx - 0.5 * g.dx * minmod(dxx_0, dxx_p);

            const double dyy_m = (phi(i, j) - 2.0 * phi(i, j - 1) + phi(i, j - 2)) / (g.dy * g.dy);
            const double dyy_0 = (phi(i, j + 1) - 2.0 * phi(i, j) + phi(i, j - 1)) / (g.dy * g.dy);
            const double dyy_p = (phi(i, j + 2) - 2.0 * phi(i, j + 1) + phi(i, j)) / (g.dy * g.dy);
            const double cd = (phi(i, j) - phi(i, j - 1)) / g.dy + 0.5 * g.dy * minmod(dyy_m, dyy_0);
            const double dd = (phi(i, j + 1) - phi(i, j)) / g.dy - 0.5 * g.dy * minmod(dyy_0, dyy_p);

            double gx2, gy2;
            if (phi0(i, j) >= 0.0) {
                gx2 = std::max(std::max(a, 0.0) * std::max(a, 0.0),
                               std::min(b, 0.0) * std::min(b, 0.0));
                gy2 = std::max(std::max(cd, 0.0) * std::max(cd, 0.0),
                               std::min(dd, 0.0) * std::min(dd, 0.0));
            } else {
                gx2 = std::max(std::min(a, 0.0) * std::min(a, 0.0),
                               std::max(b, 0.0) * std::max(b, 0.0));
                gy2 = std::max(std::min(cd, 0.0) * std::min(cd, 0.0),
                               std::max(dd, 0.0) * std::max(dd, 0.0));
            }
            const double grad = std::sqrt(gx2 + gy2);
            const double sgn = phi0(i, j) / std::sqrt(phi0(i, j) * phi0(i, j) + h * h);
            incr[c] = -dtau * sgn * (grad - 1.0);
        }
        for (std::size_t c = 0; c < cells.size(); ++c) phi(cells[c].i, cells[c].j) += incr[c];
        fill_cell_ghosts(phi, g);

        report.iterations = it + 1;
        const double res = residual_now();
        if (res < best_res) {
            best_res = res;
            for (std::size_t c = 0; c < cells.size(); ++c) best[c] = phi(cells[c].i, cells[c].j);
        }
        if (res < params.residual_tol) {
            report.residual = res;
            report.converged = true;
            return report;
        }
    }
    // non-convergence: return best iterate over the band
    for (std::size_t c = 0; c < cells.size(); ++c) phi(cells[c].i, cells[c].j) = best[c];
    fill_cell_ghosts(phi, g);
    report.residual = best_res;
    report.converged = false;
    return report;
}

double eikonal_residual(const CellField& phi, const Grid& g, double band_cells) {
    const double band = band_cells * g.min_spacing();
    double res = 0.0;
    for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
            if (std::abs(phi(i, j)) > band) continue;
            const double gx = (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * g.dx);
            const double gy = (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * g.dy);
            res = std::max(res, std::abs(std::sqrt(gx * gx + gy * gy) - 1.0));
        }
    }
    return res;
}

double negative_phase_area(const CellField& phi, const Grid& g, double width) {
    double area = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) area += 1.0 - smoothed_heaviside(phi(i, j), width);
    return area * g.cell_area();
}

}  // namespace fdfsi
