#include "fdfsi/linear_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fdfsi {

void dense_factor(std::vector<double>& a, std::vector<int>& pivots, int n) {
    pivots.resize(n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double amax = std::abs(a[k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + k]);
            if (v > amax) {
                amax = v;
                piv = r;
            }
        }
        pivots[k] = piv;
        if (piv != k)
            for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
        const double d = a[k * n + k];
        if (d == 0.0) throw std::runtime_error("dense_factor: singular matrix");
        for (int r = k + 1; r < n; ++r) {
            const double m = a[r * n + k] / d;
            a[r * n + k] = m;
            for (int c = k + 1; c < n; ++c) a[r * n + c] -= m * a[k * n + c];
        }
    }
}

void dense_solve(const std::vector<double>& a, const std::vector<int>& pivots, int n,
                 std::vector<double>& x) {
    for (int k = 0; k < n; ++k) {
        if (pivots[k] != k) std::swap(x[k], x[pivots[k]]);
        for (int r = k + 1; r < n; ++r) x[r] -= a[r * n + k] * x[k];
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int c = k + 1; c < n; ++c) x[k] -= a[k * n + c] * x[c];
        x[k] /= a[k * n + k];
    }
}

// ---------------------------------------------------------------------------
// PoissonSolver

PoissonSolver::PoissonSolver(const Grid& g) : grid_(g) {
    const bool per_x = g.bc_x == AxisBc::Periodic;
    const bool per_y = g.bc_y == AxisBc::Periodic;

    int nx = g.nx, ny = g.ny;
    while (true) {
        Level lv;
        lv.nx = nx;
        lv.ny = ny;
        lv.n = nx * ny;
        lv.nb_w.resize(lv.n);
        lv.nb_e.resize(lv.n);
        lv.nb_s.resize(lv.n);
        lv.nb_n.resize(lv.n);
        lv.t_w.assign(lv.n, 0.0);
        lv.t_e.assign(lv.n, 0.0);
        lv.t_s.assign(lv.n, 0.0);
        lv.t_n.assign(lv.n, 0.0);
        lv.diag.assign(lv.n, 0.0);
        lv.x.assign(lv.n, 0.0);
        lv.b.assign(lv.n, 0.0);
        lv.r.assign(lv.n, 0.0);
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const int id = j * nx + i;
                lv.nb_w[id] = (i > 0) ? id - 1 : (per_x ? j * nx + nx - 1 : id);
                lv.nb_e[id] = (i < nx - 1) ? id + 1 : (per_x ? j * nx : id);
                lv.nb_s[id] = (j > 0) ? id - nx : (per_y ? (ny - 1) * nx + i : id);
                lv.nb_n[id] = (j < ny - 1) ? id + nx : (per_y ? i : id);
            }
        }
        const bool cx = nx > 2;
        const bool cy = ny > 2;
        if (lv.n <= 64 || (!cx && !cy)) {
            levels_.push_back(std::move(lv));
            break;
        }
        lv.cix.resize(nx);
        lv.ciy.resize(ny);
        const int ncx = cx ? (nx + 1) / 2 : nx;
        const int ncy = cy ? (ny + 1) / 2 : ny;
        for (int i = 0; i < nx; ++i) lv.cix[i] = cx ? i / 2 : i;
        for (int j = 0; j < ny; ++j) lv.ciy[j] = cy ? j / 2 : j;
        levels_.push_back(std::move(lv));
        nx = ncx;
        ny = ncy;
    }
}

void PoissonSolver::set_coefficients(const FaceField& beta) {
    const Grid& g = grid_;
    Level& l0 = levels_[0];
    const double ax = g.dy / g.dx;  // face area over center distance, per unit depth
    const double ay = g.dx / g.dy;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int id = j * g.nx + i;
            // periodic wrap shares the i=0 / j=0 face; the i=nx / j=ny entries
            // must alias them (enforce_velocity_bc convention).
            double tw = 0.0, te = 0.0, ts = 0.0, tn = 0.0;
            if (i > 0 || g.bc_x == AxisBc::Periodic) tw = beta.u(i, j) * ax;
            if (i < g.nx - 1 || g.bc_x == AxisBc::Periodic) te = beta.u(i + 1, j) * ax;
            if (j > 0 || g.bc_y == AxisBc::Periodic) ts = beta.v(i, j) * ay;
            if (j < g.ny - 1 || g.bc_y == AxisBc::Periodic) tn = beta.v(i, j + 1) * ay;
            l0.t_w[id] = tw;
            l0.t_e[id] = te;
            l0.t_s[id] = ts;
            l0.t_n[id] = tn;
            l0.diag[id] = tw + te + ts + tn;
        }
    }

    // Galerkin coarsening with piecewise-constant aggregates: transmissibilities
    // crossing an aggregate boundary accumulate, intra-aggregate ones vanish.
    for (std::size_t l = 0; l + 1 < levels_.size(); ++l) {
        const Level& f = levels_[l];
        Level& c = levels_[l + 1];
        std::fill(c.t_w.begin(), c.t_w.end(), 0.0);
        std::fill(c.t_e.begin(), c.t_e.end(), 0.0);
        std::fill(c.t_s.begin(), c.t_s.end(), 0.0);
        std::fill(c.t_n.begin(), c.t_n.end(), 0.0);
        for (int j = 0; j < f.ny; ++j) {
            const int cj = f.ciy[j];
            for (int i = 0; i < f.nx; ++i) {
                const int ci = f.cix[i];
                const int fid = j * f.nx + i;
                const int cid = cj * c.nx + ci;
                // east face
                const int ie = (i < f.nx - 1) ? i + 1 : 0;
                const bool east_exists = (i < f.nx - 1) || grid_.bc_x == AxisBc::Periodic;
                if (east_exists && f.cix[ie] != ci) {
                    const int cnb = cj * c.nx + f.cix[ie];
                    c.t_e[cid] += f.t_e[fid];
                    c.t_w[cnb] += f.t_e[fid];
                }
                // north face
                const int jn = (j < f.ny - 1) ? j + 1 : 0;
                const bool north_exists = (j < f.ny - 1) || grid_.bc_y == AxisBc::Periodic;
                if (north_exists && f.ciy[jn] != cj) {
                    const int cnb = f.ciy[jn] * c.nx + ci;
                    c.t_n[cid] += f.t_n[fid];
                    c.t_s[cnb] += f.t_n[fid];
                }
            }
        }
        for (int id = 0; id < c.n; ++id)
            c.diag[id] = c.t_w[id] + c.t_e[id] + c.t_s[id] + c.t_n[id];
    }

    // Dense bottom factor with unknown 0 pinned to remove the constant nullspace.
    const Level& bt = levels_.back();
    const int n = bt.n;
    coarse_matrix_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int id = 0; id < n; ++id) {
        if (id == 0) {
            coarse_matrix_[0] = 1.0;
            continue;
        }
        coarse_matrix_[static_cast<std::size_t>(id) * n + id] = bt.diag[id];
        coarse_matrix_[static_cast<std::size_t>(id) * n + bt.nb_w[id]] -= bt.t_w[id];
        coarse_matrix_[static_cast<std::size_t>(id) * n + bt.nb_e[id]] -= bt.t_e[id];
        coarse_matrix_[static_cast<std::size_t>(id) * n + bt.nb_s[id]] -= bt.t_s[id];
        coarse_matrix_[static_cast<std::size_t>(id) * n + bt.nb_n[id]] -= bt.t_n[id];
    }
    dense_factor(coarse_matrix_, coarse_pivots_, n);
}

void PoissonSolver::smooth(const Level& lv, bool reverse) const {
    auto update = [&](int id) {
        const double d = lv.diag[id];
        if (d <= 0.0) {
            lv.x[id] = 0.0;
            return;
        }
        const double s = lv.t_w[id] * lv.x[lv.nb_w[id]] + lv.t_e[id] * lv.x[lv.nb_e[id]] +
                         lv.t_s[id] * lv.x[lv.nb_s[id]] + lv.t_n[id] * lv.x[lv.nb_n[id]];
        lv.x[id] = (lv.b[id] + s) / d;
    };
    if (!reverse)
        for (int id = 0; id < lv.n; ++id) update(id);
    else
        for (int id = lv.n - 1; id >= 0; --id) update(id);
}

void PoissonSolver::residual(const Level& lv) const {
    for (int id = 0; id < lv.n; ++id) {
        const double ax = lv.diag[id] * lv.x[id] - lv.t_w[id] * lv.x[lv.nb_w[id]] -
                          lv.t_e[id] * lv.x[lv.nb_e[id]] - lv.t_s[id] * lv.x[lv.nb_s[id]] -
                          lv.t_n[id] * lv.x[lv.nb_n[id]];
        lv.r[id] = lv.b[id] - ax;
    }
}

void PoissonSolver::coarse_solve(const Level& lv) const {
    lv.x = lv.b;
    lv.x[0] = 0.0;  // pinned unknown
    dense_solve(coarse_matrix_, coarse_pivots_, lv.n, lv.x);
    remove_mean(lv.x);
}

void PoissonSolver::v_cycle(std::size_t l) const {
    const Level& lv = levels_[l];
    if (l + 1 == levels_.size()) {
        coarse_solve(lv);
        return;
    }
    std::fill(lv.x.begin(), lv.x.end(), 0.0);
    smooth(lv, false);
    residual(lv);

    const Level& cl = levels_[l + 1];
    std::fill(cl.b.begin(), cl.b.end(), 0.0);
    for (int j = 0; j < lv.ny; ++j) {
        const int cj = lv.ciy[j];
        for (int i = 0; i < lv.nx; ++i)
            cl.b[cj * cl.nx + lv.cix[i]] += lv.r[j * lv.nx + i];
    }
    v_cycle(l + 1);
    for (int j = 0; j < lv.ny; ++j) {
        const int cj = lv.ciy[j];
        for (int i = 0; i < lv.nx; ++i)
            lv.x[j * lv.nx + i] += cl.x[cj * cl.nx + lv.cix[i]];
    }
    smooth(lv, true);
}

void PoissonSolver::remove_mean(std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double& x : v) x -= m;
}

SolveStats PoissonSolver::solve(const CellField& rhs, CellField& p, double rtol, double atol,
                                int max_iters) const {
    const Grid& g = grid_;
    const Level& l0 = levels_[0];
    const double vol = g.cell_area();
    const int nx = g.nx, ny = g.ny, n = l0.n;

    std::vector<double> b(n), x(n), r(n), z(n), d(n), q(n);
    double bmax = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            b[j * nx + i] = -rhs(i, j) * vol;
            x[j * nx + i] = p(i, j);
            bmax = std::max(bmax, std::abs(rhs(i, j)));
        }
    remove_mean(b);
    remove_mean(x);
    const double tol_units = std::max(rtol * bmax, atol);  // divergence units
    const double tol_flux = tol_units * vol;

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int id = 0; id < n; ++id) {
            out[id] = l0.diag[id] * in[id] - l0.t_w[id] * in[l0.nb_w[id]] -
                      l0.t_e[id] * in[l0.nb_e[id]] - l0.t_s[id] * in[l0.nb_s[id]] -
                      l0.t_n[id] * in[l0.nb_n[id]];
        }
    };
    auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
        l0.b = in;
        v_cycle(0);
        out = l0.x;
        remove_mean(out);
    };
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& c) {
        double s = 0.0;
        for (int id = 0; id < n; ++id) s += a[id] * c[id];
        return s;
    };
    auto max_abs = [&](const std::vector<double>& a) {
        double s = 0.0;
        for (int id = 0; id < n; ++id) s = std::max(s, std::abs(a[id]));
        return s;
    };

    apply(x, q);
    for (int id = 0; id < n; ++id) r[id] = b[id] - q[id];

    SolveStats stats;
    double rmax = max_abs(r);
    if (rmax <= tol_flux) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) p(i, j) = x[j * nx + i];
        return {0, rmax / vol, true};
    }

    precondition(r, z);
    d = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iters; ++it) {
        apply(d, q);
        const double dq = dot(d, q);
        if (dq <= 0.0) break;
        const double alpha = rz / dq;
        for (int id = 0; id < n; ++id) {
            x[id] += alpha * d[id];
            r[id] -= alpha * q[id];
        }
        stats.iterations = it;
        rmax = max_abs(r);
        if (rmax <= tol_flux) {
            stats.converged = true;
            break;
        }
        precondition(r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int id = 0; id < n; ++id) d[id] = z[id] + beta * d[id];
    }
    stats.residual = rmax / vol;
    remove_mean(x);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) p(i, j) = x[j * nx + i];
    if (!stats.converged) {
        std::ostringstream msg;
        msg << "PoissonSolver: no convergence in " << stats.iterations
            << " iterations, residual=" << stats.residual << " (tol=" << tol_units << ")";
        throw std::runtime_error(msg.str());
    }
    return stats;
}

// ---------------------------------------------------------------------------
// HelmholtzSolver

HelmholtzSolver::HelmholtzSolver(const Grid& g)
    : grid_(g), r_(g), z_(g), d_(g), q_(g), diag_(g) {}

void HelmholtzSolver::apply(const HelmholtzCoefficients& coeff, FaceField& x,
                            FaceField& out) const {
    const Grid& g = grid_;
    fill_velocity_ghosts(x, g);
    const CellField& mu = *coeff.mu_cell;
    const NodeField& mn = *coeff.mu_node;
    const FaceField& a = *coeff.a;
    const double dx = g.dx, dy = g.dy;

    const int ilo = (g.bc_x == AxisBc::Wall) ? 1 : 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = ilo; i <= g.nx - 1; ++i) {
            const double txx_e = 2.0 * mu(i, j) * (x.u(i + 1, j) - x.u(i, j)) / dx;
            const double txx_w = 2.0 * mu(i - 1, j) * (x.u(i, j) - x.u(i - 1, j)) / dx;
            const double txy_n = mn(i, j + 1) * ((x.u(i, j + 1) - x.u(i, j)) / dy +
                                                 (x.v(i, j + 1) - x.v(i - 1, j + 1)) / dx);
            const double txy_s = mn(i, j) * ((x.u(i, j) - x.u(i, j - 1)) / dy +
                                             (x.v(i, j) - x.v(i - 1, j)) / dx);
            const double lu = (txx_e - txx_w) / dx + (txy_n - txy_s) / dy;
            out.u(i, j) = a.u(i, j) * x.u(i, j) - 0.5 * lu;
        }
    }
    const int jlo = (g.bc_y == AxisBc::Wall) ? 1 : 0;
    for (int j = jlo; j <= g.ny - 1; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double tyy_n = 2.0 * mu(i, j) * (x.v(i, j + 1) - x.v(i, j)) / dy;
            const double tyy_s = 2.0 * mu(i, j - 1) * (x.v(i, j) - x.v(i, j - 1)) / dy;
            const double txy_e = mn(i + 1, j) * ((x.u(i + 1, j) - x.u(i + 1, j - 1)) / dy +
                                                 (x.v(i + 1, j) - x.v(i, j)) / dx);
            const double txy_w = mn(i, j) * ((x.u(i, j) - x.u(i, j - 1)) / dy +
                                             (x.v(i, j) - x.v(i - 1, j)) / dx);
            const double lv = (txy_e - txy_w) / dx + (tyy_n - tyy_s) / dy;
            out.v(i, j) = a.v(i, j) * x.v(i, j) - 0.5 * lv;
        }
    }
}

SolveStats HelmholtzSolver::solve(const HelmholtzCoefficients& coeff, const FaceField& rhs,
                                  FaceField& u, double rtol, int max_iters) const {
    const Grid& g = grid_;
    const CellField& mu = *coeff.mu_cell;
    const NodeField& mn = *coeff.mu_node;
    const FaceField& a = *coeff.a;
    const double dx2 = g.dx * g.dx, dy2 = g.dy * g.dy;
    const bool wall_x = g.bc_x == AxisBc::Wall;
    const bool wall_y = g.bc_y == AxisBc::Wall;

    // Jacobi diagonal, with the tangential ghost reflection folded in at walls.
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0) {
            const double fs = (wall_y && j == 0) ? 2.0 : 1.0;
            const double fn = (wall_y && j == g.ny - 1) ? 2.0 : 1.0;
            diag_.u(i, j) = a.u(i, j) + 0.5 * ((2.0 * mu(i, j) + 2.0 * mu(i - 1, j)) / dx2 +
                                               (fn * mn(i, j + 1) + fs * mn(i, j)) / dy2);
        } else {
            const double fw = (wall_x && i == 0) ? 2.0 : 1.0;
            const double fe = (wall_x && i == g.nx - 1) ? 2.0 : 1.0;
            diag_.v(i, j) = a.v(i, j) + 0.5 * ((2.0 * mu(i, j) + 2.0 * mu(i, j - 1)) / dy2 +
                                               (fe * mn(i + 1, j) + fw * mn(i, j)) / dx2);
        }
    });

    auto dof_dot = [&](const FaceField& f1, const FaceField& f2) {
        double s = 0.0;
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            s += (comp == 0) ? f1.u(i, j) * f2.u(i, j) : f1.v(i, j) * f2.v(i, j);
        });
        return s;
    };

    enforce_velocity_bc(u, g);
    apply(coeff, u, q_);
    double bnorm2 = 0.0;
    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0) {
            r_.u(i, j) = rhs.u(i, j) - q_.u(i, j);
            bnorm2 += rhs.u(i, j) * rhs.u(i, j);
        } else {
            r_.v(i, j) = rhs.v(i, j) - q_.v(i, j);
            bnorm2 += rhs.v(i, j) * rhs.v(i, j);
        }
    });
    const double tol2 = rtol * rtol * std::max(bnorm2, 1e-300);

    SolveStats stats;
    double rr = dof_dot(r_, r_);
    if (rr <= tol2) return {0, std::sqrt(rr), true};

    for_each_velocity_dof(g, [&](int comp, int i, int j) {
        if (comp == 0)
            z_.u(i, j) = r_.u(i, j) / diag_.u(i, j);
        else
            z_.v(i, j) = r_.v(i, j) / diag_.v(i, j);
    });
    d_ = z_;
    double rz = dof_dot(r_, z_);

    for (int it = 1; it <= max_iters; ++it) {
        apply(coeff, d_, q_);
        const double dq = dof_dot(d_, q_);
        if (dq <= 0.0) break;
        const double alpha = rz / dq;
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0) {
                u.u(i, j) += alpha * d_.u(i, j);
                r_.u(i, j) -= alpha * q_.u(i, j);
            } else {
                u.v(i, j) += alpha * d_.v(i, j);
                r_.v(i, j) -= alpha * q_.v(i, j);
            }
        });
        stats.iterations = it;
        rr = dof_dot(r_, r_);
        if (rr <= tol2) {
            stats.converged = true;
            break;
        }
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0)
                z_.u(i, j) = r_.u(i, j) / diag_.u(i, j);
            else
                z_.v(i, j) = r_.v(i, j) / diag_.v(i, j);
        });
        const double rz_new = dof_dot(r_, z_);
        const double beta = rz_new / rz;
        rz = rz_new;
        for_each_velocity_dof(g, [&](int comp, int i, int j) {
            if (comp == 0)
                d_.u(i, j) = z_.u(i, j) + beta * d_.u(i, j);
            else
                d_.v(i, j) = z_.v(i, j) + beta * d_.v(i, j);
        });
    }
    stats.residual = std::sqrt(rr);
    enforce_velocity_bc(u, g);
    if (!stats.converged) {
        std::ostringstream msg;
        msg << "HelmholtzSolver: no convergence in " << stats.iterations
            << " iterations, |r|=" << stats.residual << " |b|=" << std::sqrt(bnorm2);
        throw std::runtime_error(msg.str());
    }
    return stats;
}

}  // namespace fdfsi
