#pragma once

#include <vector>

#include "fdfsi/grid.hpp"

namespace fdfsi {

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;  // achieved max-norm residual in caller units
    bool converged = false;
};

/// Cell-centered variable-coefficient Poisson solve
///     div(beta grad p) = rhs
/// with homogeneous Neumann walls / periodic wrap taken from the grid.
/// CG preconditioned by a geometric multigrid V-cycle built on pairwise cell
/// aggregation (odd dimensions keep a single-cell aggregate), symmetric
/// Gauss-Seidel smoothing and a dense bottom solve. The constant nullspace is
/// projected out, so rhs must have zero mean (discrete compatibility).
class PoissonSolver {
  public:
    explicit PoissonSolver(const Grid& g);

    /// beta sampled on faces; wall boundary faces are ignored (zero flux).
    void set_coefficients(const FaceField& beta);

    /// Solves in-place using p as the initial guess. Tolerances are applied to
    /// the residual in rhs units: max|rhs - A p| <= max(rtol*max|rhs|, atol).
    SolveStats solve(const CellField& rhs, CellField& p, double rtol, double atol,
                     int max_iters = 500) const;

  private:
    struct Level {
        int nx = 0, ny = 0, n = 0;
        std::vector<int> nb_w, nb_e, nb_s, nb_n;  // neighbor ids (self-clamped at walls)
        std::vector<double> t_w, t_e, t_s, t_n;   // transmissibilities (zero at walls)
        std::vector<double> diag;
        std::vector<int> cix, ciy;  // per-axis fine->coarse index maps
        mutable std::vector<double> x, b, r;
    };

    void smooth(const Level& lv, bool reverse) const;
    void residual(const Level& lv) const;
    void v_cycle(std::size_t l) const;
    void coarse_solve(const Level& lv) const;
    static void remove_mean(std::vector<double>& v);

    Grid grid_;
    std::vector<Level> levels_;
    std::vector<double> coarse_matrix_;  // dense LU of the pinned bottom-level matrix
    std::vector<int> coarse_pivots_;
};

/// Coefficients for the implicit momentum (Helmholtz) solve
///     [a - 1/2 L_mu] u = rhs,   a = rho_breve/dt + theta*chi/K on faces.
struct HelmholtzCoefficients {
    const FaceField* a = nullptr;        // diagonal face coefficient
    const CellField* mu_cell = nullptr;  // ghosts filled
    const NodeField* mu_node = nullptr;
};

/// Matrix-free Jacobi-preconditioned CG for the coupled velocity Helmholtz
/// system. The operator includes the variable-viscosity symmetric-gradient
/// tensor; wall-normal faces are pinned to zero and excluded from the DOF set.
class HelmholtzSolver {
  public:
    explicit HelmholtzSolver(const Grid& g);

    /// Solves in-place using u as the initial guess. Throws on non-convergence.
    SolveStats solve(const HelmholtzCoefficients& coeff, const FaceField& rhs, FaceField& u,
                     double rtol, int max_iters = 200) const;

  private:
    void apply(const HelmholtzCoefficients& coeff, FaceField& x, FaceField& out) const;

    Grid grid_;
    mutable FaceField r_, z_, d_, q_;
    mutable FaceField diag_;
};

/// Dense Gaussian elimination with partial pivoting; a is n*n row-major and is
/// overwritten with the factorization. Used for the multigrid bottom solve.
void dense_factor(std::vector<double>& a, std::vector<int>& pivots, int n);
void dense_solve(const std::vector<double>& a, const std::vector<int>& pivots, int n,
                 std::vector<double>& x);

}  // namespace fdfsi
