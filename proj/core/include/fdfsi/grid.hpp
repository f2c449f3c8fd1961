#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <vector>

namespace fdfsi {

/// Ghost layer width shared by all fields (limited advection stencils need 2).
inline constexpr int kGhost = 2;

enum class AxisBc { Wall, Periodic };

/// Uniform MAC grid covering [origin, origin + (lx, ly)] with nx x ny cells.
/// Cell centers sit at ((i+1/2)dx, (j+1/2)dy) relative to the origin.
struct Grid {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    std::array<double, 2> origin{0.0, 0.0};
    AxisBc bc_x = AxisBc::Wall;
    AxisBc bc_y = AxisBc::Wall;

    Grid() = default;
    Grid(int nx_, int ny_, double lx_, double ly_, std::array<double, 2> origin_ = {0.0, 0.0},
         AxisBc bcx = AxisBc::Wall, AxisBc bcy = AxisBc::Wall);

    std::array<double, 2> cell_center(int i, int j) const {
        return {origin[0] + (i + 0.5) * dx, origin[1] + (j + 0.5) * dy};
    }
    /// Center of the vertical face between cells (i-1,j) and (i,j); i in [0, nx].
    std::array<double, 2> xface_center(int i, int j) const {
        return {origin[0] + i * dx, origin[1] + (j + 0.5) * dy};
    }
    /// Center of the horizontal face between cells (i,j-1) and (i,j); j in [0, ny].
    std::array<double, 2> yface_center(int i, int j) const {
        return {origin[0] + (i + 0.5) * dx, origin[1] + j * dy};
    }
    std::array<double, 2> node(int i, int j) const {
        return {origin[0] + i * dx, origin[1] + j * dy};
    }
    double cell_area() const { return dx * dy; }
    double min_spacing() const { return dx < dy ? dx : dy; }
};

/// Scalar values at cell centers with a kGhost-wide ghost band.
/// Valid index range is [-kGhost, n + kGhost) in each direction.
class CellField {
  public:
    CellField() = default;
    CellField(int nx, int ny, double value = 0.0)
        : nx_(nx), ny_(ny), stride_(nx + 2 * kGhost),
          data_(static_cast<std::size_t>(stride_) * (ny + 2 * kGhost), value) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    void fill(double value) { data_.assign(data_.size(), value); }
    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

  private:
    std::size_t index(int i, int j) const {
        assert(i >= -kGhost && i < nx_ + kGhost && j >= -kGhost && j < ny_ + kGhost);
        return static_cast<std::size_t>(j + kGhost) * stride_ + (i + kGhost);
    }
    int nx_ = 0;
    int ny_ = 0;
    int stride_ = 0;
    std::vector<double> data_;
};

/// One staggered component: (nx+1) x ny values for x-faces or nx x (ny+1) for
/// y-faces, plus ghosts. Indexing follows the face layout of Grid.
class FaceComponent {
  public:
    FaceComponent() = default;
    FaceComponent(int ni, int nj, double value = 0.0)
        : ni_(ni), nj_(nj), stride_(ni + 2 * kGhost),
          data_(static_cast<std::size_t>(stride_) * (nj + 2 * kGhost), value) {}

    int ni() const { return ni_; }
    int nj() const { return nj_; }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    void fill(double value) { data_.assign(data_.size(), value); }

  private:
    std::size_t index(int i, int j) const {
        assert(i >= -kGhost && i < ni_ + kGhost && j >= -kGhost && j < nj_ + kGhost);
        return static_cast<std::size_t>(j + kGhost) * stride_ + (i + kGhost);
    }
    int ni_ = 0;
    int nj_ = 0;
    int stride_ = 0;
    std::vector<double> data_;
};

/// Staggered vector field: u on vertical faces (i in [0,nx], j in [0,ny-1]),
/// v on horizontal faces (i in [0,nx-1], j in [0,ny]).
struct FaceField {
    FaceComponent u;
    FaceComponent v;

    FaceField() = default;
    FaceField(int nx, int ny, double value = 0.0)
        : u(nx + 1, ny, value), v(nx, ny + 1, value) {}
    explicit FaceField(const Grid& g, double value = 0.0) : FaceField(g.nx, g.ny, value) {}

    void fill(double value) {
        u.fill(value);
        v.fill(value);
    }
};

/// Scalar values at grid nodes (i in [0,nx], j in [0,ny]); no ghost band.
class NodeField {
  public:
    NodeField() = default;
    NodeField(int nx, int ny, double value = 0.0)
        : ni_(nx + 1), nj_(ny + 1), data_(static_cast<std::size_t>(ni_) * nj_, value) {}

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * ni_ + i]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(j) * ni_ + i]; }

  private:
    int ni_ = 0;
    int nj_ = 0;
    std::vector<double> data_;
};

/// Ghost fill for cell-centered scalars: periodic wrap or homogeneous Neumann
/// (reflected copy) at walls.
void fill_cell_ghosts(CellField& f, const Grid& g);

/// Ghost fill for velocities at no-slip walls: boundary-normal faces are set
/// to zero, normal ghosts reflect oddly about the wall face, tangential ghosts
/// use linear reflection through the wall value (zero). Periodic axes wrap.
void fill_velocity_ghosts(FaceField& f, const Grid& g);

/// Zero the boundary-normal faces on wall axes and mirror periodic aliases
/// (u(nx,j) = u(0,j) etc.). Call after assembling or updating a velocity DOF set.
void enforce_velocity_bc(FaceField& f, const Grid& g);

/// Loop over velocity degrees of freedom. Pinned wall-normal boundary faces
/// and periodic aliases (i = nx, j = ny) are excluded. comp is 0 for u, 1 for v.
template <class F>
void for_each_velocity_dof(const Grid& g, F&& f) {
    const int ilo = (g.bc_x == AxisBc::Wall) ? 1 : 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = ilo; i <= g.nx - 1; ++i) f(0, i, j);
    const int jlo = (g.bc_y == AxisBc::Wall) ? 1 : 0;
    for (int j = jlo; j <= g.ny - 1; ++j)
        for (int i = 0; i < g.nx; ++i) f(1, i, j);
}

}  // namespace fdfsi
