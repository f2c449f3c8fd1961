#include "fdfsi/fsi_ib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdfsi {

namespace {

std::array<double, 4> shape_bbox(const Shape& s) {
    return std::visit(
        [](const auto& sh) -> std::array<double, 4> {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, CircleShape>) {
                return {sh.center[0] - sh.radius, sh.center[0] + sh.radius,
                        sh.center[1] - sh.radius, sh.center[1] + sh.radius};
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                double x0 = std::numeric_limits<double>::max(), x1 = -x0, y0 = x0, y1 = -x0;
                for (const auto& v : sh.vertices) {
                    x0 = std::min(x0, v[0]);
                    x1 = std::max(x1, v[0]);
                    y0 = std::min(y0, v[1]);
                    y1 = std::max(y1, v[1]);
                }
                return {x0, x1, y0, y1};
            } else {
                throw std::invalid_argument("generate_markers: half-plane is not a body");
            }
        },
        s);
}

struct KernelWeights {
    int i0, j0;
    double wx[4], wy[4];
};

// Kernel footprint on a staggered component whose entry (i, j) sits at
// origin + ((i + off_x) dx, (j + off_y) dy).
inline KernelWeights kernel_weights(double x, double y, const Grid& g, double off_x,
                                    double off_y) {
    KernelWeights k;
    const double sx = (x - g.origin[0]) / g.dx - off_x;
    const double sy = (y - g.origin[1]) / g.dy - off_y;
    k.i0 = static_cast<int>(std::floor(sx)) - 1;
    k.j0 = static_cast<int>(std::floor(sy)) - 1;
    for (int m = 0; m < 4; ++m) {
        k.wx[m] = delta4_1d(sx - (k.i0 + m));
        k.wy[m] = delta4_1d(sy - (k.j0 + m));
    }
    return k;
}

void check_margin(const std::array<double, 2>& p, const Grid& g, const char* what) {
    const double mx = 2.0 * g.dx, my = 2.0 * g.dy;
    if (p[0] < g.origin[0] + mx || p[0] > g.origin[0] + g.lx - mx || p[1] < g.origin[1] + my ||
        p[1] > g.origin[1] + g.ly - my)
        throw std::runtime_error(std::string(what) +
                                 ": marker within two cells of the domain boundary");
}

}  // namespace

LagrangianMesh generate_markers(const Shape& shape_body_frame, std::array<double, 2> com_body,
                                const Grid& g, double spacing_factor) {
    LagrangianMesh mesh;
    mesh.ds1 = spacing_factor * g.dx;
    mesh.ds2 = spacing_factor * g.dy;
    mesh.coarse_spacing_warning = spacing_factor > 1.0;

    const auto bb = shape_bbox(shape_body_frame);
    const int n1 = static_cast<int>(std::ceil((bb[1] - bb[0]) / mesh.ds1)) + 1;
    const int n2 = static_cast<int>(std::ceil((bb[3] - bb[2]) / mesh.ds2)) + 1;
    for (int l = 0; l < n1; ++l) {
        for (int m = 0; m < n2; ++m) {
            const double x = bb[0] + (l + 0.5) * mesh.ds1;
            const double y = bb[2] + (m + 0.5) * mesh.ds2;
            if (x > bb[1] || y > bb[3]) continue;
            if (signed_distance(shape_body_frame, x, y) <= 0.0)
                mesh.ref.push_back({x - com_body[0], y - com_body[1]});
        }
    }
    if (mesh.ref.empty()) throw std::runtime_error("generate_markers: empty marker mesh");
    mesh.pos = mesh.ref;
    return mesh;
}

void update_marker_world_positions(LagrangianMesh& mesh, const RigidBodyState& pose) {
    const double a = pose.rotation_angle();
    const double c = std::cos(a), s = std::sin(a);
    mesh.pos.resize(mesh.ref.size());
    for (std::size_t l = 0; l < mesh.ref.size(); ++l) {
        const auto& r = mesh.ref[l];
        mesh.pos[l] = {pose.x_com[0] + c * r[0] - s * r[1], pose.x_com[1] + s * r[0] + c * r[1]};
    }
}

void update_marker_world_positions_midpoint(LagrangianMesh& mesh, const RigidBodyState& pose_a,
                                            const RigidBodyState& pose_b) {
    const double a = 0.5 * (pose_a.rotation_angle() + pose_b.rotation_angle());
    const double cx = 0.5 * (pose_a.x_com[0] + pose_b.x_com[0]);
    const double cy = 0.5 * (pose_a.x_com[1] + pose_b.x_com[1]);
    const double c = std::cos(a), s = std::sin(a);
    mesh.pos.resize(mesh.ref.size());
    for (std::size_t l = 0; l < mesh.ref.size(); ++l) {
        const auto& r = mesh.ref[l];
        mesh.pos[l] = {cx + c * r[0] - s * r[1], cy + s * r[0] + c * r[1]};
    }
}

void update_marker_positions(LagrangianMesh& mesh, const std::vector<std::array<double, 2>>& u_b,
                             double dt, const Grid& g) {
    for (std::size_t l = 0; l < mesh.pos.size(); ++l) {
        mesh.pos[l][0] += dt * u_b[l][0];
        mesh.pos[l][1] += dt * u_b[l][1];
        check_margin(mesh.pos[l], g, "update_marker_positions");
    }
}

std::vector<std::array<double, 2>> interpolate(const FaceField& u, const Grid& g,
                                               const LagrangianMesh& mesh) {
    std::vector<std::array<double, 2>> out(mesh.size());
    for (std::size_t l = 0; l < mesh.size(); ++l) {
        const auto& p = mesh.pos[l];
        check_margin(p, g, "interpolate");
        const auto ku = kernel_weights(p[0], p[1], g, 0.0, 0.5);
        const auto kv = kernel_weights(p[0], p[1], g, 0.5, 0.0);
        double uu = 0.0, vv = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                uu += u.u(ku.i0 + a, ku.j0 + b) * ku.wx[a] * ku.wy[b];
                vv += u.v(kv.i0 + a, kv.j0 + b) * kv.wx[a] * kv.wy[b];
            }
        out[l] = {uu, vv};
    }
    return out;
}

void spread(const std::vector<std::array<double, 2>>& force, const LagrangianMesh& mesh,
            const Grid& g, FaceField& out) {
    const double scale = mesh.cell_weight() / (g.dx * g.dy);
    for (std::size_t l = 0; l < mesh.size(); ++l) {
        const auto& p = mesh.pos[l];
        check_margin(p, g, "spread");
        const auto ku = kernel_weights(p[0], p[1], g, 0.0, 0.5);
        const auto kv = kernel_weights(p[0], p[1], g, 0.5, 0.0);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                out.u(ku.i0 + a, ku.j0 + b) += force[l][0] * ku.wx[a] * ku.wy[b] * scale;
                out.v(kv.i0 + a, kv.j0 + b) += force[l][1] * kv.wx[a] * kv.wy[b] * scale;
            }
    }
}

RedistributedMotion momentum_redistribution(const std::vector<std::array<double, 2>>& u_interp,
                                            const LagrangianMesh& mesh, double rho_s,
                                            std::array<double, 2> com, const DofLocks& locks,
                                            std::array<double, 2> prescribed_u,
                                            double prescribed_w) {
    const double w = mesh.cell_weight();
    double px = 0.0, py = 0.0, lz = 0.0, inertia = 0.0;
    for (std::size_t l = 0; l < mesh.size(); ++l) {
        const double rx = mesh.pos[l][0] - com[0];
        const double ry = mesh.pos[l][1] - com[1];
        px += u_interp[l][0];
        py += u_interp[l][1];
        lz += rx * u_interp[l][1] - ry * u_interp[l][0];
        inertia += rx * rx + ry * ry;
    }
    RedistributedMotion m;
    m.cloud_mass = rho_s * w * static_cast<double>(mesh.size());
    m.cloud_inertia = rho_s * w * inertia;
    m.u_r[0] = rho_s * w * px / m.cloud_mass;
    m.u_r[1] = rho_s * w * py / m.cloud_mass;
    m.w_r = (m.cloud_inertia > 0.0) ? rho_s * w * lz / m.cloud_inertia : 0.0;
    if (locks.x) m.u_r[0] = prescribed_u[0];
    if (locks.y) m.u_r[1] = prescribed_u[1];
    if (locks.rotation) m.w_r = prescribed_w;
    return m;
}

std::vector<std::array<double, 2>> rigid_marker_velocities(const LagrangianMesh& mesh,
                                                           std::array<double, 2> u_r, double w_r,
                                                           std::array<double, 2> com) {
    std::vector<std::array<double, 2>> out(mesh.size());
    for (std::size_t l = 0; l < mesh.size(); ++l) {
        const double rx = mesh.pos[l][0] - com[0];
        const double ry = mesh.pos[l][1] - com[1];
        out[l] = {u_r[0] - w_r * ry, u_r[1] + w_r * rx};
    }
    return out;
}

void velocity_correction(FaceField& u, const Grid& g, const LagrangianMesh& mesh,
                         const std::vector<std::array<double, 2>>& u_b,
                         const std::vector<std::array<double, 2>>& u_interp) {
    std::vector<std::array<double, 2>> du(mesh.size());
    for (std::size_t l = 0; l < mesh.size(); ++l)
        du[l] = {u_b[l][0] - u_interp[l][0], u_b[l][1] - u_interp[l][1]};
    spread(du, mesh, g, u);
}

ForceTorqueIB lagrangian_force_torque(const std::vector<std::array<double, 2>>& u_b_new,
                                      const std::vector<std::array<double, 2>>& u_b_old,
                                      const std::vector<std::array<double, 2>>& du,
                                      const LagrangianMesh& mesh, double rho_s, double dt,
                                      std::array<double, 2> x_com) {
    const double w = mesh.cell_weight();
    ForceTorqueIB ft;
    for (std::size_t l = 0; l < mesh.size(); ++l) {
        const double fx = rho_s * ((u_b_new[l][0] - u_b_old[l][0]) - du[l][0]) / dt * w;
        const double fy = rho_s * ((u_b_new[l][1] - u_b_old[l][1]) - du[l][1]) / dt * w;
        const double rx = mesh.pos[l][0] - x_com[0];
        const double ry = mesh.pos[l][1] - x_com[1];
        ft.force[0] += fx;
        ft.force[1] += fy;
        ft.torque += rx * fy - ry * fx;
    }
    return ft;
}

}  // namespace fdfsi
