#include "fdfsi/rigid_body.hpp"

#include <stdexcept>

namespace fdfsi {

namespace {

void apply_prescription(RigidBodyState& b, double time) {
    if (b.prescribed_velocity) {
        const auto p = b.prescribed_velocity(time);
        b.prescribed_u = {p[0], p[1]};
        b.prescribed_w = p[2];
    }
}

}  // namespace

RigidBodyState integrate_free_motion(const RigidBodyState& body, std::array<double, 2> f_hydro,
                                     double m_hydro, std::array<double, 2> gravity, double dt,
                                     double time) {
    if (body.mass <= 0.0 || body.inertia <= 0.0)
        throw std::invalid_argument("integrate_free_motion: mass and inertia must be positive");
    RigidBodyState b = body;
    apply_prescription(b, time);

    const bool all_prescribed = b.kind == MotionKind::Prescribed;
    b.u_r[0] = (all_prescribed || b.locks.x) ? b.prescribed_u[0]
                                             : b.u_r[0] + dt * (f_hydro[0] / b.mass + gravity[0]);
    b.u_r[1] = (all_prescribed || b.locks.y) ? b.prescribed_u[1]
                                             : b.u_r[1] + dt * (f_hydro[1] / b.mass + gravity[1]);
    b.w_r = (all_prescribed || b.locks.rotation) ? b.prescribed_w : b.w_r + dt * m_hydro / b.inertia;

    return advance_pose(b, b.u_r, b.w_r, dt);
}

RigidBodyState advance_pose(const RigidBodyState& body, std::array<double, 2> u_eff, double w_eff,
                            double dt) {
    RigidBodyState b = body;
    b.x_com[0] += dt * u_eff[0];
    b.x_com[1] += dt * u_eff[1];
    b.q = Quaternion::from_z_rotation(dt * w_eff) * b.q;
    b.q.normalize();
    return b;
}

BodyGeometry body_geometry_properties(const Shape& shape, double rho_s) {
    return std::visit(
        [&](const auto& s) -> BodyGeometry {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CircleShape>) {
                BodyGeometry g;
                g.area = M_PI * s.radius * s.radius;
                g.mass = rho_s * g.area;
                g.inertia = 0.5 * g.mass * s.radius * s.radius;
                g.com = s.center;
                return g;
            } else if constexpr (std::is_same_v<T, PolygonShape>) {
                const auto& v = s.vertices;
                const int n = static_cast<int>(v.size());
                if (n < 3) throw std::invalid_argument("body_geometry_properties: degenerate polygon");
                double a2 = 0.0, cx = 0.0, cy = 0.0, iz = 0.0;
                for (int i = 0, j = n - 1; i < n; j = i++) {
                    const double cr = v[j][0] * v[i][1] - v[i][0] * v[j][1];
                    a2 += cr;
                    cx += (v[j][0] + v[i][0]) * cr;
                    cy += (v[j][1] + v[i][1]) * cr;
                    iz += cr * (v[j][0] * v[j][0] + v[j][0] * v[i][0] + v[i][0] * v[i][0] +
                                v[j][1] * v[j][1] + v[j][1] * v[i][1] + v[i][1] * v[i][1]);
                }
                const double area = 0.5 * a2;
                if (std::abs(area) < 1e-300)
                    throw std::invalid_argument("body_geometry_properties: degenerate polygon");
                BodyGeometry g;
                g.area = std::abs(area);
                g.mass = rho_s * g.area;
                g.com = {cx / (6.0 * area), cy / (6.0 * area)};
                const double iz_origin = rho_s * iz / 12.0;
                g.inertia = std::abs(iz_origin) -
                            g.mass * (g.com[0] * g.com[0] + g.com[1] * g.com[1]);
                return g;
            } else {
                throw std::invalid_argument(
                    "body_geometry_properties: half-plane has no finite mass properties");
            }
        },
        shape);
}

}  // namespace fdfsi
