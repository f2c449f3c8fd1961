#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "fdfsi/levelset.hpp"

namespace fdfsi {

/// Unit quaternion kept alongside the scalar 2D angular state so the rotation
/// bookkeeping matches the 3D-ready formulation (inertia stays in the initial
/// reference frame).
struct Quaternion {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    static Quaternion from_z_rotation(double angle) {
        return {std::cos(0.5 * angle), 0.0, 0.0, std::sin(0.5 * angle)};
    }
    Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
    }
    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    void normalize() {
        const double n = norm();
        w /= n;
        x /= n;
        y /= n;
        z /= n;
    }
    /// Rotation angle about the z axis (valid for z-aligned quaternions).
    double z_angle() const { return 2.0 * std::atan2(z, w); }
    std::array<double, 2> rotate2d(const std::array<double, 2>& v) const {
        const double a = z_angle();
        const double c = std::cos(a), s = std::sin(a);
        return {c * v[0] - s * v[1], s * v[0] + c * v[1]};
    }
};

struct DofLocks {
    bool x = false;
    bool y = false;
    bool rotation = false;
};

enum class MotionKind { Free, Prescribed };

struct RigidBodyState {
    double mass = 0.0;          // kg per unit depth
    double inertia = 0.0;       // kg m^2 per unit depth, about the COM
    std::array<double, 2> x_com{0.0, 0.0};
    std::array<double, 2> u_r{0.0, 0.0};
    double w_r = 0.0;  // counter-clockwise positive
    Quaternion q{};
    DofLocks locks;
    MotionKind kind = MotionKind::Free;
    std::array<double, 2> prescribed_u{0.0, 0.0};
    double prescribed_w = 0.0;
    /// Optional time-dependent prescription (u, v, omega); overrides the
    /// constant prescribed values when set.
    std::function<std::array<double, 3>(double)> prescribed_velocity;

    double rotation_angle() const { return q.z_angle(); }
};

/// Forward-Euler Newton-Euler update. Locked DOFs hold their prescribed
/// velocities; the position update uses the new velocity. The quaternion is
/// advanced by the angular increment and renormalized.
RigidBodyState integrate_free_motion(const RigidBodyState& body, std::array<double, 2> f_hydro,
                                     double m_hydro, std::array<double, 2> gravity, double dt,
                                     double time = 0.0);

/// Position update only (prescribed or externally integrated velocities).
RigidBodyState advance_pose(const RigidBodyState& body, std::array<double, 2> u_eff, double w_eff,
                            double dt);

inline std::array<double, 2> rigid_velocity_at(const RigidBodyState& b, double x, double y) {
    return {b.u_r[0] - b.w_r * (y - b.x_com[1]), b.u_r[1] + b.w_r * (x - b.x_com[0])};
}

struct BodyGeometry {
    double mass = 0.0;
    double inertia = 0.0;
    std::array<double, 2> com{0.0, 0.0};
    double area = 0.0;
};

/// Area-integral mass, centroid and polar moment for circle or polygon shapes
/// at density rho_s (per unit depth). Half-planes and degenerate polygons are
/// configuration errors.
BodyGeometry body_geometry_properties(const Shape& shape, double rho_s);

}  // namespace fdfsi
