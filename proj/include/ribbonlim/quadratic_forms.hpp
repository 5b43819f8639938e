#pragma once

#include <Eigen/Dense>

#include <optional>

#include "ribbonlim/errors.hpp"

namespace ribbonlim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Symmetric 2x2 tensor (curvature-like quantities live here).
struct SymMat2 {
    double m11 = 0.0;
    double m12 = 0.0;
    double m22 = 0.0;

    [[nodiscard]] double trace() const { return m11 + m22; }
    [[nodiscard]] double det() const { return m11 * m22 - m12 * m12; }
    [[nodiscard]] Mat2 matrix() const {
        Mat2 m;
        m << m11, m12, m12, m22;
        return m;
    }
};

// Voigt image of a SymMat2: (M11, M22, 2*M12). The doubled shear slot makes
// quadratic forms in this vector match the corresponding tensor contractions.
using Voigt3 = Vec3;

[[nodiscard]] inline Voigt3 voigt(const SymMat2& m) { return Voigt3(m.m11, m.m22, 2.0 * m.m12); }
[[nodiscard]] inline SymMat2 unvoigt(const Voigt3& v) { return SymMat2{v[0], 0.5 * v[2], v[1]}; }

// Fixed symmetric matrix realizing the determinant as a quadratic form:
// det_form(v) = D v . v = v0 v1 - v2^2/4 = det(unvoigt(v)).
[[nodiscard]] Mat3 det_form_matrix();
[[nodiscard]] inline double det_form(const Voigt3& v) {
    return v[0] * v[1] - 0.25 * v[2] * v[2];
}
// Polarization of det_form: d/dl det(m + l k) at l = 0 equals 2*det_bilinear(m, k).
[[nodiscard]] inline double det_bilinear(const Voigt3& m, const Voigt3& k) {
    return 0.5 * (m[0] * k[1] + m[1] * k[0]) - 0.25 * m[2] * k[2];
}

// ---------------------------------------------------------------------------
// Rigidity: positive definite quadratic form on Voigt vectors
// ---------------------------------------------------------------------------

enum class RigidityKind { General, Orthotropic, Isotropic };

struct OrthotropicConstants {
    double k11, k12, k22, k33;
};

class Rigidity {
  public:
    // 3x3 symmetric positive definite matrix, upper-triangle Voigt entries.
    static Rigidity from_voigt(double c11, double c12, double c13, double c22, double c23,
                               double c33);
    static Rigidity from_matrix(const Mat3& c);
    // Orthotropic constants: C = [[K11,K12,0],[K12,K22,0],[0,0,K33]].
    static Rigidity orthotropic(double k11, double k12, double k22, double k33);
    // Isotropic pair (Kmu, Klambda) maps onto orthotropic constants
    // K11 = K22 = Kmu + Klambda, K12 = Klambda, K33 = Kmu / 2.
    static Rigidity isotropic(double kmu, double klambda);

    [[nodiscard]] const Mat3& matrix() const { return c_; }
    [[nodiscard]] RigidityKind kind() const { return kind_; }
    [[nodiscard]] const std::optional<OrthotropicConstants>& orthotropic_constants() const {
        return ortho_;
    }

  private:
    Rigidity(const Mat3& c, RigidityKind kind, std::optional<OrthotropicConstants> ortho);

    Mat3 c_;
    RigidityKind kind_;
    std::optional<OrthotropicConstants> ortho_;
};

// Quadratic form C m . m (value of the bending energy density at unvoigt(m)).
[[nodiscard]] inline double quad(const Rigidity& c, const Voigt3& m) {
    return m.dot(c.matrix() * m);
}

// ---------------------------------------------------------------------------
// Relaxation constants
// ---------------------------------------------------------------------------

struct AlphaPair {
    double plus;
    double minus;
};

// Largest alpha with C + alpha*Dform (resp. C - alpha*Dform) positive
// semidefinite, found by bisection on the smallest eigenvalue of the pencil
// (absolute bracket tolerance 1e-12; bracket grown geometrically).
[[nodiscard]] AlphaPair alpha_constants(const Rigidity& c);

// Closed forms for orthotropic constants; rejects general rigidities.
[[nodiscard]] AlphaPair orthotropic_alphas(const Rigidity& c);

enum class KernelSign { Plus, Minus };

// Unit vector in the kernel of C + alpha_plus*Dform (Plus) or
// C - alpha_minus*Dform (Minus). Any kernel vector m of the plus pencil has
// det_form(m) = -quad(m)/alpha < 0, and of the minus pencil +quad(m)/alpha > 0;
// the full near-kernel basis is scanned for that sign and its absence raises a
// diagnostic. Sign fixed so the first component above 1e-12 is positive.
[[nodiscard]] Voigt3 kernel_direction(const Rigidity& c, KernelSign sign);
// Overload reusing precomputed constants (skips the bisection).
[[nodiscard]] Voigt3 kernel_direction(const Rigidity& c, KernelSign sign, const AlphaPair& alphas,
                                      double threshold_scale = 1.0);

// Smallest eigenvalue of a symmetric 3x3 matrix (used by tests and the CLI).
[[nodiscard]] double min_eigenvalue(const Mat3& a);

} // namespace ribbonlim
