#include "ribbonlim/quadratic_forms.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace ribbonlim {

namespace {

[[nodiscard]] std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void require_spd(const Mat3& c) {
    if ((c - c.transpose()).norm() > 1e-12 * (1.0 + c.norm()))
        throw InputError("quadratic_forms: rigidity matrix is not symmetric");
    const double lmin = min_eigenvalue(c);
    if (!(lmin > 0.0))
        throw InputError("quadratic_forms: rigidity matrix is not positive definite "
                         "(min eigenvalue " +
                         fmt(lmin) + ")");
}

// Deterministic sign fix: first component with magnitude above 1e-12 positive.
Voigt3 fix_sign(Voigt3 v) {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            break;
        }
    }
    return v;
}

} // namespace

Mat3 det_form_matrix() {
    Mat3 d;
    d << 0.0, 0.5, 0.0, //
        0.5, 0.0, 0.0,  //
        0.0, 0.0, -0.25;
    return d;
}

double min_eigenvalue(const Mat3& a) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// ---------------------------------------------------------------------------
// Rigidity
// ---------------------------------------------------------------------------

Rigidity::Rigidity(const Mat3& c, RigidityKind kind, std::optional<OrthotropicConstants> ortho)
    : c_(c), kind_(kind), ortho_(std::move(ortho)) {}

Rigidity Rigidity::from_matrix(const Mat3& c) {
    require_spd(c);
    return Rigidity(c, RigidityKind::General, std::nullopt);
}

Rigidity Rigidity::from_voigt(double c11, double c12, double c13, double c22, double c23,
                              double c33) {
    Mat3 c;
    c << c11, c12, c13, //
        c12, c22, c23,  //
        c13, c23, c33;
    return from_matrix(c);
}

Rigidity Rigidity::orthotropic(double k11, double k12, double k22, double k33) {
    if (!(k11 > 0.0)) throw InputError("orthotropic rigidity: K11 > 0 violated (K11 = " + fmt(k11) + ")");
    if (!(k22 > 0.0)) throw InputError("orthotropic rigidity: K22 > 0 violated (K22 = " + fmt(k22) + ")");
    if (!(k33 > 0.0)) throw InputError("orthotropic rigidity: K33 > 0 violated (K33 = " + fmt(k33) + ")");
    if (!(k12 * k12 < k11 * k22))
        throw InputError("orthotropic rigidity: K12^2 < K11*K22 violated (" + fmt(k12 * k12) +
                         " >= " + fmt(k11 * k22) + ")");
    Mat3 c;
    c << k11, k12, 0.0, //
        k12, k22, 0.0,  //
        0.0, 0.0, k33;
    return Rigidity(c, RigidityKind::Orthotropic, OrthotropicConstants{k11, k12, k22, k33});
}

Rigidity Rigidity::isotropic(double kmu, double klambda) {
    if (!(kmu > 0.0))
        throw InputError("isotropic rigidity: Kmu > 0 violated (Kmu = " + fmt(kmu) + ")");
    if (!(kmu + 2.0 * klambda > 0.0))
        throw InputError("isotropic rigidity: Kmu + 2*Klambda > 0 violated (" +
                         fmt(kmu + 2.0 * klambda) + " <= 0)");
    Rigidity r = orthotropic(kmu + klambda, klambda, kmu + klambda, 0.5 * kmu);
    return Rigidity(r.matrix(), RigidityKind::Isotropic, r.orthotropic_constants());
}

// ---------------------------------------------------------------------------
// Relaxation constants
// ---------------------------------------------------------------------------

namespace {

// Largest alpha >= 0 with min-eig(C + s*alpha*D) >= 0, s = +-1. The smallest
// eigenvalue is concave in alpha and positive at 0, so the admissible set is
// an interval and predicate bisection applies.
double alpha_root(const Mat3& c, double s) {
    const Mat3 d = det_form_matrix();
    const auto lmin = [&](double a) { return min_eigenvalue(c + (s * a) * d); };

    double hi = 1.0;
    int doublings = 0;
    while (lmin(hi) >= 0.0) {
        hi *= 2.0;
        if (++doublings > 200)
            throw NumericalError("quadratic_forms.alpha_constants: bracket never turned "
                                 "indefinite after 200 doublings");
    }
    double lo = 0.0;
    for (int it = 0; it < 400 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (lmin(mid) >= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

AlphaPair alpha_constants(const Rigidity& c) {
    return AlphaPair{alpha_root(c.matrix(), +1.0), alpha_root(c.matrix(), -1.0)};
}

AlphaPair orthotropic_alphas(const Rigidity& c) {
    const auto& k = c.orthotropic_constants();
    if (!k)
        throw InputError("orthotropic_alphas: rigidity has no orthotropic constants "
                         "(general matrix given)");
    const double root = std::sqrt(k->k11 * k->k22);
    return AlphaPair{std::min(4.0 * k->k33, 2.0 * (root - k->k12)), 2.0 * (root + k->k12)};
}

Voigt3 kernel_direction(const Rigidity& c, KernelSign sign, const AlphaPair& alphas,
                        double threshold_scale) {
    const double s = (sign == KernelSign::Plus) ? +1.0 : -1.0;
    const double alpha = (sign == KernelSign::Plus) ? alphas.plus : alphas.minus;
    const Mat3 pencil = c.matrix() + (s * alpha) * det_form_matrix();

    Eigen::SelfAdjointEigenSolver<Mat3> es(pencil);
    const double threshold = 1e-8 * c.matrix().norm() * threshold_scale;
    const double residual_tol = 1e-8 * std::max(1.0, c.matrix().norm());

    // Plus-pencil kernel vectors have det_form < 0, minus-pencil > 0; scan the
    // near-kernel basis (ascending eigenvalue magnitude) for that sign.
    std::vector<double> dets;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(es.eigenvalues()(i)) > threshold) continue;
        const Voigt3 v = fix_sign(es.eigenvectors().col(i).normalized());
        const double dv = det_form(v);
        dets.push_back(dv);
        const bool sign_ok = (sign == KernelSign::Plus) ? (dv < 0.0) : (dv > 0.0);
        if (!sign_ok) continue;
        if ((pencil * v).norm() > residual_tol)
            throw NumericalError("quadratic_forms.kernel_direction: kernel residual " +
                                 fmt((pencil * v).norm()) + " exceeds tolerance");
        return v;
    }
    if (dets.empty())
        throw NumericalError("quadratic_forms.kernel_direction: no eigenvalue below the "
                             "kernel threshold; alpha constants look misconverged");
    std::string list;
    for (double dv : dets) list += (list.empty() ? "" : ", ") + fmt(dv);
    throw NumericalError(std::string("quadratic_forms.kernel_direction: no kernel vector with ") +
                         (sign == KernelSign::Plus ? "negative" : "positive") +
                         " det_form (kernel basis dets: " + list + ")");
}

Voigt3 kernel_direction(const Rigidity& c, KernelSign sign) {
    return kernel_direction(c, sign, alpha_constants(c));
}

} // namespace ribbonlim
