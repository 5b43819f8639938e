#pragma once

#include "ribbonlim/quadratic_forms.hpp"

namespace ribbonlim {

// Pointwise relaxation data: rigidity C and determinant constraint level z.
// Alpha constants are computed once at construction.
struct RelaxationProblem {
    RelaxationProblem(Rigidity c, double z_) : C(std::move(c)), z(z_), alphas(alpha_constants(C)) {}

    Rigidity C;
    double z;
    AlphaPair alphas;
};

// Convex envelope of quad(C, .) restricted to {det_form = z}:
//   quad(m) + alpha_plus*(det m - z)^+ + alpha_minus*(det m - z)^-.
[[nodiscard]] double relaxed_integrand(const RelaxationProblem& p, const Voigt3& m);

// Two-point certificate: endpoints on the constraint whose theta-average is m
// and whose energy average attains relaxed_integrand(m).
struct Decomposition {
    Voigt3 a;
    Voigt3 b;
    double theta; // weight of b; (1-theta) a + theta b = m
    double value; // (1-theta) quad(a) + theta quad(b)
};

[[nodiscard]] Decomposition two_point_decomposition(const RelaxationProblem& p, const Voigt3& m);

// Independent check of the envelope: discrete double Legendre transform of
// the constrained integrand over the cube of half-width `radius`, sampling
// {det_form = z} at axis resolution 2*radius/n with the third component
// solved exactly. The discrete envelope converges to relaxed_integrand from
// above with error O(radius/n), and the level-n sample set is contained in
// the level-2n one, so values never increase when n doubles.
// Requires n >= 16 and |m| < radius/2.
[[nodiscard]] double brute_force_biconjugate(const RelaxationProblem& p, const Voigt3& m,
                                             double radius, int n);

} // namespace ribbonlim
