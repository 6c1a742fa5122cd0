#pragma once

#include <string>
#include <vector>

#include "sdym/gauge.hpp"

namespace sdym {

/// Polynomial vector field N = N^nu(x) d_nu on R^4 with exact coefficients,
/// stored in the real frame at base 0. The conformal generators have
/// integer/half-integer coefficient tables of degree <= 2.
struct ConformalGenerator {
    std::string label;
    std::array<ScalarJet, 4> comp;  // real-frame exact polynomials

    /// Evaluate the components at a point.
    std::array<cplx, 4> at(const Vec4& x) const {
        return {eval(comp[0], x), eval(comp[1], x), eval(comp[2], x), eval(comp[3], x)};
    }
};

enum class GenName : uint8_t { X, Y, P, K, B };

/// A single generator of the 15-parameter conformal algebra:
/// X_a, Y_a (a in 0..2), P_mu, K_mu (mu in 0..3), B (index ignored).
ConformalGenerator conformal_generator(GenName name, int index = 0);

/// All 15 generators in canonical order X1..X3, Y1..Y3, P1..P4, K1..K4, B.
std::vector<ConformalGenerator> all_conformal_generators();

/// Exact Lie bracket [N, M]^nu = N^s d_s M^nu - M^s d_s N^nu.
ConformalGenerator vf_bracket(const ConformalGenerator& n, const ConformalGenerator& m);

/// Exact rank test (fraction arithmetic, no tolerance): do all pairwise
/// brackets of `gens` lie in the real linear span of `gens`?
bool brackets_close_in_span(const std::vector<ConformalGenerator>& gens);

/// Max absolute coefficient of the difference N - M (exact polynomials).
double vf_max_diff(const ConformalGenerator& n, const ConformalGenerator& m);

/// Infinitesimal gauge transformation dA_mu = d_mu theta + [A_mu, theta]
/// for a matrix-jet gauge parameter at the potential's base point.
Variation gauge_variation(const GaugePotential& a, const Jet& theta);

/// Lie derivative of a 1-form given by complex-frame component jets:
/// (L_N A)_al = N^be d_be A_al + A_be d_al N^be, evaluated in the complex
/// frame. Used both for conformal variations and for their compositions.
std::array<Jet, 4> lie_derivative_components(const std::array<Jet, 4>& comps,
                                             const ConformalGenerator& n);

/// Infinitesimal conformal transformation of a jet-backed potential.
Variation conformal_variation(const GaugePotential& a, const ConformalGenerator& n);

/// The generator's components as complex-frame scalar jets rebased to `base`.
std::array<ScalarJet, 4> complex_components(const ConformalGenerator& n, const Vec4& base);

}  // namespace sdym
