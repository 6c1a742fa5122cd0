#pragma once

#include "sdym/lax.hpp"
#include "sdym/riemann_hilbert.hpp"
#include "sdym/twistor.hpp"

namespace sdym {

/// Gauge-type symmetry generator: a matrix-valued Laurent polynomial in the
/// fibre coordinate with polynomial coefficients in the twistor coordinates,
///   phi = sum_t lambda^{n_t} w1^{a_t} w2^{b_t} c_t,
/// holomorphic on the overlap region by construction.
struct GaugeTypeGenerator {
    struct Term {
        int n = 0;  // lambda power
        int a = 0;  // w1 power
        int b = 0;  // w2 power
        LieMatrix c;
    };
    std::string label;
    int rank = 2;
    std::vector<Term> terms;

    static GaugeTypeGenerator monomial(int n, const LieMatrix& c, int a = 0, int b = 0);
    bool traceless(double tol = kTolExact) const;

    /// Expansion as a Laurent-jet object at a base point (exact).
    LaurentJet expand(const Vec4& base) const;
};

/// Pointwise commutator of two generators (mode-table level).
GaugeTypeGenerator generator_commutator(const GaugeTypeGenerator& f, const GaugeTypeGenerator& g);

/// The action of a generator on a transition-matrix-like object:
///   delta F = phi(lambda) F + F phi^dagger(-1/lambdabar),
/// with the antipodal conjugate realized as a window flip on mode tables.
LaurentJet gauge_action(const LaurentJet& phi_expanded, const LaurentJet& f,
                        int mode_budget = kDefaultModeBudget);

LaurentJet gauge_type_delta_F(const GaugeTypeGenerator& phi, const LaurentJet& f,
                              int mode_budget = kDefaultModeBudget);

/// Antipodal reality defect of a smooth generator: || rho(f) - f || over the
/// modes known on both sides. Zero marks generators whose action preserves
/// anti-Hermiticity of the potential.
double antipodal_reality_defect(const LaurentJet& f);

/// Anti-Hermiticity defect of a jet-backed variation (coefficient-wise).
double antihermiticity_defect(const Variation& v);

/// Result of a hidden-symmetry variation.
struct HiddenVariation {
    Variation dA;
    LaurentJet delta_psi_plus;   // - split.plus  * psi_plus
    LaurentJet delta_psi_minus;  // - split.minus * psi_minus
    LaurentJet smooth_generator;  // Phi (gauge type) or theta (diffeo type)
    SplitPair parts;
    double identity_residual = 0.0;  // two-sided first-order-system defect
    bool antipodal_real = false;
};

/// Contour extraction of a variation from a given plus part:
///   dA_yb = [D_yb p - l D_z p]_0,   dA_z = -[D_yb p - l D_z p]_1,
///   dA_zb = [D_zb p + l D_y p]_0,   dA_y = +[D_zb p + l D_y p]_1,
/// with the adjoint covariant derivative.
Variation variation_from_plus_part(const GaugePotential& a, const LaurentJet& plus,
                                   int mode_budget = kDefaultModeBudget);

/// Gauge-type hidden symmetry: assembles
///   Phi = psi_minus phi psi_minus^-1 + psi_plus rho(phi) psi_plus^-1,
/// splits it, and evaluates the contour formulas. Throws if the two-sided
/// consistency identities fail at `consistency_tol` or the variation modes
/// are not certified by the truncation ledger.
HiddenVariation gauge_type_variation(const GaugePotential& a, const LaxSolution& psi,
                                     const GaugeTypeGenerator& phi,
                                     int mode_budget = kDefaultModeBudget,
                                     double consistency_tol = 1e-6);

enum class Branch : uint8_t { Plus, Minus };

/// Diffeomorphism-type hidden symmetry for a generator eta attached to one
/// patch of the cover: theta = psi_minus (eta(F)) psi_plus^-1, split and
/// contour-extracted exactly like the gauge type. The two branch actions of
/// a 0-cochain {eta_plus, eta_minus} share this formula; their difference
/// delta = delta^- - delta^+ pairs with overlap-region generators.
HiddenVariation diffeo_type_variation(const GaugePotential& a, const LaxSolution& psi,
                                      const TwistorVectorField& eta, Branch branch = Branch::Plus,
                                      int mode_budget = kDefaultModeBudget,
                                      double consistency_tol = 1e-6);

/// Difference of two branch results (the combined delta^- - delta^+ action).
Variation cochain_difference(const HiddenVariation& minus_branch,
                             const HiddenVariation& plus_branch);

/// || [delta_phi1, delta_phi2] F - delta_[phi1,phi2] F || by first-order
/// composition of the actions on F, over the jointly known window.
double action_bracket_check(const GaugeTypeGenerator& phi1, const GaugeTypeGenerator& phi2,
                            const LaurentJet& f, int mode_budget = kDefaultModeBudget);

/// || (delta_eta delta_phi - delta_phi delta_eta) F - delta_{eta(phi)} F ||.
/// Valid for vector fields commuting with the antipodal involution (the
/// conformal lifts do).
double derivation_check(const TwistorVectorField& eta, const GaugeTypeGenerator& phi,
                        const LaurentJet& f, int mode_budget = kDefaultModeBudget);

/// Relative residual of the best least-squares match of a variation by a
/// manifest gauge variation with a polynomial parameter of the given degree.
/// Records the empirical answer to whether a hidden variation is manifestly
/// gauge-equivalent; returns ||dA - D theta*|| / ||dA||.
double gauge_match_residual(const GaugePotential& a, const Variation& da, int degree = 2);

}  // namespace sdym
