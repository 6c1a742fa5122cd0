#pragma once

#include "sdym/gauge.hpp"

namespace sdym {

/// Coefficient towers of the fundamental solutions of the linear system:
///   psi_plus  = sum_{k=0..K} lambda^k   xi_k,
///   psi_minus = sum_{k=0..K} lambda^-k  chi_k,
/// as jets at a common base point, normalized to the identity at the base
/// (which fixes the residual holomorphic freedom of the construction).
struct LaxSolution {
    GaugePotential background;  // jet backend
    std::vector<Jet> xi;        // xi_0 .. xi_K
    std::vector<Jet> chi;       // chi_0 .. chi_K
    int lambda_order = 0;

    const Vec4& base() const { return xi.at(0).base(); }
    int rank() const { return xi.at(0).shape(); }

    /// Laurent views. The towers built by the graded recursion have mode-m
    /// content starting at total degree |m| (checked in tests), which the
    /// returned ledger records as degree anchors (0, 0).
    LaurentJet psi_plus() const;
    LaurentJet psi_minus() const;
    LaurentJet psi_plus_inverse() const;
    LaurentJet psi_minus_inverse() const;
};

/// Inverse tower of a unit-leading-coefficient power series
/// (levels[0] invertible as a jet): g_0 = f_0^-1,
/// g_m = -f_0^-1 sum_{j=1..m} f_j g_{m-j}.
std::vector<Jet> power_series_inverse(const std::vector<Jet>& levels);

/// Solve the pair of first-order equations
///   (d_{var1} + a1) u = r1,  (d_{var2} + a2) u = r2
/// degree by degree around the base point, with u(base) = u0 and zero
/// integration constants in the directions annihilated by {var1, var2}
/// (monomials free of both variables beyond the constant are set to zero).
/// The compatibility defect of the reconstruction is written to
/// *compat_residual; it vanishes iff the pair is integrable to this order.
Jet solve_first_order_pair(const Jet& a1, const Jet& a2, int var1, int var2, const Jet& r1,
                           const Jet& r2, const LieMatrix& u0, double* compat_residual);

/// Order-by-order solution of the linear system on a self-dual jet
/// background. Throws if the background fails the self-duality residual at
/// `tol` or if a recursion level is incompatible at that scale.
LaxSolution lax_recursion(const GaugePotential& a, int lambda_order, double tol = 1e-9);

/// Max residual of both linear-system equations applied to the truncated
/// psi towers, over the modes the truncation ledger knows, optionally also
/// evaluated at the given fibre samples.
double verify_linear_system(const GaugePotential& a, const LaxSolution& psi,
                            const std::vector<cplx>& lambda_samples = {});

/// Reads the potential back from the towers via the logarithmic-derivative
/// combinations; asserts that the lambda-expansions truncate to the two
/// leading modes and that both towers yield the same potential. Throws on a
/// non-truncating expansion (corrupted towers).
GaugePotential potentials_from_psi(const LaxSolution& psi, double tol = 1e-8);

/// Transition matrix psi_minus^-1 psi_plus over the Laurent window the
/// ledger can certify.
LaurentJet transition_matrix(const LaxSolution& psi, int mode_budget = kDefaultModeBudget);

}  // namespace sdym
