#pragma once

#include "sdym/laurent.hpp"
#include "sdym/manifest.hpp"

namespace sdym {

/// Point of the sphere of constant complex structures, with its stereographic
/// fibre coordinate lambda = (s1 + i s2)/(1 + s3).
struct ComplexStructureParams {
    std::array<double, 3> s;
    cplx lambda;

    static ComplexStructureParams from_s(const std::array<double, 3>& s, double tol = 1e-12);
};

/// The complex structure J^nu_mu = s_a etabar^a_{mu sigma} delta^{sigma nu};
/// returned as J[mu][nu]. Satisfies J^2 = -1 for unit s.
std::array<std::array<double, 4>, 4> complex_structure(const std::array<double, 3>& s);

/// Components of the (0,1) frame in the real coordinate basis at fibre
/// coordinate lambda: Vbar_1 = d_ybar - lambda d_z, Vbar_2 = d_zbar + lambda d_y.
std::array<cplx, 4> vbar_components(int a, const cplx& lambda);

/// Apply Vbar_a (a in {1,2}) to a Laurent-jet object, lambda symbolic.
template <class C>
LaurentJetT<C> vbar_apply(int a, const LaurentJetT<C>& f) {
    if (a == 1) return derive(f, vYb) - lambda_shift(derive(f, vZ), 1);
    if (a == 2) return derive(f, vZb) + lambda_shift(derive(f, vY), 1);
    throw std::invalid_argument("vbar_apply: a must be 1 or 2");
}

/// Twistor coordinates w1 = y - lambda zbar, w2 = z + lambda ybar.
std::pair<cplx, cplx> twistor_coords(const Vec4& x, const cplx& lambda);

/// w1, w2 as symbolic Laurent-jet objects at a base point.
ScalarLaurent twistor_w1(const Vec4& base);
ScalarLaurent twistor_w2(const Vec4& base);

/// Two-set cover of the fibre CP^1: C+ = {|l| <= 1+alpha}, C- = {|l| >= 1-alpha},
/// overlap C_alpha = {1-alpha <= |l| <= 1+alpha}.
struct CoverRegion {
    double alpha = 0.5;
    explicit CoverRegion(double a = 0.5) : alpha(a) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("CoverRegion: alpha must be in (0,1)");
    }
    bool in_plus(const cplx& l) const { return std::abs(l) <= 1.0 + alpha; }
    bool in_minus(const cplx& l) const { return std::abs(l) >= 1.0 - alpha; }
    bool in_overlap(const cplx& l) const { return in_plus(l) && in_minus(l); }
    /// Sample circles |lambda| = 1 and 1 +- alpha/2.
    std::vector<cplx> lambda_samples(int per_circle = 16) const;
};

/// Max over stored modes (up to per-mode valid order) of the coefficient
/// norms of Vbar_1 f and Vbar_2 f. Zero iff f is holomorphic up to the
/// truncation recorded in the ledger. Vbar_3 = d_lambdabar is structurally
/// satisfied: the representation carries no lambdabar dependence.
template <class C>
double holomorphy_residual_coeffs(const LaurentJetT<C>& f, int deg_cap = kExactOrder) {
    double r = 0.0;
    for (int a : {1, 2}) {
        LaurentJetT<C> vf = vbar_apply(a, f);
        r = std::max(r, vf.max_norm(kModeNegInf, kModePosInf, deg_cap));
    }
    return r;
}

/// Pointwise version: max |(Vbar_a f)(base, lambda)| over the given samples.
template <class C>
double holomorphy_residual(const LaurentJetT<C>& f, const std::vector<cplx>& samples) {
    double r = 0.0;
    for (int a : {1, 2}) {
        LaurentJetT<C> vf = vbar_apply(a, f);
        for (const auto& l : samples)
            r = std::max(r, JetCoeff<C>::norm(vf.eval(f.base(), l)));
    }
    return r;
}

/// Holomorphic vector field on the twistor space: horizontal components in
/// the complex frame (coefficients of d_y, d_ybar, d_z, d_zbar) plus a
/// vertical component (coefficient of d_lambda), all Laurent polynomials in
/// lambda with polynomial-in-x coefficients at base 0.
struct TwistorVectorField {
    std::string label;
    std::array<ScalarLaurent, 4> horizontal;
    ScalarLaurent vertical;

    TwistorVectorField();
};

TwistorVectorField operator+(const TwistorVectorField& a, const TwistorVectorField& b);
TwistorVectorField operator*(const TwistorVectorField& a, const cplx& s);

/// Multiply by lambda^s (e.g. the generators lambda^{-n} Ntilde).
TwistorVectorField lambda_shift(const TwistorVectorField& vf, int s);

/// The chart change lambda -> 1/lambda: mode windows flip and the vertical
/// component transforms with d_lambda = -lambda'^2 d_lambda'.
TwistorVectorField lambda_invert(const TwistorVectorField& vf);

/// Apply the field as a first-order operator to a Laurent-jet object
/// (components are rebased to f's base point automatically).
LaurentJet apply(const TwistorVectorField& vf, const LaurentJet& f,
                 int mode_budget = kDefaultModeBudget);
ScalarLaurent apply_scalar(const TwistorVectorField& vf, const ScalarLaurent& f,
                           int mode_budget = kDefaultModeBudget);

/// Commutator of twistor vector fields.
TwistorVectorField vf_bracket(const TwistorVectorField& a, const TwistorVectorField& b);

/// Residual of the holomorphy-preservation condition:
/// [vf, Vbar_a] must lie in span{Vbar_1, Vbar_2} for a = 1, 2.
double lift_bracket_residual(const TwistorVectorField& vf);

/// Lift of a conformal vector field N to the twistor space: the horizontal
/// part is N itself; the vertical part is the unique lambda-polynomial
/// solving the holomorphy-preservation condition. Throws if the condition
/// cannot be satisfied (N not conformal or degree above 2).
TwistorVectorField lift_conformal(const ConformalGenerator& n, double tol = 1e-12);

/// Vbar_a as a twistor vector field (for bracket computations).
TwistorVectorField vbar_field(int a);

}  // namespace sdym
