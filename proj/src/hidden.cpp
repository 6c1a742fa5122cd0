#include "sdym/hidden.hpp"

#include <cmath>
#include <set>

namespace sdym {

GaugeTypeGenerator GaugeTypeGenerator::monomial(int n, const LieMatrix& c, int a, int b) {
    GaugeTypeGenerator g;
    g.rank = c.rank();
    g.label = "l^" + std::to_string(n) + (a ? " w1^" + std::to_string(a) : "") +
              (b ? " w2^" + std::to_string(b) : "") + " c";
    g.terms.push_back({n, a, b, c});
    return g;
}

bool GaugeTypeGenerator::traceless(double tol) const {
    for (const auto& t : terms)
        if (!t.c.is_traceless(tol)) return false;
    return true;
}

LaurentJet GaugeTypeGenerator::expand(const Vec4& base) const {
    LaurentJet acc(Frame::Complex, base, rank, kModePosInf, kModeNegInf, 0, 0);  // exact zero
    const ScalarLaurent w1 = twistor_w1(base);
    const ScalarLaurent w2 = twistor_w2(base);
    const ScalarLaurent one =
        ScalarLaurent::from_jet(ScalarJet::constant(Frame::Complex, base, 1.0, 1));
    for (const auto& t : terms) {
        ScalarLaurent w = one;
        for (int i = 0; i < t.a; ++i) w = mul(w, w1);
        for (int i = 0; i < t.b; ++i) w = mul(w, w2);
        LaurentJet term(Frame::Complex, base, rank, w.support_lo(), w.support_hi(), w.anchor_pos(),
                        w.anchor_neg());
        for (const auto& [m, j] : w.modes()) term.set_mode(m, scalar_times_matrix(j, t.c));
        acc = acc + lambda_shift(term, t.n);
    }
    return acc;
}

GaugeTypeGenerator generator_commutator(const GaugeTypeGenerator& f, const GaugeTypeGenerator& g) {
    GaugeTypeGenerator out;
    out.rank = f.rank;
    out.label = "[" + f.label + "," + g.label + "]";
    for (const auto& s : f.terms)
        for (const auto& t : g.terms) {
            LieMatrix c = commutator(s.c, t.c);
            if (c.max_abs() == 0.0) continue;
            out.terms.push_back({s.n + t.n, s.a + t.a, s.b + t.b, c});
        }
    return out;
}

LaurentJet gauge_action(const LaurentJet& phi_expanded, const LaurentJet& f, int mode_budget) {
    return mul(phi_expanded, f, mode_budget) +
           mul(f, antipodal_adjoint(phi_expanded), mode_budget);
}

LaurentJet gauge_type_delta_F(const GaugeTypeGenerator& phi, const LaurentJet& f, int mode_budget) {
    return gauge_action(phi.expand(f.base()), f, mode_budget);
}

double antipodal_reality_defect(const LaurentJet& f) {
    return (antipodal_adjoint(f) - f).max_norm();
}

double antihermiticity_defect(const Variation& v) {
    double d = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        Jet r = v.rjet(mu);
        d = std::max(d, (adjoint(r) + r).max_coeff_norm(r.valid()));
    }
    return d;
}

namespace {

/// The two adjoint-covariant first-order combinations of a split part:
/// (D_yb - l D_z) p and (D_zb + l D_y) p.
std::pair<LaurentJet, LaurentJet> dbar_combos(const GaugePotential& a, const LaurentJet& p,
                                              int budget) {
    LaurentJet c1 = covariant_derive(a, p, vYb, CovAction::Adjoint, budget) -
                    lambda_shift(covariant_derive(a, p, vZ, CovAction::Adjoint, budget), 1);
    LaurentJet c2 = covariant_derive(a, p, vZb, CovAction::Adjoint, budget) +
                    lambda_shift(covariant_derive(a, p, vY, CovAction::Adjoint, budget), 1);
    return {c1, c2};
}

Jet known_mode(const LaurentJet& f, int m, const char* what) {
    if (f.mode_valid(m) < 0)
        throw std::runtime_error(std::string(what) +
                                 ": required mode not certified by the truncation ledger (mode " +
                                 std::to_string(m) + ")");
    return f.mode(m);
}

HiddenVariation assemble_variation(const GaugePotential& a, const LaxSolution& psi,
                                   const LaurentJet& smooth, int budget, double consistency_tol,
                                   const char* what) {
    HiddenVariation out;
    out.smooth_generator = smooth;
    out.parts = split(smooth);

    auto [p1, p2] = dbar_combos(a, out.parts.plus, budget);
    auto [m1, m2] = dbar_combos(a, out.parts.minus, budget);
    out.identity_residual = std::max((p1 - m1).max_norm(), (p2 - m2).max_norm());
    if (out.identity_residual > consistency_tol)
        throw std::runtime_error(std::string(what) + ": two-sided consistency identities fail (" +
                                 std::to_string(out.identity_residual) + ")");

    std::array<Jet, 4> comps;
    comps[vYb] = known_mode(p1, 0, what);
    comps[vZ] = -known_mode(p1, 1, what);
    comps[vZb] = known_mode(p2, 0, what);
    comps[vY] = known_mode(p2, 1, what);
    out.dA = Variation::from_complex_jets(comps);

    out.delta_psi_plus = -mul(out.parts.plus, psi.psi_plus(), budget);
    out.delta_psi_minus = -mul(out.parts.minus, psi.psi_minus(), budget);
    out.antipodal_real = antipodal_reality_defect(smooth) <= 1e-8;
    return out;
}

}  // namespace

Variation variation_from_plus_part(const GaugePotential& a, const LaurentJet& plus,
                                   int mode_budget) {
    auto [c1, c2] = dbar_combos(a, plus, mode_budget);
    std::array<Jet, 4> comps;
    comps[vYb] = known_mode(c1, 0, "variation_from_plus_part");
    comps[vZ] = -known_mode(c1, 1, "variation_from_plus_part");
    comps[vZb] = known_mode(c2, 0, "variation_from_plus_part");
    comps[vY] = known_mode(c2, 1, "variation_from_plus_part");
    return Variation::from_complex_jets(comps);
}

HiddenVariation gauge_type_variation(const GaugePotential& a, const LaxSolution& psi,
                                     const GaugeTypeGenerator& phi, int mode_budget,
                                     double consistency_tol) {
    const LaurentJet phix = phi.expand(psi.base());
    const LaurentJet pp = psi.psi_plus();
    const LaurentJet pm = psi.psi_minus();
    // Phi = psi_- phi psi_-^{-1} + psi_+ rho(phi) psi_+^{-1}
    LaurentJet big = mul(mul(pm, phix, mode_budget), psi.psi_minus_inverse(), mode_budget) +
                     mul(mul(pp, antipodal_adjoint(phix), mode_budget), psi.psi_plus_inverse(),
                         mode_budget);
    return assemble_variation(a, psi, big, mode_budget, consistency_tol, "gauge_type_variation");
}

HiddenVariation diffeo_type_variation(const GaugePotential& a, const LaxSolution& psi,
                                      const TwistorVectorField& eta, Branch, int mode_budget,
                                      double consistency_tol) {
    const LaurentJet f = transition_matrix(psi, mode_budget);
    const LaurentJet df = apply(eta, f, mode_budget);
    LaurentJet theta = mul(mul(psi.psi_minus(), df, mode_budget), psi.psi_plus_inverse(), mode_budget);
    return assemble_variation(a, psi, theta, mode_budget, consistency_tol, "diffeo_type_variation");
}

Variation cochain_difference(const HiddenVariation& minus_branch,
                             const HiddenVariation& plus_branch) {
    std::array<Jet, 4> comps;
    for (int v = 0; v < 4; ++v) comps[v] = minus_branch.dA.cjet(v) - plus_branch.dA.cjet(v);
    return Variation::from_complex_jets(comps);
}

double action_bracket_check(const GaugeTypeGenerator& phi1, const GaugeTypeGenerator& phi2,
                            const LaurentJet& f, int mode_budget) {
    const LaurentJet x1 = phi1.expand(f.base());
    const LaurentJet x2 = phi2.expand(f.base());
    LaurentJet lhs = gauge_action(x1, gauge_action(x2, f, mode_budget), mode_budget) -
                     gauge_action(x2, gauge_action(x1, f, mode_budget), mode_budget);
    LaurentJet rhs = gauge_type_delta_F(generator_commutator(phi1, phi2), f, mode_budget);
    return (lhs - rhs).max_norm();
}

double derivation_check(const TwistorVectorField& eta, const GaugeTypeGenerator& phi,
                        const LaurentJet& f, int mode_budget) {
    const LaurentJet phix = phi.expand(f.base());
    LaurentJet lhs = apply(eta, gauge_action(phix, f, mode_budget), mode_budget) -
                     gauge_action(phix, apply(eta, f, mode_budget), mode_budget);
    LaurentJet rhs = gauge_action(apply(eta, phix, mode_budget), f, mode_budget);
    return (lhs - rhs).max_norm();
}

double gauge_match_residual(const GaugePotential& a, const Variation& da, int degree) {
    const Vec4& base = a.jet_base();
    const int n = a.rank();
    const auto t = su2_basis();
    if (n != 2) throw std::invalid_argument("gauge_match_residual: su(2) only");

    // Basis of polynomial gauge parameters: monomials (complex frame, degree
    // <= `degree`) times the su(2) directions, with complex coefficients.
    std::vector<Jet> basis;
    Mono m;
    for (int e0 = 0; e0 <= degree; ++e0)
        for (int e1 = 0; e0 + e1 <= degree; ++e1)
            for (int e2 = 0; e0 + e1 + e2 <= degree; ++e2)
                for (int e3 = 0; e0 + e1 + e2 + e3 <= degree; ++e3) {
                    m.e = {uint8_t(e0), uint8_t(e1), uint8_t(e2), uint8_t(e3)};
                    for (int ta = 0; ta < 3; ++ta) {
                        ScalarJet mono(Frame::Complex, base, 1, kExactOrder);
                        mono.set_coeff(m, 1.0);
                        basis.push_back(scalar_times_matrix(mono, t[ta]));
                    }
                }

    // Columns: coefficients of the adjoint covariant derivative of each basis
    // element; right-hand side: coefficients of the variation.
    int cap = kExactOrder;
    for (int v = 0; v < 4; ++v) cap = std::min(cap, da.cjet(v).valid());
    cap = std::min(cap, a.cjet(vY).valid() - 1);

    std::set<Mono, MonoLess> monos;
    for (int v = 0; v < 4; ++v)
        for (const auto& [mm, c] : da.cjet(v).coeffs())
            if (mm.total() <= cap) monos.insert(mm);
    std::vector<std::vector<Jet>> cols;  // cols[j][v]
    for (const auto& b : basis) {
        std::vector<Jet> dcomp;
        for (int v = 0; v < 4; ++v) dcomp.push_back(covariant_derive(a, b, v, CovAction::Adjoint));
        for (int v = 0; v < 4; ++v)
            for (const auto& [mm, c] : dcomp[v].coeffs())
                if (mm.total() <= cap) monos.insert(mm);
        cols.push_back(std::move(dcomp));
    }

    // Flatten into a complex least-squares system.
    std::vector<std::vector<cplx>> rows;
    std::vector<cplx> rhs;
    for (int v = 0; v < 4; ++v)
        for (const auto& mono : monos)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::vector<cplx> row(basis.size());
                    for (size_t k = 0; k < basis.size(); ++k) row[k] = cols[k][v].coeff(mono)(i, j);
                    rows.push_back(std::move(row));
                    rhs.push_back(da.cjet(v).coeff(mono)(i, j));
                }

    // Normal equations with a tiny ridge for rank deficiency.
    const int nb = int(basis.size());
    LieMatrix ata(nb);
    std::vector<cplx> atb(nb, cplx(0.0));
    for (size_t r = 0; r < rows.size(); ++r)
        for (int i = 0; i < nb; ++i) {
            const cplx ri = std::conj(rows[r][i]);
            if (ri == cplx(0.0)) continue;
            for (int j = 0; j < nb; ++j) ata(i, j) += ri * rows[r][j];
            atb[i] += ri * rhs[r];
        }
    for (int i = 0; i < nb; ++i) ata(i, i) += 1e-12;
    LieMatrix inv = inverse(ata);
    std::vector<cplx> coef(nb, cplx(0.0));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) coef[i] += inv(i, j) * atb[j];

    double num = 0.0, den = 0.0;
    for (size_t r = 0; r < rows.size(); ++r) {
        cplx fit = 0.0;
        for (int i = 0; i < nb; ++i) fit += rows[r][i] * coef[i];
        num += std::norm(rhs[r] - fit);
        den += std::norm(rhs[r]);
    }
    return den == 0.0 ? 0.0 : std::sqrt(num / den);
}

}  // namespace sdym
