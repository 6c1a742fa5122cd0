#include "sdym/lax.hpp"

#include <cmath>

namespace sdym {

namespace {

LaurentJet tower_view(const std::vector<Jet>& levels, int direction) {
    const Jet& j0 = levels.at(0);
    LaurentJet out(j0.frame(), j0.base(), j0.shape(), direction > 0 ? 0 : kModeNegInf,
                   direction > 0 ? kModePosInf : 0, 0, 0);
    for (size_t k = 0; k < levels.size(); ++k) out.set_mode(direction * int(k), levels[k]);
    return out;
}

}  // namespace

LaurentJet LaxSolution::psi_plus() const { return tower_view(xi, +1); }
LaurentJet LaxSolution::psi_minus() const { return tower_view(chi, -1); }
LaurentJet LaxSolution::psi_plus_inverse() const { return tower_view(power_series_inverse(xi), +1); }
LaurentJet LaxSolution::psi_minus_inverse() const {
    return tower_view(power_series_inverse(chi), -1);
}

std::vector<Jet> power_series_inverse(const std::vector<Jet>& levels) {
    std::vector<Jet> g;
    g.reserve(levels.size());
    Jet g0 = reciprocal(levels.at(0), levels.at(0).valid());
    g.push_back(g0);
    for (size_t m = 1; m < levels.size(); ++m) {
        Jet acc(g0.frame(), g0.base(), g0.shape(), g0.valid());
        for (size_t j = 1; j <= m; ++j) acc += levels[j] * g[m - j];
        g.push_back(-(g0 * acc));
    }
    return g;
}

Jet solve_first_order_pair(const Jet& a1, const Jet& a2, int var1, int var2, const Jet& r1,
                           const Jet& r2, const LieMatrix& u0, double* compat_residual) {
    a1.require_compatible(a2);
    const int shape = a1.shape();
    const int order = std::min({a1.valid(), a2.valid(),
                                std::min(r1.valid(), r2.valid()) >= kExactOrder
                                    ? kExactOrder - 1
                                    : std::min(r1.valid(), r2.valid())}) +
                      1;
    if (order > 256)
        throw std::invalid_argument(
            "solve_first_order_pair: unbounded solve order; truncate the inputs");
    Jet u(a1.frame(), a1.base(), shape, order);
    u.set_coeff(Mono{}, u0);

    for (int d = 0; d < order; ++d) {
        // Right-hand sides of d_var u = ... at homogeneous degree d, using the
        // parts of u already determined (degrees <= d).
        Jet rhs1 = r1 - a1 * u;
        Jet rhs2 = r2 - a2 * u;
        // u_{d+1} via the graded homotopy: each monomial of
        // var1*rhs1 + var2*rhs2 is divided by its total power of {var1, var2}.
        for (const auto& [m, c] : rhs1.coeffs()) {
            if (m.total() != d) continue;
            Mono t = m;
            t.e[var1] += 1;
            const double w = double(t.e[var1]) + double(t.e[var2]);
            u.set_coeff(t, u.coeff(t) + c * cplx(1.0 / w));
        }
        for (const auto& [m, c] : rhs2.coeffs()) {
            if (m.total() != d) continue;
            Mono t = m;
            t.e[var2] += 1;
            const double w = double(t.e[var1]) + double(t.e[var2]);
            u.set_coeff(t, u.coeff(t) + c * cplx(1.0 / w));
        }
    }

    if (compat_residual) {
        const int check = order - 1;
        Jet d1 = derive(u, var1) - (r1 - a1 * u).truncated(check);
        Jet d2 = derive(u, var2) - (r2 - a2 * u).truncated(check);
        *compat_residual = std::max(d1.max_coeff_norm(check), d2.max_coeff_norm(check));
    }
    return u;
}

LaxSolution lax_recursion(const GaugePotential& a, int lambda_order, double tol) {
    if (!a.has_jets()) throw std::invalid_argument("lax_recursion: jet backend required");
    if (lambda_order < 0) throw std::invalid_argument("lax_recursion: negative lambda order");
    const double sd = sdym_residual(a);
    if (sd > tol)
        throw std::runtime_error("lax_recursion: background is not self-dual (residual " +
                                 std::to_string(sd) + ")");

    const int n = a.rank();
    const LieMatrix one = LieMatrix::identity(n);
    const LieMatrix zero = LieMatrix::zero(n);
    const Jet &ay = a.cjet(vY), &ayb = a.cjet(vYb), &az = a.cjet(vZ), &azb = a.cjet(vZb);
    const Jet zero_jet = Jet::constant(Frame::Complex, a.jet_base(), zero, n);

    auto dfund = [&](const Jet& av, int var, const Jet& f) { return derive(f, var) + av * f; };

    LaxSolution out;
    out.background = a;
    out.lambda_order = lambda_order;

    double res = 0.0;
    // psi_plus tower: D_yb xi_0 = 0, D_zb xi_0 = 0,
    //                 D_yb xi_k = D_z xi_{k-1}, D_zb xi_k = -D_y xi_{k-1}.
    out.xi.push_back(solve_first_order_pair(ayb, azb, vYb, vZb, zero_jet, zero_jet, one, &res));
    if (res > tol) throw std::runtime_error("lax_recursion: level-0 compatibility failure");
    for (int k = 1; k <= lambda_order; ++k) {
        const Jet& prev = out.xi.back();
        Jet r1 = dfund(az, vZ, prev);
        Jet r2 = -dfund(ay, vY, prev);
        out.xi.push_back(solve_first_order_pair(ayb, azb, vYb, vZb, r1, r2, zero, &res));
        if (res > tol)
            throw std::runtime_error("lax_recursion: compatibility failure at level " +
                                     std::to_string(k) + " (residual " + std::to_string(res) + ")");
    }
    // psi_minus tower: D_z chi_0 = 0, D_y chi_0 = 0,
    //                  D_z chi_{k+1} = D_yb chi_k, D_y chi_{k+1} = -D_zb chi_k.
    out.chi.push_back(solve_first_order_pair(az, ay, vZ, vY, zero_jet, zero_jet, one, &res));
    if (res > tol) throw std::runtime_error("lax_recursion: level-0 compatibility failure (minus)");
    for (int k = 1; k <= lambda_order; ++k) {
        const Jet& prev = out.chi.back();
        Jet r1 = dfund(ayb, vYb, prev);
        Jet r2 = -dfund(azb, vZb, prev);
        out.chi.push_back(solve_first_order_pair(az, ay, vZ, vY, r1, r2, zero, &res));
        if (res > tol)
            throw std::runtime_error("lax_recursion: compatibility failure at minus level " +
                                     std::to_string(k));
    }
    return out;
}

double verify_linear_system(const GaugePotential& a, const LaxSolution& psi,
                            const std::vector<cplx>& lambda_samples) {
    double res = 0.0;
    for (const LaurentJet& p : {psi.psi_plus(), psi.psi_minus()}) {
        LaurentJet e1 = covariant_derive(a, p, vYb, CovAction::Fundamental) -
                        lambda_shift(covariant_derive(a, p, vZ, CovAction::Fundamental), 1);
        LaurentJet e2 = covariant_derive(a, p, vZb, CovAction::Fundamental) +
                        lambda_shift(covariant_derive(a, p, vY, CovAction::Fundamental), 1);
        for (const LaurentJet& e : {e1, e2}) {
            res = std::max(res, e.max_norm());
            for (const auto& l : lambda_samples)
                res = std::max(res, e.eval(psi.base(), l).norm());
        }
    }
    return res;
}

namespace {

/// The two logarithmic-derivative combinations of a tower; true content is
/// modes {0, 1} only. Returns (combo1, combo2) =
/// ((d_yb psi - l d_z psi) psi^-1, (d_zb psi + l d_y psi) psi^-1).
std::pair<LaurentJet, LaurentJet> log_derivative_combos(const LaurentJet& p, const LaurentJet& pinv) {
    LaurentJet n1 = derive(p, vYb) - lambda_shift(derive(p, vZ), 1);
    LaurentJet n2 = derive(p, vZb) + lambda_shift(derive(p, vY), 1);
    return {mul(n1, pinv), mul(n2, pinv)};
}

void check_truncation(const LaurentJet& g, int lo_ok, int hi_ok, double tol, const char* what) {
    for (const auto& [m, j] : g.modes()) {
        if (m >= lo_ok && m <= hi_ok) continue;
        const double v = j.max_coeff_norm(j.valid());
        if (v > tol)
            throw std::runtime_error(std::string("potentials_from_psi: non-truncating expansion (") +
                                     what + ", mode " + std::to_string(m) + ", norm " +
                                     std::to_string(v) + ")");
    }
}

}  // namespace

GaugePotential potentials_from_psi(const LaxSolution& psi, double tol) {
    auto [g1, g2] = log_derivative_combos(psi.psi_plus(), psi.psi_plus_inverse());
    // g1 = -(A_yb - l A_z), g2 = -(A_zb + l A_y)
    check_truncation(g1, 0, 1, tol, "plus tower");
    check_truncation(g2, 0, 1, tol, "plus tower");
    std::array<Jet, 4> comps;
    comps[vYb] = -g1.mode(0);
    comps[vZ] = g1.mode(1);
    comps[vZb] = -g2.mode(0);
    comps[vY] = -g2.mode(1);

    auto [h1, h2] = log_derivative_combos(psi.psi_minus(), psi.psi_minus_inverse());
    check_truncation(h1, 0, 1, tol, "minus tower");
    check_truncation(h2, 0, 1, tol, "minus tower");
    const double agree = std::max(
        {max_diff(comps[vYb], -h1.mode(0), std::min(comps[vYb].valid(), h1.mode_valid(0))),
         max_diff(comps[vZ], h1.mode(1), std::min(comps[vZ].valid(), h1.mode_valid(1))),
         max_diff(comps[vZb], -h2.mode(0), std::min(comps[vZb].valid(), h2.mode_valid(0))),
         max_diff(comps[vY], -h2.mode(1), std::min(comps[vY].valid(), h2.mode_valid(1)))});
    if (agree > tol)
        throw std::runtime_error("potentials_from_psi: plus and minus towers disagree (" +
                                 std::to_string(agree) + ")");

    FamilyInfo meta = psi.background.meta();
    meta.family = "custom";
    return GaugePotential::from_complex_jets(comps, meta);
}

LaurentJet transition_matrix(const LaxSolution& psi, int mode_budget) {
    return mul(psi.psi_minus_inverse(), psi.psi_plus(), mode_budget);
}

}  // namespace sdym
