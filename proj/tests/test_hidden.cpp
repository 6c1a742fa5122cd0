#include <cmath>

#include "doctest.h"
#include "sdym/hidden.hpp"
#include "test_util.hpp"

using namespace sdym;

namespace {
const Vec4 kCenter{0.1, -0.2, 0.3, 0.0};
const Vec4 kBase{0.6, 0.4, -0.5, 0.7};

struct Setup {
    GaugePotential a;
    LaxSolution psi;
    LaurentJet f;
    Setup() : a(to_jets(bpst_instanton(kCenter, 1.3), kBase, 6)), psi(lax_recursion(a, 3)),
              f(transition_matrix(psi)) {}
};

const Setup& setup() {
    static Setup s;
    return s;
}
}  // namespace

TEST_CASE("gauge-type action on the transition matrix") {
    const auto t = su2_basis();

    // phi = 0
    GaugeTypeGenerator zero;
    zero.rank = 2;
    CHECK(gauge_type_delta_F(zero, setup().f).max_norm() == 0.0);

    // F = identity, phi = lambda T: delta F = lambda T - lambda^-1 T^dagger
    LaurentJet one = LaurentJet::from_jet(
        Jet::constant(Frame::Complex, kBase, LieMatrix::identity(2), 2).truncated(6));
    auto phi = GaugeTypeGenerator::monomial(1, t[0]);
    LaurentJet df = gauge_type_delta_F(phi, one);
    CHECK((df.mode(1).coeff(Mono{}) - t[0]).max_abs() < 1e-15);
    CHECK((df.mode(-1).coeff(Mono{}) + dagger(t[0])).max_abs() < 1e-15);
    CHECK(df.mode(0).max_coeff_norm() == 0.0);

    // holomorphy is preserved on a curved background
    LaurentJet dfb = gauge_type_delta_F(phi, setup().f);
    CHECK(holomorphy_residual_coeffs(dfb) < 1e-10);
    auto phiw = GaugeTypeGenerator::monomial(0, t[1], /*a=*/1, /*b=*/0);
    CHECK(holomorphy_residual_coeffs(gauge_type_delta_F(phiw, setup().f)) < 1e-10);
}

TEST_CASE("manual split injection reproduces the manifest gauge variation") {
    const auto& s = setup();
    Rng rng(113);
    // theta: random anti-Hermitian polynomial parameter
    Jet theta(Frame::Complex, kBase, 2, kExactOrder);
    const auto t = su2_basis();
    for (int a = 0; a < 3; ++a) {
        ScalarJet p(Frame::Real, Vec4{0, 0, 0, 0}, 1, kExactOrder);
        Mono m;
        for (int e0 = 0; e0 <= 1; ++e0)
            for (int e1 = 0; e0 + e1 <= 1; ++e1) {
                m.e = {uint8_t(e0), uint8_t(e1), 0, 0};
                p.set_coeff(m, std::round(rng.uniform(-8, 8)) / 8.0);
            }
        theta += scalar_times_matrix(to_complex_frame(rebase(p, kBase)), t[a]);
    }

    Variation via_split = variation_from_plus_part(s.a, LaurentJet::from_jet(theta.truncated(6)));
    Variation direct = gauge_variation(s.a, theta.truncated(6));
    for (int v = 0; v < 4; ++v)
        CHECK(max_diff(via_split.cjet(v), direct.cjet(v), 5) < 1e-12);
}

TEST_CASE("loop-algebra variations on the trivial background vanish") {
    GaugePotential z = to_jets(zero_potential(2), kBase, 6);
    LaxSolution psi = lax_recursion(z, 3);
    const auto t = su2_basis();

    auto hv = gauge_type_variation(z, psi, GaugeTypeGenerator::monomial(1, t[0]));
    for (int v = 0; v < 4; ++v) CHECK(hv.dA.cjet(v).max_coeff_norm() < 1e-14);
    CHECK(hv.identity_residual < 1e-14);

    // but the towers do move: delta psi_+ = -phi_+ psi_+ = +lambda T
    CHECK((hv.delta_psi_plus.mode(1).coeff(Mono{}) - t[0]).max_abs() < 1e-14);
}

TEST_CASE("gauge-type hidden symmetries on the bpst background") {
    const auto& s = setup();
    const auto t = su2_basis();
    for (int n = 0; n <= 2; ++n)
        for (int a = 0; a < 3; ++a) {
            auto hv = gauge_type_variation(s.a, s.psi, GaugeTypeGenerator::monomial(n, t[a]));
            INFO("n=", n, " a=", a);
            CHECK(hv.identity_residual < 1e-10);
            CHECK(linearized_sdym_residual(s.a, hv.dA) < 1e-8);
            CHECK(hv.antipodal_real);
            CHECK(antihermiticity_defect(hv.dA) < 1e-10);
        }
}

TEST_CASE("w-dependent gauge-type generators") {
    const auto& s = setup();
    const auto t = su2_basis();
    auto hv = gauge_type_variation(s.a, s.psi, GaugeTypeGenerator::monomial(0, t[2], 1, 0));
    CHECK(hv.identity_residual < 1e-10);
    CHECK(linearized_sdym_residual(s.a, hv.dA) < 1e-8);

    auto hv2 = gauge_type_variation(s.a, s.psi, GaugeTypeGenerator::monomial(1, t[0], 0, 1));
    CHECK(hv2.identity_residual < 1e-10);
    CHECK(linearized_sdym_residual(s.a, hv2.dA) < 1e-8);
}

TEST_CASE("corrupted towers fail the consistency identities") {
    const auto& s = setup();
    LaxSolution bad = s.psi;
    Mono m;
    m.e[vYb] = 1;
    bad.xi[1].set_coeff(m, bad.xi[1].coeff(m) + cplx(1e-2) * su2_basis()[1]);
    CHECK_THROWS_AS(
        (void)gauge_type_variation(s.a, bad, GaugeTypeGenerator::monomial(1, su2_basis()[0])),
        std::runtime_error);
}

TEST_CASE("variation of the towers is consistent with the potential variation") {
    // first-order roundtrip: potentials_from_psi(psi + eps dpsi) =
    // A + eps dA + O(eps^2)
    const auto& s = setup();
    auto hv = gauge_type_variation(s.a, s.psi, GaugeTypeGenerator::monomial(1, su2_basis()[0]));
    const double eps = 1e-4;

    LaxSolution moved = s.psi;
    for (int k = 0; k <= 3; ++k) {
        moved.xi[k] += hv.delta_psi_plus.mode(k) * cplx(eps);
        moved.chi[k] += hv.delta_psi_minus.mode(-k) * cplx(eps);
    }
    GaugePotential rec = potentials_from_psi(moved, 1e-4);
    for (int v = 0; v < 4; ++v) {
        Jet expect = s.a.cjet(v) + hv.dA.cjet(v) * cplx(eps);
        const int cap = std::min({rec.cjet(v).valid(), expect.valid(), 4});
        CHECK(max_diff(rec.cjet(v), expect, cap) < 20 * eps * eps);
    }
}

TEST_CASE("diffeo-type hidden symmetries") {
    const auto& s = setup();

    // eta = 0
    TwistorVectorField zero;
    auto hv0 = diffeo_type_variation(s.a, s.psi, zero);
    for (int v = 0; v < 4; ++v) CHECK(hv0.dA.cjet(v).max_coeff_norm() < 1e-14);

    for (const char* name : {"P1", "B", "X1"}) {
        ConformalGenerator n;
        if (name[0] == 'P') n = conformal_generator(GenName::P, 0);
        if (name[0] == 'B') n = conformal_generator(GenName::B);
        if (name[0] == 'X') n = conformal_generator(GenName::X, 0);
        TwistorVectorField lift = lift_conformal(n);
        for (int shift : {0, -1}) {
            TwistorVectorField eta = lambda_shift(lift, shift);
            INFO("eta = l^", shift, " lift(", name, ")");
            auto hv = diffeo_type_variation(s.a, s.psi, eta,
                                            shift == 0 ? Branch::Plus : Branch::Minus);
            CHECK(hv.identity_residual < 1e-10);
            CHECK(linearized_sdym_residual(s.a, hv.dA) < 1e-8);
        }
    }
}

TEST_CASE("equal cochain components cancel in the combined action") {
    const auto& s = setup();
    TwistorVectorField eta = lift_conformal(conformal_generator(GenName::P, 1));
    auto plus = diffeo_type_variation(s.a, s.psi, eta, Branch::Plus);
    auto minus = diffeo_type_variation(s.a, s.psi, eta, Branch::Minus);
    Variation diff = cochain_difference(minus, plus);
    for (int v = 0; v < 4; ++v) CHECK(diff.cjet(v).max_coeff_norm(4) < 1e-12);
}

TEST_CASE("action bracket closes on the mode-table commutator") {
    const auto& s = setup();
    const auto t = su2_basis();

    auto phi1 = GaugeTypeGenerator::monomial(1, t[0]);
    auto phi2 = GaugeTypeGenerator::monomial(0, t[1]);

    CHECK(action_bracket_check(phi1, phi1, setup().f) == 0.0);

    LaurentJet one = LaurentJet::from_jet(
        Jet::constant(Frame::Complex, kBase, LieMatrix::identity(2), 2).truncated(6));
    CHECK(action_bracket_check(phi1, phi2, one) < 1e-12);

    CHECK(action_bracket_check(phi1, phi2, s.f) < 1e-10);
    auto phi3 = GaugeTypeGenerator::monomial(2, t[2]);
    auto phiw = GaugeTypeGenerator::monomial(0, t[0], 1, 0);
    CHECK(action_bracket_check(phi2, phi3, s.f) < 1e-10);
    CHECK(action_bracket_check(phi1, phiw, s.f) < 1e-10);
}

TEST_CASE("vector fields act by derivations") {
    const auto& s = setup();
    const auto t = su2_basis();
    auto phi = GaugeTypeGenerator::monomial(1, t[0]);

    for (auto gen : {conformal_generator(GenName::P, 0), conformal_generator(GenName::B),
                     conformal_generator(GenName::Y, 0)}) {
        TwistorVectorField eta = lift_conformal(gen);
        INFO("eta = lift(", gen.label, ")");
        CHECK(derivation_check(eta, phi, s.f) < 1e-10);
    }
}

TEST_CASE("reality of emitted variations") {
    const auto& s = setup();
    Rng rng(127);
    // random anti-Hermitian-coefficient generator table
    GaugeTypeGenerator phi;
    phi.rank = 2;
    phi.label = "random";
    for (int n = -1; n <= 1; ++n) phi.terms.push_back({n, 0, 0, random_su_matrix(rng, 2)});
    auto hv = gauge_type_variation(s.a, s.psi, phi);
    CHECK(hv.antipodal_real);
    CHECK(antihermiticity_defect(hv.dA) < 1e-10);
}

TEST_CASE("empirical gauge match of hidden variations") {
    const auto& s = setup();
    const auto t = su2_basis();

    // sanity: a manifest gauge variation matches itself exactly
    ScalarJet x1 = to_complex_frame(
        rebase(ScalarJet::variable(Frame::Real, Vec4{0, 0, 0, 0}, 0, 1.0, 1), kBase));
    Variation manifest = gauge_variation(s.a, scalar_times_matrix(x1, t[0]).truncated(6));
    CHECK(gauge_match_residual(s.a, manifest, 2) < 1e-8);

    // the n=0 loop-algebra variation: record how close it is to a manifest
    // gauge variation with polynomial parameter of degree <= 2
    auto hv = gauge_type_variation(s.a, s.psi, GaugeTypeGenerator::monomial(0, t[0]));
    const double r = gauge_match_residual(s.a, hv.dA, 2);
    MESSAGE("n=0 generator: relative distance to manifest gauge variations (deg <= 2): ", r);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0 + 1e-9);

    // and an n=1 variation for comparison
    auto hv1 = gauge_type_variation(s.a, s.psi, GaugeTypeGenerator::monomial(1, t[0]));
    MESSAGE("n=1 generator: relative distance: ", gauge_match_residual(s.a, hv1.dA, 2));
}
