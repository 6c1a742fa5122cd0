#include <cmath>

#include "doctest.h"
#include "sdym/gauge.hpp"
#include "sdym/probes.hpp"
#include "test_util.hpp"

using namespace sdym;
using sdym::testutil::random_matrix_jet;

namespace {
const Vec4 kCenter{0.1, -0.2, 0.3, 0.0};
const Vec4 kBase{0.6, 0.4, -0.5, 0.7};

GaugePotential bpst_jets(int order = 6) {
    return to_jets(bpst_instanton(kCenter, 1.3), kBase, order);
}

Tensor2Antisym curvature_fd(const GaugePotential& a, const Vec4& x, double h = 1e-4) {
    Tensor2Antisym f(a.rank());
    std::array<std::array<LieMatrix, 4>, 4> grad;
    for (int mu = 0; mu < 4; ++mu) {
        Vec4 xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        auto cp = a.real_components_at(xp);
        auto cm = a.real_components_at(xm);
        for (int nu = 0; nu < 4; ++nu) grad[mu][nu] = (cp[nu] - cm[nu]) * cplx(1.0 / (2.0 * h));
    }
    auto ax = a.real_components_at(x);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            f.set(mu, nu, grad[mu][nu] - grad[nu][mu] + commutator(ax[mu], ax[nu]));
    return f;
}
}  // namespace

TEST_CASE("sdym_residual of trivial potentials") {
    auto probes = sample_ball(1, 20, {0, 0, 0, 0}, 2.0);
    CHECK(sdym_residual(zero_potential(2), probes) == 0.0);

    // constant diagonal (abelian-valued) potential is flat
    auto t = su2_basis();
    std::array<LieMatrix, 4> comps{t[2], cplx(2.0) * t[2], cplx(-1.0) * t[2], t[2] * cplx(0.5)};
    CHECK(sdym_residual(constant_potential(comps), probes) < 1e-15);
}

TEST_CASE("pinned instanton conventions pass the residual oracle") {
    auto probes = family_probes(bpst_instanton(kCenter, 1.3).meta(), 2, 100);
    CHECK(sdym_residual(bpst_instanton(kCenter, 1.3), probes) < 1e-10);
    CHECK(sdym_residual(bpst_instanton(kCenter, 0.4), probes) < 1e-10);

    // anti-instanton: fails the self-dual projector, passes the mirrored one
    CHECK(sdym_residual(anti_bpst_instanton(kCenter, 1.3), probes) > 1e-2);
    CHECK(asd_residual(anti_bpst_instanton(kCenter, 1.3), probes) < 1e-10);

    std::vector<PolePoint> poles{{kCenter, 0.8}};
    auto tprobes = family_probes(thooft_ansatz(poles).meta(), 3, 100);
    CHECK(sdym_residual(thooft_ansatz(poles), tprobes) < 1e-10);
    CHECK(asd_residual(anti_thooft_ansatz(poles), tprobes) < 1e-10);

    std::vector<PolePoint> poles2{{kCenter, 0.8}, {{-0.6, 0.5, 0.1, -0.3}, 0.5}};
    auto tprobes2 = family_probes(thooft_ansatz(poles2).meta(), 4, 100);
    CHECK(sdym_residual(thooft_ansatz(poles2), tprobes2) < 1e-10);
    CHECK(sdym_residual(anti_thooft_ansatz(poles2), tprobes2) > 1e-2);
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS((void)bpst_instanton(kCenter, -1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)bpst_instanton(kCenter, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)thooft_ansatz({}), std::invalid_argument);
    CHECK_THROWS_AS((void)thooft_ansatz({{kCenter, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS((void)thooft_ansatz({{kCenter, 0.5}, {kCenter, 0.5}}), std::invalid_argument);
}

TEST_CASE("curvature matches the finite-difference oracle") {
    auto a = bpst_instanton(kCenter, 1.3);
    Rng rng(19);
    for (int trial = 0; trial < 4; ++trial) {
        Vec4 x;
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        Tensor2Antisym exact = curvature_at(a, x);
        Tensor2Antisym fd = curvature_fd(a, x);
        CHECK((exact - fd).norm() < 1e-6);
    }
}

TEST_CASE("large-scale limit of the bpst family decays") {
    const Vec4 x{0.7, -0.3, 0.2, 0.4};
    auto comps_small = bpst_instanton(kCenter, 10.0).real_components_at(x);
    auto comps_large = bpst_instanton(kCenter, 1000.0).real_components_at(x);
    double n_small = 0.0, n_large = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        n_small = std::max(n_small, comps_small[mu].max_abs());
        n_large = std::max(n_large, comps_large[mu].max_abs());
    }
    CHECK(n_large < 1e-4);
    CHECK(n_large < 1e-3 * n_small);
}

TEST_CASE("jet backend of the instanton families") {
    GaugePotential aj = bpst_jets(6);
    CHECK(aj.has_jets());
    CHECK(aj.cjet(vY).valid() >= 6);

    // jets evaluate to the analytic components near the base
    auto an = bpst_instanton(kCenter, 1.3);
    Rng rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        Vec4 x = kBase;
        for (auto& v : x) v += rng.uniform(-0.05, 0.05);
        auto cx = an.real_components_at(x);
        for (int mu = 0; mu < 4; ++mu)
            CHECK((eval(aj.rjet(mu), x) - cx[mu]).max_abs() < 1e-6);
    }

    // coefficient-wise self-duality of the jet
    CHECK(sdym_residual(aj) < 1e-12);

    // 2-pole 't Hooft jets
    std::vector<PolePoint> poles2{{kCenter, 0.8}, {{-0.6, 0.5, 0.1, -0.3}, 0.5}};
    GaugePotential tj = to_jets(thooft_ansatz(poles2), kBase, 6);
    CHECK(sdym_residual(tj) < 1e-12);

    // anti-family fails coefficient-wise too
    GaugePotential anti = to_jets(anti_bpst_instanton(kCenter, 1.3), kBase, 6);
    CHECK(sdym_residual(anti) > 1e-2);
    CHECK(asd_residual(anti) < 1e-12);
}

TEST_CASE("complex components") {
    const auto t = su2_basis();
    // A_1 = T, others 0  =>  A_y = A_yb = T/2
    std::array<LieMatrix, 4> comps{t[0], LieMatrix::zero(2), LieMatrix::zero(2), LieMatrix::zero(2)};
    auto cc = complex_from_real_components(comps);
    CHECK((cc[vY] - t[0] * cplx(0.5)).max_abs() < 1e-15);
    CHECK((cc[vYb] - t[0] * cplx(0.5)).max_abs() < 1e-15);
    CHECK(cc[vZ].max_abs() < 1e-15);

    // roundtrip is the identity
    Rng rng(29);
    std::array<LieMatrix, 4> r;
    for (auto& m : r) m = random_su_matrix(rng, 2);
    auto back = real_from_complex_components(complex_from_real_components(r));
    for (int mu = 0; mu < 4; ++mu) CHECK((back[mu] - r[mu]).max_abs() < 1e-14);

    // reality: anti-Hermitian A gives A_yb = -(A_y)^dagger, A_zb = -(A_z)^dagger
    auto c2 = complex_from_real_components(r);
    CHECK((c2[vYb] + dagger(c2[vY])).max_abs() < 1e-14);
    CHECK((c2[vZb] + dagger(c2[vZ])).max_abs() < 1e-14);
}

TEST_CASE("covariant derivative identities") {
    GaugePotential a = bpst_jets(6);
    Rng rng(31);
    Jet f = random_matrix_jet(rng, kBase, 5, 2);

    // zero potential reduces to the plain derivative
    GaugePotential z = to_jets(zero_potential(2), kBase, 6);
    CHECK(max_diff(covariant_derive(z, f, vY), derive(f, vY), 4) == 0.0);

    // [D_y, D_yb] f = [F_y yb, f] in the adjoint action
    Jet d1 = covariant_derive(a, covariant_derive(a, f, vYb), vY);
    Jet d2 = covariant_derive(a, covariant_derive(a, f, vY), vYb);
    Jet lhs = d1 - d2;
    Jet fyy = curvature_complex(a, vY, vYb);
    Jet rhs = fyy * f - f * fyy;
    CHECK(max_diff(lhs, rhs, 3) < 1e-12);
}

TEST_CASE("complex-frame curvature agrees with the real-frame tensor") {
    GaugePotential a = bpst_jets(6);
    CurvatureJets fr = curvature(a);

    // Jacobian rows dx^mu/d(y,yb,z,zb)
    const cplx i(0.0, 1.0);
    const std::array<std::array<cplx, 4>, 4> jac{{{0.5, -0.5 * i, 0, 0},
                                                  {0.5, 0.5 * i, 0, 0},
                                                  {0, 0, 0.5, 0.5 * i},
                                                  {0, 0, 0.5, -0.5 * i}}};
    auto contracted = [&](int va, int vb) {
        Jet acc(Frame::Complex, kBase, 2, fr.valid());
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                if (mu == nu) continue;
                const cplx w = jac[va][mu] * jac[vb][nu];
                if (w == cplx(0.0)) continue;
                acc += fr.at(mu, nu) * w;
            }
        return acc;
    };
    for (auto [va, vb] : {std::pair{vY, vZ}, {vYb, vZb}, {vY, vYb}, {vZ, vZb}, {vY, vZb}}) {
        Jet direct = curvature_complex(a, va, vb);
        CHECK(max_diff(direct, contracted(va, vb), 4) < 1e-12);
    }

    // self-dual background: the anti-self-dual complex combinations vanish
    CHECK(curvature_complex(a, vY, vZ).max_coeff_norm(4) < 1e-12);
    CHECK(curvature_complex(a, vYb, vZb).max_coeff_norm(4) < 1e-12);
    Jet combo = curvature_complex(a, vY, vYb) + curvature_complex(a, vZ, vZb);
    CHECK(combo.max_coeff_norm(4) < 1e-12);
}

TEST_CASE("gauge covariance of the residual") {
    Rng rng(37);
    // unitary via Cayley transform of an anti-Hermitian matrix
    LieMatrix x = random_su_matrix(rng, 2);
    LieMatrix g = (LieMatrix::identity(2) + x) * inverse(LieMatrix::identity(2) - x);

    auto a = bpst_instanton(kCenter, 1.3);
    auto probes = family_probes(a.meta(), 5, 50);
    CHECK(std::abs(sdym_residual(conjugate_constant(a, g), probes) - sdym_residual(a, probes)) < 1e-12);

    GaugePotential aj = bpst_jets(6);
    CHECK(sdym_residual(conjugate_constant(aj, g)) < 1e-11);
}

TEST_CASE("linearized residual basics") {
    GaugePotential a = bpst_jets(6);

    std::array<Jet, 4> zero;
    for (auto& j : zero) zero[0] = j = Jet::constant(Frame::Complex, kBase, LieMatrix::zero(2), 2);
    CHECK(linearized_sdym_residual(a, Variation::from_complex_jets(zero)) == 0.0);

    // random unstructured variation is not a symmetry direction
    Rng rng(41);
    std::array<Jet, 4> rc;
    for (auto& j : rc) j = random_matrix_jet(rng, kBase, 5, 2);
    Variation da = Variation::from_complex_jets(rc);
    const double r1 = linearized_sdym_residual(a, da);
    CHECK(r1 > 1e-2);

    // linearity in the variation
    std::array<Jet, 4> rc2 = rc, rc10 = rc;
    for (auto& j : rc2) j = j * cplx(2.0);
    for (auto& j : rc10) j = j * cplx(10.0);
    CHECK(linearized_sdym_residual(a, Variation::from_complex_jets(rc2)) == doctest::Approx(2.0 * r1).epsilon(1e-10));
    CHECK(linearized_sdym_residual(a, Variation::from_complex_jets(rc10)) == doctest::Approx(10.0 * r1).epsilon(1e-10));
}

TEST_CASE("fixture io roundtrip") {
    std::vector<FamilyInfo> fams;
    fams.push_back(bpst_instanton(kCenter, 1.3).meta());
    std::vector<PolePoint> poles2{{kCenter, 0.8}, {{-0.6, 0.5, 0.1, -0.3}, 0.5}};
    fams.push_back(thooft_ansatz(poles2).meta());

    const std::string path = "test_fixtures_tmp.json";
    save_fixtures(path, fams);
    auto loaded = load_fixtures(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].meta().family == "bpst");
    CHECK(loaded[1].meta().poles.size() == 2);
    auto probes = family_probes(loaded[1].meta(), 6, 30);
    CHECK(sdym_residual(loaded[1], probes) < 1e-10);
    std::remove(path.c_str());
}
