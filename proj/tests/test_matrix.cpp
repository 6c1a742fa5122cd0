#include "doctest.h"
#include "sdym/matrix.hpp"
#include "sdym/probes.hpp"

using namespace sdym;

TEST_CASE("commutator basics") {
    auto t = su2_basis();
    CHECK(commutator(t[0], t[0]).max_abs() == 0.0);

    // [T_a, T_b] = eps_abc T_c for the chosen normalization T_a = sigma_a/(2i)
    CHECK((commutator(t[0], t[1]) - t[2]).max_abs() < 1e-15);
    CHECK((commutator(t[1], t[2]) - t[0]).max_abs() < 1e-15);
    CHECK((commutator(t[2], t[0]) - t[1]).max_abs() < 1e-15);

    Rng rng(11);
    const LieMatrix a = random_su_matrix(rng, 2), b = random_su_matrix(rng, 2);
    CHECK((commutator(a, b) + commutator(b, a)).max_abs() < 1e-15);
    CHECK(commutator(a, b).is_traceless(1e-14));

    const LieMatrix a3 = random_sl_matrix(rng, 3), b3 = random_sl_matrix(rng, 3);
    CHECK(commutator(a3, b3).is_traceless(1e-13));
    CHECK_THROWS_AS((void)commutator(a, a3), std::invalid_argument);
}

TEST_CASE("su2 basis is anti-Hermitian and traceless") {
    for (const auto& t : su2_basis()) {
        CHECK(t.is_traceless());
        CHECK(t.is_antihermitian());
    }
}

TEST_CASE("matrix inverse") {
    Rng rng(5);
    for (int n : {2, 3}) {
        LieMatrix m = random_sl_matrix(rng, n) + cplx(2.0) * LieMatrix::identity(n);
        CHECK((m * inverse(m) - LieMatrix::identity(n)).max_abs() < 1e-13);
        CHECK((inverse(m) * m - LieMatrix::identity(n)).max_abs() < 1e-13);
    }
}

TEST_CASE("thooft tensor values") {
    // eta^1_{23} = +1 (0-based a=0, mu=1, nu=2)
    CHECK(thooft(ThooftKind::SelfDual, 0, 1, 2) == 1);
    // eta^1_{14} = +1 and etabar^1_{14} = -1
    CHECK(thooft(ThooftKind::SelfDual, 0, 0, 3) == 1);
    CHECK(thooft(ThooftKind::AntiSelfDual, 0, 0, 3) == -1);
    // diagonal vanishes
    CHECK(thooft(ThooftKind::SelfDual, 1, 1, 1) == 0);
    CHECK_THROWS_AS(thooft(ThooftKind::SelfDual, 3, 0, 0), std::invalid_argument);
}

TEST_CASE("thooft antisymmetry and duality, exhaustive") {
    for (auto kind : {ThooftKind::SelfDual, ThooftKind::AntiSelfDual}) {
        const int flip = kind == ThooftKind::SelfDual ? 1 : -1;
        for (int a = 0; a < 3; ++a)
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    CHECK(thooft(kind, a, mu, nu) == -thooft(kind, a, nu, mu));
                    int dual = 0;
                    for (int r = 0; r < 4; ++r)
                        for (int s = 0; s < 4; ++s) dual += levi_civita4(mu, nu, r, s) * thooft(kind, a, r, s);
                    CHECK(dual == 2 * flip * thooft(kind, a, mu, nu));  // (1/2) eps eta = +-eta
                }
    }
}

TEST_CASE("sd/asd projection of 't Hooft tensors") {
    auto t = su2_basis();
    for (int a = 0; a < 3; ++a) {
        auto fsd = thooft_tensor2(ThooftKind::SelfDual, a, t[a]);
        auto [p1, m1] = sd_asd_project(fsd);
        CHECK((p1 - fsd).norm() < 1e-15);
        CHECK(m1.norm() < 1e-15);

        auto fasd = thooft_tensor2(ThooftKind::AntiSelfDual, a, t[a]);
        auto [p2, m2] = sd_asd_project(fasd);
        CHECK(p2.norm() < 1e-15);
        CHECK((m2 - fasd).norm() < 1e-15);
    }
}

TEST_CASE("projector identities on random tensors") {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        Tensor2Antisym f(2);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu + 1; nu < 4; ++nu) f.set(mu, nu, random_sl_matrix(rng, 2));
        auto [plus, minus] = sd_asd_project(f);
        CHECK((plus + minus - f).norm() < 1e-12);
        // idempotence and cross-projection
        auto [pp, pm] = sd_asd_project(plus);
        CHECK((pp - plus).norm() < 1e-12);
        CHECK(pm.norm() < 1e-12);
        auto [mp, mm] = sd_asd_project(minus);
        CHECK(mp.norm() < 1e-12);
        CHECK((mm - minus).norm() < 1e-12);
        // tracelessness preserved
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu + 1; nu < 4; ++nu) {
                CHECK(plus.at(mu, nu).is_traceless(1e-13));
                CHECK(minus.at(mu, nu).is_traceless(1e-13));
            }
    }
}
