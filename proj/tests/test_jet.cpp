#include <map>

#include "doctest.h"
#include "sdym/jet.hpp"
#include "test_util.hpp"

using namespace sdym;
using sdym::testutil::random_matrix_jet;
using sdym::testutil::random_scalar_jet;

namespace {
const Vec4 kBase{0, 0, 0, 0};

ScalarJet sv(int var) { return ScalarJet::variable(Frame::Complex, kBase, var, 1.0, 1); }
ScalarJet sc(cplx v) { return ScalarJet::constant(Frame::Complex, kBase, v, 1); }

/// Independent dense convolution of coefficient tables, then truncation.
Jet convolution_oracle(const Jet& f, const Jet& g, int order) {
    std::map<Mono, LieMatrix, MonoLess> acc;
    for (const auto& [ma, ca] : f.coeffs())
        for (const auto& [mb, cb] : g.coeffs()) {
            Mono m;
            for (int i = 0; i < 4; ++i) m.e[i] = uint8_t(ma.e[i] + mb.e[i]);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(m, ca * cb);
            else
                it->second += ca * cb;
        }
    Jet r(f.frame(), f.base(), f.shape(), order);
    for (const auto& [m, c] : acc)
        if (m.total() <= order) r.set_coeff(m, c);
    return r;
}
}  // namespace

TEST_CASE("jet product examples") {
    ScalarJet f = (sc(1.0) + sv(vY)).truncated(2);
    ScalarJet g = (sc(1.0) - sv(vY)).truncated(2);
    ScalarJet p = f * g;
    // 1 - y^2
    Mono y2;
    y2.e[vY] = 2;
    CHECK(p.coeff(Mono{}) == cplx(1.0));
    CHECK(p.coeff(y2) == cplx(-1.0));
    CHECK(p.coeffs().size() == 2);

    ScalarJet p1 = f.truncated(1) * g.truncated(1);
    CHECK(p1.coeff(Mono{}) == cplx(1.0));
    CHECK(p1.coeffs().size() == 1);
    CHECK(p1.valid() == 1);
}

TEST_CASE("jet product matches dense convolution oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 3; ++trial) {
        Jet f = random_matrix_jet(rng, kBase, 4, 2);
        Jet g = random_matrix_jet(rng, kBase, 4, 2);
        Jet prod = f * g;
        Jet oracle = convolution_oracle(f, g, 4);
        CHECK(max_diff(prod, oracle, 4) < 1e-13);
    }
}

TEST_CASE("jet product requires matching frames and bases") {
    ScalarJet a(Frame::Complex, kBase, 1, 3);
    ScalarJet b(Frame::Real, kBase, 1, 3);
    CHECK_THROWS_AS((void)(a * b), std::invalid_argument);
    ScalarJet c(Frame::Complex, Vec4{1, 0, 0, 0}, 1, 3);
    CHECK_THROWS_AS((void)(a * c), std::invalid_argument);
}

TEST_CASE("jet derivative examples") {
    // d_y (y^2 z) = 2 y z
    ScalarJet f = (sv(vY) * sv(vY) * sv(vZ)).truncated(4);
    ScalarJet d = derive(f, vY);
    Mono yz;
    yz.e[vY] = 1;
    yz.e[vZ] = 1;
    CHECK(d.coeff(yz) == cplx(2.0));
    CHECK(d.coeffs().size() == 1);

    CHECK(derive(sv(vY), vYb).empty_coeffs());
    CHECK(derive(sc(5.0), vZ).empty_coeffs());
    CHECK(derive(sv(vY).truncated(3), vY).valid() == 2);
}

TEST_CASE("jet antiderivative examples") {
    // integral in ybar of 1 is ybar
    ScalarJet one = sc(1.0).truncated(2);
    ScalarJet a = antiderive(one, vYb);
    Mono yb;
    yb.e[vYb] = 1;
    CHECK(a.coeff(yb) == cplx(1.0));
    CHECK(a.valid() == 3);

    // integral of d_yb f recovers f minus its ybar-independent part
    Rng rng(17);
    ScalarJet f = random_scalar_jet(rng, kBase, 4);
    ScalarJet rec = antiderive(derive(f, vYb), vYb);
    ScalarJet expect(Frame::Complex, kBase, 1, 4);
    for (const auto& [m, c] : f.coeffs())
        if (m.e[vYb] > 0) expect.set_coeff(m, c);
    CHECK(max_diff(rec.truncated(4), expect, 4) < 1e-14);

    // derive(antiderive(f)) is the identity
    ScalarJet f5 = random_scalar_jet(rng, kBase, 5);
    CHECK(max_diff(derive(antiderive(f5, vZ), vZ), f5, 5) < 1e-14);
}

TEST_CASE("jet evaluation") {
    CHECK(std::abs(eval(sc(cplx(2, 3)), Vec4{9, 9, 9, 9}) - cplx(2, 3)) < 1e-15);
    // y(x) = x1 + i x2
    CHECK(std::abs(eval(sv(vY), Vec4{1, 2, 0, 0}) - cplx(1, 2)) < 1e-15);

    // order-6 truncation of 1/(1 - x1) evaluated at x1 = 0.1:
    // remainder is x1^7/(1-x1) ~ 1.1e-7
    ScalarJet x1 = sv(vY) * cplx(0.5) + sv(vYb) * cplx(0.5);
    ScalarJet den = (sc(1.0) - x1).truncated(7);
    ScalarJet inv6 = reciprocal(den, 6);
    const double got = std::real(eval(inv6, Vec4{0.1, 0, 0, 0}));
    const double expect = 1.0 / 0.9;
    CHECK(std::abs(got - expect) < 2e-7);
    CHECK(std::abs(got - expect) > 1e-9);  // the truncation error is really there
}

TEST_CASE("Leibniz rule on random jets") {
    Rng rng(23);
    Jet f = random_matrix_jet(rng, kBase, 4, 2);
    Jet g = random_matrix_jet(rng, kBase, 4, 2);
    for (int var : {vY, vZb}) {
        Jet lhs = derive(f * g, var);
        Jet rhs = derive(f, var) * g + f * derive(g, var);
        CHECK(max_diff(lhs, rhs, 3) < 1e-12);
    }
}

TEST_CASE("mixed partials commute") {
    Rng rng(31);
    ScalarJet f = random_scalar_jet(rng, kBase, 5);
    CHECK(max_diff(derive(derive(f, vY), vZb), derive(derive(f, vZb), vY), 3) == 0.0);
}

TEST_CASE("truncation monotonicity") {
    Rng rng(37);
    Jet f = random_matrix_jet(rng, kBase, 4, 2);
    Jet g = random_matrix_jet(rng, kBase, 4, 2);
    Jet at_k = (f * g).truncated(3);
    Jet at_km1 = f.truncated(3) * g.truncated(3);
    CHECK(max_diff(at_k, at_km1, 3) < 1e-13);
}

TEST_CASE("frame conversion") {
    // y -> x1 + i x2
    ScalarJet yr = to_real_frame(sv(vY));
    Mono m1, m2;
    m1.e[0] = 1;
    m2.e[1] = 1;
    CHECK(yr.coeff(m1) == cplx(1.0));
    CHECK(yr.coeff(m2) == cplx(0, 1));

    Rng rng(41);
    ScalarJet f = random_scalar_jet(rng, kBase, 4);
    CHECK(max_diff(to_complex_frame(to_real_frame(f)), f, 4) < 1e-14);

    // evaluation agrees across frames
    Jet g = random_matrix_jet(rng, Vec4{0.2, -0.1, 0.4, 0.0}, 3, 2);
    const Vec4 x{0.5, 0.1, 0.2, -0.3};
    CHECK((eval(to_real_frame(g), x) - eval(g, x)).max_abs() < 1e-13);
}

TEST_CASE("adjoint jet is the pointwise dagger") {
    Rng rng(43);
    Jet f = random_matrix_jet(rng, kBase, 3, 2);
    const Vec4 x{0.3, -0.2, 0.1, 0.4};
    CHECK((eval(adjoint(f), x) - dagger(eval(f, x))).max_abs() < 1e-13);
    // involution
    CHECK(max_diff(adjoint(adjoint(f)), f, 3) == 0.0);
}

TEST_CASE("jet reciprocal") {
    Rng rng(47);
    Jet f = random_matrix_jet(rng, kBase, 4, 2);
    f.set_coeff(Mono{}, LieMatrix::identity(2) * cplx(2.0) + random_sl_matrix(rng, 2) * cplx(0.1));
    Jet inv = reciprocal(f, 4);
    Jet prod = f * inv;
    Jet one = Jet::constant(Frame::Complex, kBase, LieMatrix::identity(2), 2).truncated(4);
    CHECK(max_diff(prod, one, 4) < 1e-12);
    Jet prod2 = inv * f;
    CHECK(max_diff(prod2, one, 4) < 1e-12);
}

TEST_CASE("rebase of exact polynomials") {
    Rng rng(53);
    ScalarJet p(Frame::Complex, kBase, 1, kExactOrder);
    Mono m;
    m.e[vY] = 2;
    m.e[vZb] = 1;
    p.set_coeff(m, cplx(1.5, -0.5));
    m.e = {0, 1, 0, 0};
    p.set_coeff(m, cplx(0.3, 0.0));
    const Vec4 nb{0.4, -0.3, 0.2, 0.1};
    ScalarJet q = rebase(p, nb);
    const Vec4 x{0.1, 0.2, -0.1, 0.3};
    CHECK(std::abs(eval(p, x) - eval(q, x)) < 1e-14);
    CHECK_THROWS_AS((void)rebase(p.truncated(2), nb), std::invalid_argument);
}
