#include "sdym/twistor.hpp"

#include <cmath>

namespace sdym {

namespace {
const Vec4 kOrigin{0, 0, 0, 0};

ScalarLaurent scalar_laurent_zero() {
    return ScalarLaurent(Frame::Complex, kOrigin, 1, kModePosInf, kModeNegInf, 0, 0);  // exact zero
}

ScalarLaurent from_scalar_jet(const ScalarJet& j) { return ScalarLaurent::from_jet(j); }

ScalarJet cvariable(const Vec4& base, int var) {
    return ScalarJet::variable(Frame::Complex, base, var, 1.0, 1);
}

/// Coordinate function jets (value of y, ybar, z, zbar at the point).
ScalarJet coord_fn(const Vec4& base, int var) {
    const cplx i(0.0, 1.0);
    cplx v0;
    switch (var) {
        case vY: v0 = cplx(base[0], 0) + i * base[1]; break;
        case vYb: v0 = cplx(base[0], 0) - i * base[1]; break;
        case vZ: v0 = cplx(base[2], 0) - i * base[3]; break;
        case vZb: v0 = cplx(base[2], 0) + i * base[3]; break;
        default: throw std::invalid_argument("coord_fn: bad var");
    }
    return ScalarJet::constant(Frame::Complex, base, v0, 1) + cvariable(base, var);
}
}  // namespace

ComplexStructureParams ComplexStructureParams::from_s(const std::array<double, 3>& s, double tol) {
    const double n2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
    if (std::abs(n2 - 1.0) > tol)
        throw std::invalid_argument("ComplexStructureParams: s must lie on the unit sphere");
    ComplexStructureParams p;
    p.s = s;
    p.lambda = cplx(s[0], s[1]) / (1.0 + s[2]);
    return p;
}

std::array<std::array<double, 4>, 4> complex_structure(const std::array<double, 3>& s) {
    const double n2 = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("complex_structure: s must lie on the unit sphere");
    std::array<std::array<double, 4>, 4> j{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            double v = 0.0;
            for (int a = 0; a < 3; ++a) v += s[a] * thooft(ThooftKind::AntiSelfDual, a, mu, nu);
            j[mu][nu] = v;
        }
    return j;
}

std::array<cplx, 4> vbar_components(int a, const cplx& lambda) {
    const cplx i(0.0, 1.0);
    if (a == 1) {
        // d_ybar - lambda d_z = (d_1 + i d_2)/2 - lambda (d_3 + i d_4)/2
        return {0.5, 0.5 * i, -0.5 * lambda, -0.5 * i * lambda};
    }
    if (a == 2) {
        // d_zbar + lambda d_y = (d_3 - i d_4)/2 + lambda (d_1 - i d_2)/2
        return {0.5 * lambda, -0.5 * i * lambda, 0.5, -0.5 * i};
    }
    throw std::invalid_argument("vbar_components: a must be 1 or 2");
}

std::pair<cplx, cplx> twistor_coords(const Vec4& x, const cplx& lambda) {
    const cplx i(0.0, 1.0);
    const cplx y = cplx(x[0]) + i * x[1];
    const cplx yb = cplx(x[0]) - i * x[1];
    const cplx z = cplx(x[2]) - i * x[3];
    const cplx zb = cplx(x[2]) + i * x[3];
    return {y - lambda * zb, z + lambda * yb};
}

ScalarLaurent twistor_w1(const Vec4& base) {
    ScalarLaurent w(Frame::Complex, base, 1, 0, 1, 1, 0);
    w.set_mode(0, coord_fn(base, vY));
    w.set_mode(1, -coord_fn(base, vZb));
    return w;
}

ScalarLaurent twistor_w2(const Vec4& base) {
    ScalarLaurent w(Frame::Complex, base, 1, 0, 1, 1, 0);
    w.set_mode(0, coord_fn(base, vZ));
    w.set_mode(1, coord_fn(base, vYb));
    return w;
}

std::vector<cplx> CoverRegion::lambda_samples(int per_circle) const {
    std::vector<cplx> out;
    for (double r : {1.0, 1.0 - alpha / 2.0, 1.0 + alpha / 2.0})
        for (int k = 0; k < per_circle; ++k) {
            const double th = 2.0 * M_PI * (k + 0.25) / per_circle;
            out.emplace_back(r * std::cos(th), r * std::sin(th));
        }
    return out;
}

TwistorVectorField::TwistorVectorField() {
    for (auto& h : horizontal) h = scalar_laurent_zero();
    vertical = scalar_laurent_zero();
}

TwistorVectorField operator+(const TwistorVectorField& a, const TwistorVectorField& b) {
    TwistorVectorField r;
    r.label = a.label + "+" + b.label;
    for (int c = 0; c < 4; ++c) r.horizontal[c] = a.horizontal[c] + b.horizontal[c];
    r.vertical = a.vertical + b.vertical;
    return r;
}

TwistorVectorField operator*(const TwistorVectorField& a, const cplx& s) {
    TwistorVectorField r = a;
    for (auto& h : r.horizontal) h = h * s;
    r.vertical = r.vertical * s;
    return r;
}

TwistorVectorField lambda_shift(const TwistorVectorField& vf, int s) {
    TwistorVectorField r;
    r.label = (s == 0) ? vf.label : ("l^" + std::to_string(s) + " " + vf.label);
    for (int c = 0; c < 4; ++c) r.horizontal[c] = lambda_shift(vf.horizontal[c], s);
    r.vertical = lambda_shift(vf.vertical, s);
    return r;
}

TwistorVectorField lambda_invert(const TwistorVectorField& vf) {
    TwistorVectorField r;
    r.label = "inv(" + vf.label + ")";
    for (int c = 0; c < 4; ++c) r.horizontal[c] = lambda_invert(vf.horizontal[c]);
    r.vertical = -lambda_shift(lambda_invert(vf.vertical), 2);
    return r;
}

namespace {
template <class C>
LaurentJetT<C> apply_impl(const TwistorVectorField& vf, const LaurentJetT<C>& f, int budget) {
    LaurentJetT<C> acc = lambda_derive(f);
    // vertical part first: eta^lambda * d_lambda f
    ScalarLaurent vert = vf.vertical;
    std::array<ScalarLaurent, 4> hor = vf.horizontal;
    // rebase component polynomials to f's base
    auto rebased = [&](const ScalarLaurent& g) {
        ScalarLaurent out(f.frame(), f.base(), 1, g.support_lo(), g.support_hi(), g.anchor_pos(),
                          g.anchor_neg());
        for (const auto& [m, j] : g.modes()) out.set_mode(m, rebase(j, f.base()));
        return out;
    };
    LaurentJetT<C> result(f.frame(), f.base(), f.shape(), kModePosInf, kModeNegInf, 0, 0);
    bool first = true;
    if (!vert.modes().empty()) {
        if constexpr (std::is_same_v<C, LieMatrix>)
            result = mul(promote(rebased(vert), f.shape()), acc, budget);
        else
            result = mul(rebased(vert), acc, budget);
        first = false;
    }
    for (int c = 0; c < 4; ++c) {
        if (vf.horizontal[c].modes().empty()) continue;
        LaurentJetT<C> term;
        if constexpr (std::is_same_v<C, LieMatrix>)
            term = mul(promote(rebased(hor[c]), f.shape()), derive(f, c), budget);
        else
            term = mul(rebased(hor[c]), derive(f, c), budget);
        result = first ? term : result + term;
        first = false;
    }
    if (first) {
        // the zero field: a known-zero object over all modes
        return LaurentJetT<C>(f.frame(), f.base(), f.shape(), kModePosInf, kModeNegInf, 0, 0);
    }
    return result;
}
}  // namespace

LaurentJet apply(const TwistorVectorField& vf, const LaurentJet& f, int mode_budget) {
    return apply_impl(vf, f, mode_budget);
}
ScalarLaurent apply_scalar(const TwistorVectorField& vf, const ScalarLaurent& f, int mode_budget) {
    return apply_impl(vf, f, mode_budget);
}

TwistorVectorField vf_bracket(const TwistorVectorField& a, const TwistorVectorField& b) {
    TwistorVectorField r;
    r.label = "[" + a.label + "," + b.label + "]";
    for (int c = 0; c < 4; ++c)
        r.horizontal[c] = apply_scalar(a, b.horizontal[c]) - apply_scalar(b, a.horizontal[c]);
    r.vertical = apply_scalar(a, b.vertical) - apply_scalar(b, a.vertical);
    return r;
}

TwistorVectorField vbar_field(int a) {
    TwistorVectorField v;
    const ScalarJet one = ScalarJet::constant(Frame::Complex, kOrigin, 1.0, 1);
    if (a == 1) {
        v.label = "Vbar1";
        v.horizontal[vYb] = from_scalar_jet(one);
        v.horizontal[vZ] = lambda_shift(from_scalar_jet(-one), 1);
        return v;
    }
    if (a == 2) {
        v.label = "Vbar2";
        v.horizontal[vZb] = from_scalar_jet(one);
        v.horizontal[vY] = lambda_shift(from_scalar_jet(one), 1);
        return v;
    }
    throw std::invalid_argument("vbar_field: a must be 1 or 2");
}

double lift_bracket_residual(const TwistorVectorField& vf) {
    double res = 0.0;
    for (int a : {1, 2}) {
        TwistorVectorField br = vf_bracket(vf, vbar_field(a));
        // [vf, Vbar_a] = c1 Vbar1 + c2 Vbar2 requires, in components:
        // B^z + lambda B^ybar = 0, B^y - lambda B^zbar = 0, B^lambda = 0.
        ScalarLaurent r1 = br.horizontal[vZ] + lambda_shift(br.horizontal[vYb], 1);
        ScalarLaurent r2 = br.horizontal[vY] - lambda_shift(br.horizontal[vZb], 1);
        res = std::max({res, r1.max_norm(), r2.max_norm(), br.vertical.max_norm()});
    }
    return res;
}

TwistorVectorField lift_conformal(const ConformalGenerator& n, double tol) {
    const auto cc = complex_components(n, kOrigin);
    TwistorVectorField vf;
    vf.label = "lift(" + n.label + ")";
    for (int c = 0; c < 4; ++c) vf.horizontal[c] = from_scalar_jet(cc[c]);
    // Vertical component from the d_z-row of the span condition for
    // [vf, Vbar_1]: lambda-polynomial of degree <= 2.
    ScalarLaurent vert(Frame::Complex, kOrigin, 1, 0, 2, 2, 0);
    vert.set_mode(0, -derive(cc[vZ], vYb));
    vert.set_mode(1, derive(cc[vZ], vZ) - derive(cc[vYb], vYb));
    vert.set_mode(2, derive(cc[vYb], vZ));
    vf.vertical = vert;
    const double res = lift_bracket_residual(vf);
    if (res > tol)
        throw std::runtime_error("lift_conformal: no holomorphy-preserving lift for " + n.label +
                                 " (residual " + std::to_string(res) + ")");
    return vf;
}

}  // namespace sdym
