#include "sdym/manifest.hpp"

#include <cmath>
#include <numeric>

namespace sdym {

namespace {

const Vec4 kOrigin{0, 0, 0, 0};

ScalarJet rpoly() { return ScalarJet(Frame::Real, kOrigin, 1, kExactOrder); }

ScalarJet rvar(int mu) { return ScalarJet::variable(Frame::Real, kOrigin, mu, 1.0, 1); }

}  // namespace

ConformalGenerator conformal_generator(GenName name, int index) {
    ConformalGenerator g;
    for (auto& c : g.comp) c = rpoly();
    switch (name) {
        case GenName::P: {
            if (index < 0 || index > 3) throw std::invalid_argument("conformal_generator: P index");
            g.label = "P" + std::to_string(index + 1);
            g.comp[index] = ScalarJet::constant(Frame::Real, kOrigin, 1.0, 1);
            break;
        }
        case GenName::B: {
            g.label = "B";
            for (int nu = 0; nu < 4; ++nu) g.comp[nu] = rvar(nu);
            break;
        }
        case GenName::X:
        case GenName::Y: {
            if (index < 0 || index > 2) throw std::invalid_argument("conformal_generator: rotation index");
            const auto kind = name == GenName::X ? ThooftKind::SelfDual : ThooftKind::AntiSelfDual;
            g.label = (name == GenName::X ? "X" : "Y") + std::to_string(index + 1);
            for (int nu = 0; nu < 4; ++nu) {
                ScalarJet acc = rpoly();
                for (int mu = 0; mu < 4; ++mu) {
                    const int e = thooft(kind, index, mu, nu);
                    if (e != 0) acc += rvar(mu) * cplx(double(e));
                }
                g.comp[nu] = acc;
            }
            break;
        }
        case GenName::K: {
            if (index < 0 || index > 3) throw std::invalid_argument("conformal_generator: K index");
            g.label = "K" + std::to_string(index + 1);
            ScalarJet x2 = rpoly();
            for (int s = 0; s < 4; ++s) x2 += rvar(s) * rvar(s);
            for (int nu = 0; nu < 4; ++nu) {
                ScalarJet acc = rpoly();
                if (nu == index) acc += x2 * cplx(0.5);
                acc -= rvar(index) * rvar(nu);
                g.comp[nu] = acc;
            }
            break;
        }
    }
    return g;
}

std::vector<ConformalGenerator> all_conformal_generators() {
    std::vector<ConformalGenerator> out;
    for (int a = 0; a < 3; ++a) out.push_back(conformal_generator(GenName::X, a));
    for (int a = 0; a < 3; ++a) out.push_back(conformal_generator(GenName::Y, a));
    for (int mu = 0; mu < 4; ++mu) out.push_back(conformal_generator(GenName::P, mu));
    for (int mu = 0; mu < 4; ++mu) out.push_back(conformal_generator(GenName::K, mu));
    out.push_back(conformal_generator(GenName::B));
    return out;
}

ConformalGenerator vf_bracket(const ConformalGenerator& n, const ConformalGenerator& m) {
    ConformalGenerator b;
    b.label = "[" + n.label + "," + m.label + "]";
    for (int nu = 0; nu < 4; ++nu) {
        ScalarJet acc = rpoly();
        for (int s = 0; s < 4; ++s)
            acc += n.comp[s] * derive(m.comp[nu], s) - m.comp[s] * derive(n.comp[nu], s);
        b.comp[nu] = acc;
    }
    return b;
}

double vf_max_diff(const ConformalGenerator& n, const ConformalGenerator& m) {
    double d = 0.0;
    for (int nu = 0; nu < 4; ++nu) d = std::max(d, (n.comp[nu] - m.comp[nu]).max_coeff_norm());
    return d;
}

namespace {

/// Exact rational arithmetic for the closure rank test.
struct Frac {
    long long num = 0, den = 1;
    static Frac of(long long n, long long d = 1) {
        Frac f{n, d};
        f.reduce();
        return f;
    }
    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(std::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
    bool zero() const { return num == 0; }
    friend Frac operator*(const Frac& a, const Frac& b) { return of(a.num * b.num, a.den * b.den); }
    friend Frac operator-(const Frac& a, const Frac& b) {
        return of(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Frac operator/(const Frac& a, const Frac& b) { return of(a.num * b.den, a.den * b.num); }
};

/// Exact conversion of a dyadic-rational double.
Frac frac_from_dyadic(double v) {
    if (v == 0.0) return Frac::of(0);
    int e = 0;
    double m = std::frexp(v, &e);  // v = m * 2^e, |m| in [0.5, 1)
    long long scaled = static_cast<long long>(std::ldexp(m, 53));
    if (std::ldexp(double(scaled), -53) != m)
        throw std::runtime_error("closure test: coefficient is not dyadic");
    const int shift = e - 53;
    Frac f = Frac::of(scaled);
    if (shift >= 0)
        f = f * Frac::of(1LL << shift);
    else
        f = f / Frac::of(1LL << (-shift));
    return f;
}

constexpr int kDeg2Monos = 15;  // monomials of degree <= 2 in 4 variables

int mono_index(const Mono& m) {
    static std::vector<Mono> table = [] {
        std::vector<Mono> t;
        for (int total = 0; total <= 2; ++total)
            for (int a = 0; a <= 2; ++a)
                for (int b = 0; b <= 2; ++b)
                    for (int c = 0; c <= 2; ++c)
                        for (int d = 0; d <= 2; ++d)
                            if (a + b + c + d == total)
                                t.push_back(Mono{{uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)}});
        return t;
    }();
    for (size_t i = 0; i < table.size(); ++i)
        if (table[i] == m) return int(i);
    return -1;
}

std::vector<Frac> coeff_vector(const ConformalGenerator& g) {
    std::vector<Frac> v(4 * kDeg2Monos);
    for (int nu = 0; nu < 4; ++nu)
        for (const auto& [m, c] : g.comp[nu].coeffs()) {
            if (std::imag(c) != 0.0) throw std::runtime_error("closure test: complex coefficient");
            const int idx = mono_index(m);
            if (idx < 0) throw std::runtime_error("closure test: degree above 2");
            v[nu * kDeg2Monos + idx] = frac_from_dyadic(std::real(c));
        }
    return v;
}

/// Reduce `vec` against the row-echelon rows; true if it reduces to zero.
bool reduces_to_zero(std::vector<Frac> vec, const std::vector<std::vector<Frac>>& rows,
                     const std::vector<int>& pivots) {
    for (size_t r = 0; r < rows.size(); ++r) {
        const Frac lead = vec[pivots[r]];
        if (lead.zero()) continue;
        const Frac ratio = lead / rows[r][pivots[r]];
        for (size_t k = 0; k < vec.size(); ++k) vec[k] = vec[k] - ratio * rows[r][k];
    }
    for (const auto& f : vec)
        if (!f.zero()) return false;
    return true;
}

}  // namespace

bool brackets_close_in_span(const std::vector<ConformalGenerator>& gens) {
    // Row echelon form of the generator span, exact.
    std::vector<std::vector<Frac>> rows;
    std::vector<int> pivots;
    for (const auto& g : gens) {
        std::vector<Frac> v = coeff_vector(g);
        for (size_t r = 0; r < rows.size(); ++r) {
            const Frac lead = v[pivots[r]];
            if (lead.zero()) continue;
            const Frac ratio = lead / rows[r][pivots[r]];
            for (size_t k = 0; k < v.size(); ++k) v[k] = v[k] - ratio * rows[r][k];
        }
        int p = -1;
        for (size_t k = 0; k < v.size(); ++k)
            if (!v[k].zero()) {
                p = int(k);
                break;
            }
        if (p >= 0) {
            rows.push_back(std::move(v));
            pivots.push_back(p);
        }
    }
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j) {
            const ConformalGenerator b = vf_bracket(gens[i], gens[j]);
            if (!reduces_to_zero(coeff_vector(b), rows, pivots)) return false;
        }
    return true;
}

Variation gauge_variation(const GaugePotential& a, const Jet& theta) {
    std::array<Jet, 4> comps;
    for (int v = 0; v < 4; ++v) comps[v] = covariant_derive(a, theta, v, CovAction::Adjoint);
    return Variation::from_complex_jets(comps);
}

std::array<ScalarJet, 4> complex_components(const ConformalGenerator& n, const Vec4& base) {
    const cplx i(0.0, 1.0);
    std::array<ScalarJet, 4> rc;
    for (int nu = 0; nu < 4; ++nu) rc[nu] = to_complex_frame(n.comp[nu]);
    std::array<ScalarJet, 4> cc;
    cc[vY] = rc[0] + i * rc[1];   // N(y) = N^1 + i N^2
    cc[vYb] = rc[0] - i * rc[1];
    cc[vZ] = rc[2] - i * rc[3];   // N(z) = N^3 - i N^4
    cc[vZb] = rc[2] + i * rc[3];
    for (auto& c : cc) c = rebase(c, base);
    return cc;
}

std::array<Jet, 4> lie_derivative_components(const std::array<Jet, 4>& comps,
                                             const ConformalGenerator& n) {
    const auto cc = complex_components(n, comps[0].base());
    const int rank = comps[0].shape();
    std::array<Jet, 4> out;
    for (int al = 0; al < 4; ++al) {
        Jet acc(Frame::Complex, comps[0].base(), rank, comps[al].valid());
        for (int be = 0; be < 4; ++be) {
            acc += scalar_to_matrix(cc[be], rank) * derive(comps[al], be);
            acc += scalar_to_matrix(derive(cc[be], al), rank) * comps[be];
        }
        out[al] = acc;
    }
    return out;
}

Variation conformal_variation(const GaugePotential& a, const ConformalGenerator& n) {
    std::array<Jet, 4> comps{a.cjet(vY), a.cjet(vYb), a.cjet(vZ), a.cjet(vZb)};
    return Variation::from_complex_jets(lie_derivative_components(comps, n));
}

}  // namespace sdym
