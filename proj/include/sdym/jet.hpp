#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "sdym/matrix.hpp"

namespace sdym {

/// Variable frame of a jet: real offsets (x1..x4) or complex offsets
/// (y, ybar, z, zbar) with y = x1+ix2, z = x3-ix4.
enum class Frame : uint8_t { Real, Complex };

/// Complex-frame variable indices.
enum CVar : int { vY = 0, vYb = 1, vZ = 2, vZb = 3 };

/// Sentinel valid order for exact polynomials (never truncated).
inline constexpr int kExactOrder = 1 << 20;

struct Mono {
    std::array<uint8_t, 4> e{0, 0, 0, 0};
    int total() const { return int(e[0]) + e[1] + e[2] + e[3]; }
    bool operator==(const Mono& o) const { return e == o.e; }
};

/// Total-degree-graded, then lexicographic. Gives deterministic iteration.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        const int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        return a.e < b.e;
    }
};

template <class C>
struct JetCoeff;

template <>
struct JetCoeff<cplx> {
    static cplx zero(int) { return cplx(0.0); }
    static double norm(const cplx& v) { return std::abs(v); }
    static cplx adj(const cplx& v) { return std::conj(v); }
    static bool is_zero(const cplx& v) { return v == cplx(0.0); }
};

template <>
struct JetCoeff<LieMatrix> {
    static LieMatrix zero(int n) { return LieMatrix::zero(n); }
    static double norm(const LieMatrix& v) { return v.norm(); }
    static LieMatrix adj(const LieMatrix& v) { return dagger(v); }
    static bool is_zero(const LieMatrix& v) { return v.max_abs() == 0.0; }
};

/// Truncated multivariate power series in four coordinates around a real
/// base point. Coefficients of total degree <= valid() are exact Taylor
/// data of the represented function; nothing above valid() is stored.
template <class C>
class JetT {
public:
    using coeff_map = std::map<Mono, C, MonoLess>;

    JetT() : frame_(Frame::Complex), base_{0, 0, 0, 0}, shape_(0), valid_(-1) {}
    JetT(Frame f, const Vec4& base, int shape, int valid = kExactOrder)
        : frame_(f), base_(base), shape_(shape), valid_(valid) {}

    static JetT constant(Frame f, const Vec4& base, const C& v, int shape) {
        JetT j(f, base, shape, kExactOrder);
        if (!JetCoeff<C>::is_zero(v)) j.c_[Mono{}] = v;
        return j;
    }
    /// The coordinate offset u_var (exact degree-1 polynomial).
    static JetT variable(Frame f, const Vec4& base, int var, const C& unit, int shape) {
        JetT j(f, base, shape, kExactOrder);
        Mono m;
        m.e[var] = 1;
        j.c_[m] = unit;
        return j;
    }

    Frame frame() const { return frame_; }
    const Vec4& base() const { return base_; }
    int shape() const { return shape_; }
    int valid() const { return valid_; }
    bool exact() const { return valid_ >= kExactOrder; }
    const coeff_map& coeffs() const { return c_; }
    bool empty_coeffs() const { return c_.empty(); }

    C coeff(const Mono& m) const {
        auto it = c_.find(m);
        return it == c_.end() ? JetCoeff<C>::zero(shape_) : it->second;
    }
    void set_coeff(const Mono& m, const C& v) {
        if (m.total() > valid_) throw std::invalid_argument("Jet: coefficient above valid order");
        if (JetCoeff<C>::is_zero(v))
            c_.erase(m);
        else
            c_[m] = v;
    }

    void require_compatible(const JetT& o) const {
        if (frame_ != o.frame_) throw std::invalid_argument("Jet: frame mismatch");
        for (int i = 0; i < 4; ++i)
            if (base_[i] != o.base_[i]) throw std::invalid_argument("Jet: base point mismatch");
    }

    JetT& operator+=(const JetT& o) {
        require_compatible(o);
        valid_ = std::min(valid_, o.valid_);
        for (const auto& [m, v] : o.c_) {
            auto it = c_.find(m);
            if (it == c_.end())
                c_[m] = v;
            else {
                it->second += v;
                if (JetCoeff<C>::is_zero(it->second)) c_.erase(it);
            }
        }
        drop_above(valid_);
        return *this;
    }
    JetT& operator-=(const JetT& o) { return *this += o * cplx(-1.0); }

    friend JetT operator+(JetT a, const JetT& b) { return a += b; }
    friend JetT operator-(JetT a, const JetT& b) { return a -= b; }
    friend JetT operator*(const JetT& a, const cplx& s) {
        JetT r = a;
        if (s == cplx(0.0)) {
            r.c_.clear();
            return r;
        }
        for (auto& [m, v] : r.c_) v = v * s;
        return r;
    }
    friend JetT operator*(const cplx& s, const JetT& a) { return a * s; }
    friend JetT operator-(const JetT& a) { return a * cplx(-1.0); }

    /// Truncated Cauchy product; coefficients multiply in operator order.
    friend JetT operator*(const JetT& a, const JetT& b) {
        a.require_compatible(b);
        const int v = std::min(a.valid_, b.valid_);
        JetT r(a.frame_, a.base_, a.shape_ ? a.shape_ : b.shape_, v);
        for (const auto& [ma, ca] : a.c_) {
            if (ma.total() > v) break;
            for (const auto& [mb, cb] : b.c_) {
                if (ma.total() + mb.total() > v) break;
                Mono m;
                for (int i = 0; i < 4; ++i) m.e[i] = uint8_t(ma.e[i] + mb.e[i]);
                C prod = ca * cb;
                auto it = r.c_.find(m);
                if (it == r.c_.end())
                    r.c_[m] = prod;
                else
                    it->second += prod;
            }
        }
        r.prune();
        return r;
    }

    void drop_above(int d) {
        for (auto it = c_.begin(); it != c_.end();)
            it = (it->first.total() > d) ? c_.erase(it) : std::next(it);
    }
    JetT truncated(int d) const {
        JetT r = *this;
        r.valid_ = std::min(valid_, d);
        r.drop_above(r.valid_);
        return r;
    }

    double max_coeff_norm(int up_to = kExactOrder) const {
        double m = 0.0;
        for (const auto& [mono, v] : c_) {
            if (mono.total() > up_to) break;
            m = std::max(m, JetCoeff<C>::norm(v));
        }
        return m;
    }

    /// Lowest total degree carrying a nonzero coefficient (valid+1 if none).
    int lowest_degree() const { return c_.empty() ? valid_ + 1 : c_.begin()->first.total(); }

    void prune() {
        for (auto it = c_.begin(); it != c_.end();)
            it = JetCoeff<C>::is_zero(it->second) ? c_.erase(it) : std::next(it);
    }

private:
    Frame frame_;
    Vec4 base_;
    int shape_;
    int valid_;
    coeff_map c_;
};

using Jet = JetT<LieMatrix>;
using ScalarJet = JetT<cplx>;

/// Formal partial derivative; consumes one valid order.
template <class C>
JetT<C> derive(const JetT<C>& f, int var) {
    const int v = f.exact() ? kExactOrder : f.valid() - 1;
    JetT<C> r(f.frame(), f.base(), f.shape(), v);
    if (v < 0) return r;
    for (const auto& [m, c] : f.coeffs()) {
        if (m.e[var] == 0) continue;
        Mono d = m;
        d.e[var] -= 1;
        if (d.total() > v) continue;
        r.set_coeff(d, c * cplx(double(m.e[var])));
    }
    return r;
}

/// Formal antiderivative with zero integration constant in `var`;
/// gains one valid order.
template <class C>
JetT<C> antiderive(const JetT<C>& f, int var) {
    const int v = f.exact() ? kExactOrder : f.valid() + 1;
    JetT<C> r(f.frame(), f.base(), f.shape(), v);
    for (const auto& [m, c] : f.coeffs()) {
        Mono d = m;
        d.e[var] += 1;
        if (d.total() > v) continue;
        r.set_coeff(d, c * (cplx(1.0) / double(d.e[var])));
    }
    return r;
}

/// Real-direction derivative d/dx_mu of a complex-frame jet.
template <class C>
JetT<C> derive_real(const JetT<C>& f, int mu) {
    if (f.frame() == Frame::Real) return derive(f, mu);
    const cplx i(0.0, 1.0);
    switch (mu) {
        case 0: return derive(f, vY) + derive(f, vYb);
        case 1: return i * derive(f, vY) - i * derive(f, vYb);
        case 2: return derive(f, vZ) + derive(f, vZb);
        case 3: return -i * derive(f, vZ) + i * derive(f, vZb);
        default: throw std::invalid_argument("derive_real: bad direction");
    }
}

/// Evaluate the truncated series at a real point x.
template <class C>
C eval(const JetT<C>& f, const Vec4& x) {
    std::array<cplx, 4> u;
    if (f.frame() == Frame::Real) {
        for (int i = 0; i < 4; ++i) u[i] = x[i] - f.base()[i];
    } else {
        const cplx i(0.0, 1.0);
        const cplx d1 = x[0] - f.base()[0], d2 = x[1] - f.base()[1];
        const cplx d3 = x[2] - f.base()[2], d4 = x[3] - f.base()[3];
        u[vY] = d1 + i * d2;
        u[vYb] = d1 - i * d2;
        u[vZ] = d3 - i * d4;
        u[vZb] = d3 + i * d4;
    }
    C acc = JetCoeff<C>::zero(f.shape());
    for (const auto& [m, c] : f.coeffs()) {
        cplx w = 1.0;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < m.e[i]; ++k) w *= u[i];
        acc += c * w;
    }
    return acc;
}

/// Pointwise adjoint (dagger/conj) as a function on real points: conjugates
/// coefficients and, in the complex frame, swaps y<->ybar and z<->zbar.
template <class C>
JetT<C> adjoint(const JetT<C>& f) {
    JetT<C> r(f.frame(), f.base(), f.shape(), f.valid());
    for (const auto& [m, c] : f.coeffs()) {
        Mono s = m;
        if (f.frame() == Frame::Complex) {
            std::swap(s.e[vY], s.e[vYb]);
            std::swap(s.e[vZ], s.e[vZb]);
        }
        r.set_coeff(s, JetCoeff<C>::adj(c));
    }
    return r;
}

/// Substitute each variable u_i by an affine expression (a degree-<=1 scalar
/// jet) in a possibly different frame/base. The substitutions must all share
/// one frame and base.
template <class C>
JetT<C> substitute_affine(const JetT<C>& f, const std::array<ScalarJet, 4>& sub) {
    for (int i = 1; i < 4; ++i) sub[0].require_compatible(sub[i]);
    // Highest power of each variable needed.
    std::array<int, 4> maxe{0, 0, 0, 0};
    for (const auto& [m, c] : f.coeffs())
        for (int i = 0; i < 4; ++i) maxe[i] = std::max(maxe[i], int(m.e[i]));
    std::array<std::vector<ScalarJet>, 4> pw;
    for (int i = 0; i < 4; ++i) {
        pw[i].push_back(ScalarJet::constant(sub[0].frame(), sub[0].base(), 1.0, 1));
        for (int k = 1; k <= maxe[i]; ++k) pw[i].push_back(pw[i].back() * sub[i]);
    }
    JetT<C> r(sub[0].frame(), sub[0].base(), f.shape(), f.valid());
    for (const auto& [m, c] : f.coeffs()) {
        ScalarJet w = pw[0][m.e[0]] * pw[1][m.e[1]] * pw[2][m.e[2]] * pw[3][m.e[3]];
        w = w.truncated(std::min(f.valid(), w.valid()));
        JetT<C> term(sub[0].frame(), sub[0].base(), f.shape(), std::min(f.valid(), w.valid()));
        for (const auto& [wm, wv] : w.coeffs()) term.set_coeff(wm, c * wv);
        r += term;
    }
    return r;
}

/// Complex-frame version of a real-frame jet (exact basis change on exponents).
template <class C>
JetT<C> to_complex_frame(const JetT<C>& f) {
    if (f.frame() == Frame::Complex) return f;
    const cplx i(0.0, 1.0);
    const Vec4& b = f.base();
    std::array<ScalarJet, 4> sub;
    auto var = [&](int v) { return ScalarJet::variable(Frame::Complex, b, v, 1.0, 1); };
    sub[0] = var(vY) * cplx(0.5) + var(vYb) * cplx(0.5);
    sub[1] = var(vY) * (-i * 0.5) + var(vYb) * (i * 0.5);
    sub[2] = var(vZ) * cplx(0.5) + var(vZb) * cplx(0.5);
    sub[3] = var(vZ) * (i * 0.5) + var(vZb) * (-i * 0.5);
    return substitute_affine(f, sub);
}

/// Real-frame version of a complex-frame jet.
template <class C>
JetT<C> to_real_frame(const JetT<C>& f) {
    if (f.frame() == Frame::Real) return f;
    const cplx i(0.0, 1.0);
    const Vec4& b = f.base();
    std::array<ScalarJet, 4> sub;
    auto var = [&](int v) { return ScalarJet::variable(Frame::Real, b, v, 1.0, 1); };
    sub[vY] = var(0) + i * var(1);
    sub[vYb] = var(0) - i * var(1);
    sub[vZ] = var(2) - i * var(3);
    sub[vZb] = var(2) + i * var(3);
    return substitute_affine(f, sub);
}

/// Move an exact polynomial to a new base point (Taylor shift).
template <class C>
JetT<C> rebase(const JetT<C>& f, const Vec4& nb) {
    if (!f.exact()) throw std::invalid_argument("rebase: only exact polynomials can be rebased");
    std::array<ScalarJet, 4> sub;
    std::array<cplx, 4> shift;
    const cplx i(0.0, 1.0);
    if (f.frame() == Frame::Real) {
        for (int k = 0; k < 4; ++k) shift[k] = cplx(nb[k] - f.base()[k]);
    } else {
        const cplx d1 = nb[0] - f.base()[0], d2 = nb[1] - f.base()[1];
        const cplx d3 = nb[2] - f.base()[2], d4 = nb[3] - f.base()[3];
        shift[vY] = d1 + i * d2;
        shift[vYb] = d1 - i * d2;
        shift[vZ] = d3 - i * d4;
        shift[vZb] = d3 + i * d4;
    }
    for (int k = 0; k < 4; ++k)
        sub[k] = ScalarJet::variable(f.frame(), nb, k, 1.0, 1) +
                 ScalarJet::constant(f.frame(), nb, shift[k], 1);
    return substitute_affine(f, sub);
}

/// Multiplicative inverse as a truncated series: requires an invertible
/// constant term. Result order = min(f.valid, order).
template <class C>
JetT<C> reciprocal(const JetT<C>& f, int order);

template <>
inline ScalarJet reciprocal(const ScalarJet& f, int order) {
    const int v = std::min(f.valid(), order);
    const cplx c0 = f.coeff(Mono{});
    if (std::abs(c0) < 1e-300) throw std::runtime_error("reciprocal: zero constant term");
    ScalarJet u = (f * (1.0 / c0)).truncated(v);
    u.set_coeff(Mono{}, 0.0);
    ScalarJet acc = ScalarJet::constant(f.frame(), f.base(), 1.0, 1).truncated(v);
    ScalarJet pw = acc;
    for (int k = 1; k <= v; ++k) {
        if (u.empty_coeffs()) break;
        pw = (pw * u).truncated(v);
        acc += (k % 2 ? -pw : pw);
    }
    return acc * (1.0 / c0);
}

template <>
inline Jet reciprocal(const Jet& f, int order) {
    const int v = std::min(f.valid(), order);
    const LieMatrix c0 = f.coeff(Mono{});
    const LieMatrix c0i = inverse(c0);
    Jet u = Jet::constant(f.frame(), f.base(), c0i, f.shape()).truncated(v) * f;
    u.set_coeff(Mono{}, LieMatrix::zero(f.shape()));
    u = -u;
    // (1 - u)^-1 with u of positive lowest degree: geometric series.
    Jet acc = Jet::constant(f.frame(), f.base(), LieMatrix::identity(f.shape()), f.shape()).truncated(v);
    Jet pw = acc;
    for (int k = 1; k <= v; ++k) {
        if (u.empty_coeffs()) break;
        pw = (pw * u).truncated(v);
        acc += pw;
    }
    return acc * Jet::constant(f.frame(), f.base(), c0i, f.shape()).truncated(v);
}

/// Embed a scalar jet as a matrix jet (times the identity).
inline Jet scalar_to_matrix(const ScalarJet& f, int n) {
    Jet r(f.frame(), f.base(), n, f.valid());
    for (const auto& [m, c] : f.coeffs()) r.set_coeff(m, c * LieMatrix::identity(n));
    return r;
}

/// One matrix entry of a matrix jet, as a scalar jet.
inline ScalarJet entry(const Jet& f, int i, int j) {
    ScalarJet r(f.frame(), f.base(), 1, f.valid());
    for (const auto& [m, c] : f.coeffs())
        if (c(i, j) != cplx(0.0)) r.set_coeff(m, c(i, j));
    return r;
}

/// Scale a scalar jet into a fixed matrix direction.
inline Jet scalar_times_matrix(const ScalarJet& f, const LieMatrix& t) {
    Jet r(f.frame(), f.base(), t.rank(), f.valid());
    for (const auto& [m, c] : f.coeffs()) {
        LieMatrix v = c * t;
        if (v.max_abs() != 0.0) r.set_coeff(m, v);
    }
    return r;
}

template <class C>
double max_diff(const JetT<C>& a, const JetT<C>& b, int up_to) {
    return (a - b).max_coeff_norm(up_to);
}

}  // namespace sdym
