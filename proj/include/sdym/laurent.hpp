#pragma once

#include <climits>
#include <map>

#include "sdym/jet.hpp"

namespace sdym {

inline constexpr int kModeNegInf = INT_MIN / 4;
inline constexpr int kModePosInf = INT_MAX / 4;
inline constexpr int kDefaultModeBudget = 24;

namespace detail {
inline int sat_add(int a, int b) {
    if (a <= kModeNegInf || b <= kModeNegInf) return kModeNegInf;
    if (a >= kModePosInf || b >= kModePosInf) return kModePosInf;
    return a + b;
}
inline int sat_neg(int a) {
    if (a <= kModeNegInf) return kModePosInf;
    if (a >= kModePosInf) return kModeNegInf;
    return -a;
}
}  // namespace detail

/// Laurent object in the spectral parameter lambda with jet coefficients.
///
/// Besides the stored mode window, each object carries truncation-ledger
/// metadata about the TRUE (untruncated) function it approximates:
///   - support bounds [sup_lo, sup_hi]: modes outside are exactly zero;
///   - degree anchors (p_pos, p_neg): the true mode-m coefficient, as a
///     function of x, has no content below total degree
///     dlow(m) = max(0, m - p_pos, -m - p_neg).
/// Products use this to bound the jet degree at which dropped tail modes
/// could pollute each output mode, and reduce per-mode valid orders
/// accordingly. Stored coefficients are therefore always exact Taylor data
/// of the true object up to their valid order.
template <class C>
class LaurentJetT {
public:
    LaurentJetT() : frame_(Frame::Complex), base_{0, 0, 0, 0}, shape_(0) {}
    LaurentJetT(Frame f, const Vec4& base, int shape, int sup_lo, int sup_hi, int p_pos, int p_neg)
        : frame_(f), base_(base), shape_(shape), sup_lo_(sup_lo), sup_hi_(sup_hi),
          p_pos_(p_pos), p_neg_(p_neg) {}

    static LaurentJetT from_jet(const JetT<C>& j) {
        LaurentJetT r(j.frame(), j.base(), j.shape(), 0, 0, 0, 0);
        r.modes_[0] = j;
        return r;
    }

    Frame frame() const { return frame_; }
    const Vec4& base() const { return base_; }
    int shape() const { return shape_; }
    int support_lo() const { return sup_lo_; }
    int support_hi() const { return sup_hi_; }
    int anchor_pos() const { return p_pos_; }
    int anchor_neg() const { return p_neg_; }
    const std::map<int, JetT<C>>& modes() const { return modes_; }
    bool has_mode(int m) const { return modes_.count(m) != 0; }

    int window_lo() const { return modes_.empty() ? 0 : modes_.begin()->first; }
    int window_hi() const { return modes_.empty() ? -1 : modes_.rbegin()->first; }

    /// Lower bound on the lowest total degree of the true mode-m coefficient.
    int dlow(int m) const {
        if (m < sup_lo_ || m > sup_hi_) return kModePosInf;
        int d = 0;
        if (p_pos_ < kModePosInf) d = std::max(d, m - p_pos_);
        if (p_neg_ < kModePosInf) d = std::max(d, -m - p_neg_);
        return d;
    }

    /// Jet order to which mode m is known: the stored jet's valid order; or
    /// "exact zero" outside the support; or -1 (nothing known).
    int mode_valid(int m) const {
        auto it = modes_.find(m);
        if (it != modes_.end()) return it->second.valid();
        if (m < sup_lo_ || m > sup_hi_) return kExactOrder;
        return -1;
    }

    JetT<C> mode(int m) const {
        auto it = modes_.find(m);
        if (it != modes_.end()) return it->second;
        return JetT<C>(frame_, base_, shape_, mode_valid(m));
    }

    void set_mode(int m, const JetT<C>& j) {
        if (j.valid() < 0) {
            modes_.erase(m);
            return;
        }
        sup_lo_ = std::min(sup_lo_, m);
        sup_hi_ = std::max(sup_hi_, m);
        modes_[m] = j;
    }

    void widen_anchors(int p_pos, int p_neg) {
        p_pos_ = std::max(p_pos_, p_pos);
        p_neg_ = std::max(p_neg_, p_neg);
    }

    LaurentJetT& operator*=(const cplx& s) {
        for (auto& [m, j] : modes_) j = j * s;
        return *this;
    }
    friend LaurentJetT operator*(LaurentJetT a, const cplx& s) { return a *= s; }
    friend LaurentJetT operator*(const cplx& s, LaurentJetT a) { return a *= s; }
    friend LaurentJetT operator-(LaurentJetT a) { return a *= cplx(-1.0); }

    friend LaurentJetT operator+(const LaurentJetT& a, const LaurentJetT& b) {
        a.require_compatible(b);
        LaurentJetT r(a.frame_, a.base_, a.shape_ ? a.shape_ : b.shape_,
                      std::min(a.sup_lo_, b.sup_lo_), std::max(a.sup_hi_, b.sup_hi_),
                      std::max(a.p_pos_, b.p_pos_), std::max(a.p_neg_, b.p_neg_));
        std::map<int, bool> keys;
        for (const auto& [m, j] : a.modes_) keys[m] = true;
        for (const auto& [m, j] : b.modes_) keys[m] = true;
        for (const auto& [m, unused] : keys) {
            const int v = std::min(a.mode_valid(m), b.mode_valid(m));
            if (v < 0) continue;
            JetT<C> sum = a.has_mode(m) ? a.modes_.at(m) : JetT<C>(a.frame_, a.base_, r.shape_, kExactOrder);
            if (b.has_mode(m)) sum += b.modes_.at(m);
            r.modes_[m] = sum.truncated(std::min(v, sum.valid()));
        }
        return r;
    }
    friend LaurentJetT operator-(LaurentJetT a, const LaurentJetT& b) { return a + (-b); }

    void require_compatible(const LaurentJetT& o) const {
        if (frame_ != o.frame_) throw std::invalid_argument("LaurentJet: frame mismatch");
        for (int i = 0; i < 4; ++i)
            if (base_[i] != o.base_[i]) throw std::invalid_argument("LaurentJet: base mismatch");
    }

    /// Drop stored modes with |m| > budget (their information is discarded;
    /// the ledger metadata still accounts for them as unknown tails).
    void clamp_window(int budget) {
        for (auto it = modes_.begin(); it != modes_.end();)
            it = (std::abs(it->first) > budget) ? modes_.erase(it) : std::next(it);
    }

    /// Max coefficient norm over stored modes in [mlo, mhi], each jet
    /// restricted to min(its valid order, deg_cap).
    double max_norm(int mlo = kModeNegInf, int mhi = kModePosInf, int deg_cap = kExactOrder) const {
        double s = 0.0;
        for (const auto& [m, j] : modes_) {
            if (m < mlo || m > mhi) continue;
            s = std::max(s, j.max_coeff_norm(std::min(deg_cap, j.valid())));
        }
        return s;
    }

    C eval(const Vec4& x, const cplx& lambda) const {
        C acc = JetCoeff<C>::zero(shape_);
        for (const auto& [m, j] : modes_) {
            cplx w = 1.0;
            if (m >= 0)
                for (int k = 0; k < m; ++k) w *= lambda;
            else
                for (int k = 0; k < -m; ++k) w /= lambda;
            acc += sdym::eval(j, x) * w;
        }
        return acc;
    }

private:
    Frame frame_;
    Vec4 base_;
    int shape_;
    int sup_lo_ = kModePosInf;   // empty support until modes are set
    int sup_hi_ = kModeNegInf;
    int p_pos_ = 0;
    int p_neg_ = 0;
    std::map<int, JetT<C>> modes_;

    template <class D>
    friend LaurentJetT<D> mul(const LaurentJetT<D>&, const LaurentJetT<D>&, int);
};

/// Degree below which dropped tails of f or g can pollute mode m of f*g.
template <class C>
int tail_pollution_degree(const LaurentJetT<C>& f, const LaurentJetT<C>& g, int m) {
    const int R = std::abs(m) + 80;
    int best = kModePosInf;
    for (int i = -R; i <= R; ++i) {
        const int j = m - i;
        if (i < f.support_lo() || i > f.support_hi()) continue;
        if (j < g.support_lo() || j > g.support_hi()) continue;
        const bool missing = !f.has_mode(i) || !g.has_mode(j);
        if (!missing) continue;
        const int d = detail::sat_add(f.dlow(i), g.dlow(j));
        best = std::min(best, d);
    }
    return best;
}

/// Truncated Laurent product with ledger propagation.
template <class C>
LaurentJetT<C> mul(const LaurentJetT<C>& f, const LaurentJetT<C>& g,
                   int mode_budget = kDefaultModeBudget) {
    f.require_compatible(g);
    LaurentJetT<C> r(f.frame(), f.base(), f.shape() ? f.shape() : g.shape(),
                     detail::sat_add(f.support_lo(), g.support_lo()),
                     detail::sat_add(f.support_hi(), g.support_hi()),
                     detail::sat_add(f.anchor_pos(), g.anchor_pos()),
                     detail::sat_add(f.anchor_neg(), g.anchor_neg()));
    for (const auto& [i, ji] : f.modes()) {
        for (const auto& [j, jj] : g.modes()) {
            const int m = i + j;
            if (std::abs(m) > mode_budget) continue;
            JetT<C> prod = ji * jj;
            auto it = r.modes_.find(m);
            if (it == r.modes_.end())
                r.modes_[m] = prod;
            else
                it->second += prod;
        }
    }
    for (auto it = r.modes_.begin(); it != r.modes_.end();) {
        const int m = it->first;
        const int pol = tail_pollution_degree(f, g, m);
        const int v = std::min(it->second.valid(), pol >= kModePosInf ? kExactOrder : pol - 1);
        if (v < 0) {
            it = r.modes_.erase(it);
        } else {
            it->second = it->second.truncated(v);
            ++it;
        }
    }
    // Modes inside the support with no stored contributing pair are known to
    // vanish up to the degree at which unstored tails could feed them.
    const int lo = std::max(r.support_lo(), -mode_budget);
    const int hi = std::min(r.support_hi(), mode_budget);
    for (int m = lo; m <= hi; ++m) {
        if (r.modes_.count(m)) continue;
        const int pol = tail_pollution_degree(f, g, m);
        const int v = (pol >= kModePosInf) ? kExactOrder : pol - 1;
        if (v >= 0) r.modes_[m] = JetT<C>(r.frame(), r.base(), r.shape(), v);
    }
    return r;
}

/// Multiply by lambda^s.
template <class C>
LaurentJetT<C> lambda_shift(const LaurentJetT<C>& f, int s) {
    LaurentJetT<C> r(f.frame(), f.base(), f.shape(), detail::sat_add(f.support_lo(), s),
                     detail::sat_add(f.support_hi(), s), detail::sat_add(f.anchor_pos(), s),
                     detail::sat_add(f.anchor_neg(), -s));
    for (const auto& [m, j] : f.modes()) r.set_mode(m + s, j);
    return r;
}

/// Formal d/dlambda acting on the mode index.
template <class C>
LaurentJetT<C> lambda_derive(const LaurentJetT<C>& f) {
    LaurentJetT<C> r(f.frame(), f.base(), f.shape(), detail::sat_add(f.support_lo(), -1),
                     detail::sat_add(f.support_hi(), -1), detail::sat_add(f.anchor_pos(), -1),
                     detail::sat_add(f.anchor_neg(), 1));
    for (const auto& [m, j] : f.modes()) {
        if (m == 0) {
            // the constant mode is annihilated: mode -1 of the result is
            // known to vanish to the same order
            r.set_mode(-1, JetT<C>(f.frame(), f.base(), f.shape(), j.valid()));
            continue;
        }
        r.set_mode(m - 1, j * cplx(double(m)));
    }
    return r;
}

/// The substitution lambda -> 1/lambda applied to the mode window.
template <class C>
LaurentJetT<C> lambda_invert(const LaurentJetT<C>& f) {
    LaurentJetT<C> r(f.frame(), f.base(), f.shape(), detail::sat_neg(f.support_hi()),
                     detail::sat_neg(f.support_lo()), f.anchor_neg(), f.anchor_pos());
    for (const auto& [m, j] : f.modes()) r.set_mode(-m, j);
    return r;
}

/// Coefficient-wise jet derivative in a frame variable.
template <class C>
LaurentJetT<C> derive(const LaurentJetT<C>& f, int var) {
    LaurentJetT<C> r(f.frame(), f.base(), f.shape(), f.support_lo(), f.support_hi(),
                     detail::sat_add(f.anchor_pos(), 1), detail::sat_add(f.anchor_neg(), 1));
    for (const auto& [m, j] : f.modes()) r.set_mode(m, derive(j, var));
    return r;
}

/// The antipodal adjoint: f(lambda) -> f(-1/conj(lambda))^dagger, realized on
/// mode tables as mode k -> mode -k with coefficient (-1)^k adjoint(coeff).
template <class C>
LaurentJetT<C> antipodal_adjoint(const LaurentJetT<C>& f) {
    LaurentJetT<C> r(f.frame(), f.base(), f.shape(), detail::sat_neg(f.support_hi()),
                     detail::sat_neg(f.support_lo()), f.anchor_neg(), f.anchor_pos());
    for (const auto& [m, j] : f.modes()) {
        JetT<C> a = adjoint(j);
        r.set_mode(-m, (m % 2 == 0) ? a : -a);
    }
    return r;
}

/// Embed a scalar Laurent object as a matrix one (times the identity).
inline LaurentJetT<LieMatrix> promote(const LaurentJetT<cplx>& f, int n) {
    LaurentJetT<LieMatrix> r(f.frame(), f.base(), n, f.support_lo(), f.support_hi(),
                             f.anchor_pos(), f.anchor_neg());
    for (const auto& [m, j] : f.modes()) r.set_mode(m, scalar_to_matrix(j, n));
    return r;
}

using LaurentJet = LaurentJetT<LieMatrix>;
using ScalarLaurent = LaurentJetT<cplx>;

}  // namespace sdym
