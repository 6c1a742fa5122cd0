#include "sdym/riemann_hilbert.hpp"

#include <cmath>

namespace sdym {

SplitPair split(const LaurentJet& phi, const SplitConvention& conv) {
    if (phi.mode_valid(0) < 0)
        throw std::runtime_error("split: constant mode of the input is not known");

    SplitPair out{
        LaurentJet(phi.frame(), phi.base(), phi.shape(), 0, std::max(0, phi.support_hi()),
                   phi.anchor_pos(), phi.anchor_neg()),
        LaurentJet(phi.frame(), phi.base(), phi.shape(), std::min(0, phi.support_lo()), 0,
                   phi.anchor_pos(), phi.anchor_neg())};

    out.plus.set_mode(0, phi.mode(0) * cplx(conv.tilde0));
    out.minus.set_mode(0, phi.mode(0) * cplx(1.0 + conv.tilde0));
    for (const auto& [m, j] : phi.modes()) {
        if (m >= 1) out.plus.set_mode(m, -j);
        if (m <= -1) out.minus.set_mode(m, j);
    }
    return out;
}

SampledCircle sample_circle(const std::function<LieMatrix(const cplx&)>& f, int n_samples,
                            int mode_budget) {
    if (n_samples < 2 || (n_samples & (n_samples - 1)) != 0)
        throw std::invalid_argument("sample_circle: sample count must be a power of two");
    SampledCircle s;
    s.mode_budget = mode_budget;
    s.values.reserve(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        const double th = 2.0 * M_PI * j / n_samples;
        s.values.push_back(f(cplx(std::cos(th), std::sin(th))));
    }
    return s;
}

AnnulusFunction AnnulusFunction::from_laurent(LaurentJet modes) {
    AnnulusFunction f;
    f.laurent_ = std::move(modes);
    return f;
}

AnnulusFunction AnnulusFunction::from_sampled(SampledCircle s) {
    if (s.values.empty()) throw std::invalid_argument("AnnulusFunction: no samples");
    if ((s.samples() & (s.samples() - 1)) != 0)
        throw std::invalid_argument("AnnulusFunction: sample count must be a power of two");
    AnnulusFunction f;
    f.sampled_ = std::move(s);
    return f;
}

const LaurentJet& AnnulusFunction::laurent() const {
    if (!laurent_) throw std::runtime_error("AnnulusFunction: no Laurent backend");
    return *laurent_;
}

const SampledCircle& AnnulusFunction::sampled() const {
    if (!sampled_) throw std::runtime_error("AnnulusFunction: no sampled backend");
    return *sampled_;
}

LaurentJet AnnulusFunction::laurent_coefficients() const {
    if (laurent_) return *laurent_;
    const auto& s = *sampled_;
    const int n = s.samples();
    if (n < 4 * s.mode_budget)
        throw std::runtime_error("laurent_coefficients: sample count below the aliasing budget (need >= 4 * mode budget)");
    const int rank = s.rank();
    const Vec4 base{0, 0, 0, 0};
    LaurentJet out(Frame::Complex, base, rank, -s.mode_budget, s.mode_budget, 0, 0);
    for (int k = -s.mode_budget; k <= s.mode_budget; ++k) {
        LieMatrix acc = LieMatrix::zero(rank);
        for (int j = 0; j < n; ++j) {
            const double th = -2.0 * M_PI * j * k / n;
            acc += s.values[j] * cplx(std::cos(th), std::sin(th));
        }
        acc *= cplx(1.0 / n);
        out.set_mode(k, Jet::constant(Frame::Complex, base, acc, rank));
    }
    return out;
}

LieMatrix AnnulusFunction::contour_coefficient(int k) const {
    if (laurent_) {
        const int v = laurent_->mode_valid(k);
        if (v < 0) throw std::runtime_error("contour_coefficient: mode outside the known window");
        return laurent_->mode(k).coeff(Mono{});
    }
    const auto& s = *sampled_;
    if (std::abs(k) > s.mode_budget)
        throw std::runtime_error("contour_coefficient: mode outside the sampling budget");
    const int n = s.samples();
    if (n < 4 * s.mode_budget)
        throw std::runtime_error("contour_coefficient: sample count below the aliasing budget");
    LieMatrix acc = LieMatrix::zero(s.rank());
    for (int j = 0; j < n; ++j) {
        const double th = -2.0 * M_PI * j * k / n;
        acc += s.values[j] * cplx(std::cos(th), std::sin(th));
    }
    return acc * cplx(1.0 / n);
}

LieMatrix AnnulusFunction::eval(const cplx& lambda) const {
    if (laurent_) return laurent_->eval(laurent_->base(), lambda);
    // nearest-sample read is not meaningful; interpolate via the mode table
    LaurentJet modes = laurent_coefficients();
    return modes.eval(modes.base(), lambda);
}

SplitPair split(const AnnulusFunction& f, const SplitConvention& conv) {
    return split(f.laurent_coefficients(), conv);
}

}  // namespace sdym
