#pragma once

#include <functional>
#include <optional>

#include "sdym/laurent.hpp"

namespace sdym {

/// Constant-mode convention of the additive splitting: the plus part gets
/// tilde0 * phi_0 and the minus part (1 + tilde0) * phi_0, so that
/// minus_0 - plus_0 = phi_0 always. The default is the symmetric choice.
/// Any other choice differs by a shared x-dependent shift of both parts,
/// i.e. by a manifest gauge transformation of the emitted variation.
struct SplitConvention {
    double tilde0 = -0.5;
};

/// Additive Riemann-Hilbert splitting of a Laurent object:
///   plus  = tilde0 * phi_0      - sum_{n>=1} lambda^n phi_n   (modes >= 0)
///   minus = (1+tilde0) * phi_0  + sum_{n<=-1} lambda^n phi_n  (modes <= 0)
/// so that minus - plus = phi.
struct SplitPair {
    LaurentJet plus;
    LaurentJet minus;
};

SplitPair split(const LaurentJet& phi, const SplitConvention& conv = {});

/// Matrix-valued function on the unit circle, sampled at n uniform points
/// (a power of two). Band-limited content up to the declared mode budget is
/// recovered exactly by the discrete transform.
struct SampledCircle {
    std::vector<LieMatrix> values;  // f(lambda_j), lambda_j = exp(2 pi i j / N)
    int mode_budget = 16;

    int rank() const { return values.empty() ? 0 : values[0].rank(); }
    int samples() const { return int(values.size()); }
};

SampledCircle sample_circle(const std::function<LieMatrix(const cplx&)>& f, int n_samples,
                            int mode_budget = 16);

/// Matrix-valued function of lambda on/near the unit circle with either an
/// exact Laurent backend or a sampled backend.
class AnnulusFunction {
public:
    static AnnulusFunction from_laurent(LaurentJet modes);
    static AnnulusFunction from_sampled(SampledCircle s);

    bool is_laurent() const { return laurent_.has_value(); }
    const LaurentJet& laurent() const;
    const SampledCircle& sampled() const;

    /// Mode table: exact passthrough for the Laurent backend; discrete
    /// Fourier transform (mode n from frequency bin n) for samples. Throws
    /// if the sample count cannot resolve the declared mode budget
    /// (n_samples >= 4 * mode_budget required).
    LaurentJet laurent_coefficients() const;

    /// Coefficient of lambda^k: exact mode read, or spectrally exact
    /// trapezoidal quadrature of the contour integral for samples. Throws
    /// for modes outside the known window.
    LieMatrix contour_coefficient(int k) const;

    LieMatrix eval(const cplx& lambda) const;

private:
    std::optional<LaurentJet> laurent_;
    std::optional<SampledCircle> sampled_;
};

/// Split through the mode table (either backend).
SplitPair split(const AnnulusFunction& f, const SplitConvention& conv = {});

}  // namespace sdym
