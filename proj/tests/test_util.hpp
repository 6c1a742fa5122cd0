#pragma once

#include "sdym/jet.hpp"
#include "sdym/probes.hpp"

namespace sdym::testutil {

inline ScalarJet random_scalar_jet(Rng& rng, const Vec4& base, int order,
                                   Frame frame = Frame::Complex) {
    ScalarJet j(frame, base, 1, order);
    Mono m;
    for (int a = 0; a <= order; ++a)
        for (int b = 0; a + b <= order; ++b)
            for (int c = 0; a + b + c <= order; ++c)
                for (int d = 0; a + b + c + d <= order; ++d) {
                    m.e = {uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)};
                    j.set_coeff(m, cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
                }
    return j;
}

inline Jet random_matrix_jet(Rng& rng, const Vec4& base, int order, int n,
                             Frame frame = Frame::Complex) {
    Jet j(frame, base, n, order);
    Mono m;
    for (int a = 0; a <= order; ++a)
        for (int b = 0; a + b <= order; ++b)
            for (int c = 0; a + b + c <= order; ++c)
                for (int d = 0; a + b + c + d <= order; ++d) {
                    m.e = {uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)};
                    j.set_coeff(m, random_sl_matrix(rng, n));
                }
    return j;
}

}  // namespace sdym::testutil
