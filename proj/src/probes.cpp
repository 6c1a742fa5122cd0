#include "sdym/probes.hpp"

#include <cmath>

namespace sdym {

std::vector<Vec4> sample_ball(uint64_t seed, int count, const Vec4& center, double radius,
                              const std::vector<Vec4>& exclusions, double excl_radius) {
    Rng rng(seed);
    std::vector<Vec4> out;
    out.reserve(count);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 1000 * count + 1000)
            throw std::runtime_error("sample_ball: exclusion zones reject too many points");
        Vec4 p;
        double r2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            p[i] = rng.uniform(-1.0, 1.0);
            r2 += p[i] * p[i];
        }
        if (r2 > 1.0) continue;
        for (int i = 0; i < 4; ++i) p[i] = center[i] + radius * p[i];
        bool excluded = false;
        for (const auto& c : exclusions) {
            double d2 = 0.0;
            for (int i = 0; i < 4; ++i) d2 += (p[i] - c[i]) * (p[i] - c[i]);
            if (d2 < excl_radius * excl_radius) {
                excluded = true;
                break;
            }
        }
        if (!excluded) out.push_back(p);
    }
    return out;
}

std::vector<std::array<double, 3>> sample_sphere3(uint64_t seed, int count) {
    Rng rng(seed);
    std::vector<std::array<double, 3>> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        std::array<double, 3> v;
        double r2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            v[i] = rng.uniform(-1.0, 1.0);
            r2 += v[i] * v[i];
        }
        if (r2 > 1.0 || r2 < 1e-6) continue;
        const double r = std::sqrt(r2);
        for (int i = 0; i < 3; ++i) v[i] /= r;
        out.push_back(v);
    }
    return out;
}

std::vector<cplx> circle_points(double r, int count) {
    std::vector<cplx> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
        const double th = 2.0 * M_PI * j / count;
        out.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    return out;
}

LieMatrix random_sl_matrix(Rng& rng, int n) {
    LieMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const cplx t = m.trace() / cplx(double(n));
    for (int i = 0; i < n; ++i) m(i, i) -= t;
    return m;
}

LieMatrix random_su_matrix(Rng& rng, int n) {
    LieMatrix m = random_sl_matrix(rng, n);
    LieMatrix a = cplx(0.5) * (m - dagger(m));
    const cplx t = a.trace() / cplx(double(n));
    for (int i = 0; i < n; ++i) a(i, i) -= t;
    return a;
}

}  // namespace sdym
