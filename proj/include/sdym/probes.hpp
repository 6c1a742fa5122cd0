#pragma once

#include <cstdint>
#include <vector>

#include "sdym/matrix.hpp"

namespace sdym {

/// SplitMix64: tiny, portable, deterministic generator.
/// Used instead of <random> distributions so reports are byte-stable
/// across standard-library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0,1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    /// Uniform in [lo,hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    uint64_t s_;
};

/// Deterministic probe points in a ball around `center`, with optional
/// exclusion balls (radius `excl_radius`) around the given centers.
std::vector<Vec4> sample_ball(uint64_t seed, int count, const Vec4& center, double radius,
                              const std::vector<Vec4>& exclusions = {}, double excl_radius = 0.0);

/// Deterministic unit vectors in R^3 (points of S^2).
std::vector<std::array<double, 3>> sample_sphere3(uint64_t seed, int count);

/// Points on the circle |lambda| = r.
std::vector<cplx> circle_points(double r, int count);

/// Random traceless complex matrix with entries of size O(1).
LieMatrix random_sl_matrix(Rng& rng, int n);

/// Random anti-Hermitian traceless matrix.
LieMatrix random_su_matrix(Rng& rng, int n);

}  // namespace sdym
