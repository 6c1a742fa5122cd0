#include "sdym/matrix.hpp"

#include <cmath>

namespace sdym {

LieMatrix inverse(const LieMatrix& m) {
    const int n = m.rank();
    LieMatrix a = m;
    LieMatrix inv = LieMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-300) throw std::runtime_error("inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const cplx d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = a(r, col);
            if (f == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::array<LieMatrix, 3> su2_basis() {
    const cplx i(0.0, 1.0);
    LieMatrix t1(2), t2(2), t3(2);
    // sigma_1 / (2i)
    t1(0, 1) = 1.0 / (2.0 * i);
    t1(1, 0) = 1.0 / (2.0 * i);
    // sigma_2 / (2i)
    t2(0, 1) = -i / (2.0 * i);
    t2(1, 0) = i / (2.0 * i);
    // sigma_3 / (2i)
    t3(0, 0) = 1.0 / (2.0 * i);
    t3(1, 1) = -1.0 / (2.0 * i);
    return {t1, t2, t3};
}

int levi_civita4(int m, int n, int r, int s) {
    const int p[4] = {m, n, r, s};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] == p[j]) return 0;
    int sign = 1;
    int q[4] = {m, n, r, s};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (q[i] > q[j]) {
                std::swap(q[i], q[j]);
                sign = -sign;
            }
    return sign;
}

namespace {
int eps3(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    if ((a == 0 && b == 1 && c == 2) || (a == 1 && b == 2 && c == 0) || (a == 2 && b == 0 && c == 1)) return 1;
    return -1;
}
}  // namespace

int thooft(ThooftKind kind, int a, int mu, int nu) {
    if (a < 0 || a > 2 || mu < 0 || mu > 3 || nu < 0 || nu > 3)
        throw std::invalid_argument("thooft: index out of range");
    const int flip = (kind == ThooftKind::SelfDual) ? 1 : -1;
    if (mu < 3 && nu < 3) return eps3(a, mu, nu);
    if (nu == 3 && mu < 3) return flip * (a == mu ? 1 : 0);
    if (mu == 3 && nu < 3) return -flip * (a == nu ? 1 : 0);
    return 0;
}

std::pair<Tensor2Antisym, Tensor2Antisym> sd_asd_project(const Tensor2Antisym& f) {
    const int n = f.rank();
    Tensor2Antisym plus(n), minus(n);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            LieMatrix dual = LieMatrix::zero(n);
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    const int e = levi_civita4(mu, nu, r, s);
                    if (e != 0) dual += cplx(0.5 * e) * f.at(r, s);
                }
            const LieMatrix p = cplx(0.5) * (f.at(mu, nu) + dual);
            plus.set(mu, nu, p);
            minus.set(mu, nu, f.at(mu, nu) - p);
        }
    return {plus, minus};
}

Tensor2Antisym thooft_tensor2(ThooftKind kind, int a, const LieMatrix& t) {
    Tensor2Antisym f(t.rank());
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) f.set(mu, nu, cplx(double(thooft(kind, a, mu, nu))) * t);
    return f;
}

}  // namespace sdym
