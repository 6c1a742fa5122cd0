#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdym {

using cplx = std::complex<double>;
using Vec4 = std::array<double, 4>;

/// Default absolute tolerance for complex-scalar equality checks.
inline constexpr double kTolExact = 1e-12;

/// Dense complex n x n matrix, the value type of all fields.
/// Values are expected to lie in sl(n,C); su(n) membership (anti-Hermiticity)
/// is a checked property, not a distinct type.
class LieMatrix {
public:
    LieMatrix() : n_(0) {}
    explicit LieMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, cplx(0.0)) {}
    LieMatrix(int n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
        if (a_.size() != static_cast<size_t>(n) * n)
            throw std::invalid_argument("LieMatrix: entry count does not match rank");
    }

    static LieMatrix identity(int n) {
        LieMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static LieMatrix zero(int n) { return LieMatrix(n); }

    int rank() const { return n_; }
    bool empty() const { return n_ == 0; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    LieMatrix& operator+=(const LieMatrix& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    LieMatrix& operator-=(const LieMatrix& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    LieMatrix& operator*=(const cplx& s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend LieMatrix operator+(LieMatrix a, const LieMatrix& b) { return a += b; }
    friend LieMatrix operator-(LieMatrix a, const LieMatrix& b) { return a -= b; }
    friend LieMatrix operator*(LieMatrix a, const cplx& s) { return a *= s; }
    friend LieMatrix operator*(const cplx& s, LieMatrix a) { return a *= s; }
    friend LieMatrix operator-(LieMatrix a) { return a *= cplx(-1.0); }

    friend LieMatrix operator*(const LieMatrix& a, const LieMatrix& b) {
        a.check_same(b);
        const int n = a.n_;
        LieMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Frobenius norm.
    double norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_traceless(double tol = kTolExact) const { return std::abs(trace()) <= tol; }
    bool is_antihermitian(double tol = kTolExact) const {
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                if (std::abs((*this)(i, j) + std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

private:
    void check_same(const LieMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("LieMatrix: rank mismatch");
    }
    int n_;
    std::vector<cplx> a_;
};

inline LieMatrix commutator(const LieMatrix& a, const LieMatrix& b) { return a * b - b * a; }

inline LieMatrix dagger(const LieMatrix& m) {
    LieMatrix d(m.rank());
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) d(i, j) = std::conj(m(j, i));
    return d;
}

/// Gauss-Jordan inverse with partial pivoting.
LieMatrix inverse(const LieMatrix& m);

/// Anti-Hermitian su(2) basis T_a = sigma_a / (2i), satisfying [T_a,T_b] = eps_abc T_c.
std::array<LieMatrix, 3> su2_basis();

/// Completely antisymmetric tensor on four indices (0-based), eps(0,1,2,3) = +1.
int levi_civita4(int m, int n, int r, int s);

enum class ThooftKind : uint8_t { SelfDual, AntiSelfDual };

/// 't Hooft tensor value, a in {0,1,2}, mu,nu in {0..3} (coordinate 4 is index 3).
/// SelfDual kind satisfies (1/2) eps_{mnrs} eta^a_{rs} = +eta^a_{mn},
/// AntiSelfDual the same with a minus sign.
int thooft(ThooftKind kind, int a, int mu, int nu);

/// Antisymmetric 2-tensor of LieMatrix values, stored on ordered index pairs.
class Tensor2Antisym {
public:
    explicit Tensor2Antisym(int n) : n_(n), c_{} {
        for (auto& m : c_) m = LieMatrix::zero(n);
    }

    int rank() const { return n_; }

    LieMatrix at(int mu, int nu) const {
        if (mu == nu) return LieMatrix::zero(n_);
        return mu < nu ? c_[pair_index(mu, nu)] : -c_[pair_index(nu, mu)];
    }
    void set(int mu, int nu, const LieMatrix& m) {
        if (mu == nu) {
            if (m.max_abs() > 0.0) throw std::invalid_argument("Tensor2Antisym: diagonal must vanish");
            return;
        }
        if (mu < nu)
            c_[pair_index(mu, nu)] = m;
        else
            c_[pair_index(nu, mu)] = -m;
    }

    Tensor2Antisym& operator+=(const Tensor2Antisym& o) {
        for (int k = 0; k < 6; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Tensor2Antisym& operator-=(const Tensor2Antisym& o) {
        for (int k = 0; k < 6; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend Tensor2Antisym operator+(Tensor2Antisym a, const Tensor2Antisym& b) { return a += b; }
    friend Tensor2Antisym operator-(Tensor2Antisym a, const Tensor2Antisym& b) { return a -= b; }

    double norm() const {
        double s = 0.0;
        for (const auto& m : c_) s = std::max(s, m.norm());
        return s;
    }

private:
    static int pair_index(int mu, int nu) {
        static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        int k = idx[mu][nu];
        if (k < 0) throw std::logic_error("Tensor2Antisym: bad pair");
        return k;
    }
    int n_;
    std::array<LieMatrix, 6> c_;
};

/// Splits F into self-dual and anti-self-dual parts:
/// F+ = (F + *F)/2, F- = F - F+, with *F_{mn} = (1/2) eps_{mnrs} F_{rs}.
std::pair<Tensor2Antisym, Tensor2Antisym> sd_asd_project(const Tensor2Antisym& f);

/// 't Hooft tensor as a Tensor2Antisym with entries eta^a_{mn} * T.
Tensor2Antisym thooft_tensor2(ThooftKind kind, int a, const LieMatrix& t);

}  // namespace sdym
