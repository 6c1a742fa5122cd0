#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdym/jet.hpp"
#include "sdym/laurent.hpp"

namespace sdym {

/// Closed-form potential backend: components and their exact first derivatives.
class AnalyticPotential {
public:
    virtual ~AnalyticPotential() = default;
    virtual int rank() const = 0;
    /// A_mu(x), real-frame component index mu in 0..3.
    virtual LieMatrix component(int mu, const Vec4& x) const = 0;
    /// d A_mu / d x_dmu at x.
    virtual LieMatrix d_component(int dmu, int mu, const Vec4& x) const = 0;
};

struct PolePoint {
    Vec4 center;
    double weight;
};

struct FamilyInfo {
    std::string family;  // "zero" | "constant" | "bpst" | "thooft" | "custom"
    int n = 2;
    Vec4 center{0, 0, 0, 0};
    double scale = 1.0;
    std::vector<PolePoint> poles;
    bool anti = false;  // mirrored (anti-self-dual) family
};

/// Gauge potential with an analytic and/or a jet backend. The jet backend
/// stores the four complex components A_y, A_ybar, A_z, A_zbar (indexed by
/// CVar) as jets at a common base point; it is authoritative for symmetry
/// checks. The analytic backend serves broad point sampling.
class GaugePotential {
public:
    GaugePotential() = default;

    static GaugePotential analytic(std::shared_ptr<const AnalyticPotential> p, FamilyInfo meta);
    static GaugePotential from_complex_jets(std::array<Jet, 4> comps, FamilyInfo meta);
    static GaugePotential from_real_jets(const std::array<Jet, 4>& real_comps, FamilyInfo meta);

    int rank() const { return meta_.n; }
    const FamilyInfo& meta() const { return meta_; }
    bool has_jets() const { return jets_.has_value(); }
    bool has_analytic() const { return analytic_ != nullptr; }

    const AnalyticPotential& analytic_backend() const;
    /// Complex component jet, var in {vY, vYb, vZ, vZb}.
    const Jet& cjet(int var) const;
    /// Real-frame component jet A_mu.
    Jet rjet(int mu) const;
    const Vec4& jet_base() const;

    /// Complex components at a point (either backend).
    std::array<LieMatrix, 4> complex_components_at(const Vec4& x) const;
    /// Real components at a point (either backend).
    std::array<LieMatrix, 4> real_components_at(const Vec4& x) const;

private:
    std::shared_ptr<const AnalyticPotential> analytic_;
    std::optional<std::array<Jet, 4>> jets_;
    FamilyInfo meta_;
};

/// Infinitesimal variation of a potential; same backend options.
struct Variation {
    // Complex component jets (vY..vZb), or an analytic evaluator, or both.
    std::optional<std::array<Jet, 4>> jets;
    std::function<LieMatrix(int mu, const Vec4&)> analytic;  // real-frame components
    int n = 0;

    static Variation from_complex_jets(std::array<Jet, 4> comps);
    static Variation from_real_jets(const std::array<Jet, 4>& real_comps);
    const Jet& cjet(int var) const;
    Jet rjet(int mu) const;
    std::array<LieMatrix, 4> real_components_at(const Vec4& x) const;
};

/// Real components from complex ones: A_1 = A_y + A_yb, A_2 = i(A_y - A_yb),
/// A_3 = A_z + A_zb, A_4 = i(A_zb - A_z).
template <class T>
std::array<T, 4> real_from_complex_components(const std::array<T, 4>& c) {
    const cplx i(0.0, 1.0);
    return {c[vY] + c[vYb], i * c[vY] - i * c[vYb], c[vZ] + c[vZb], i * c[vZb] - i * c[vZ]};
}

/// Complex components from real ones (inverse of the above):
/// A_y = (A_1 - i A_2)/2, A_yb = (A_1 + i A_2)/2,
/// A_z = (A_3 + i A_4)/2, A_zb = (A_3 - i A_4)/2.
template <class T>
std::array<T, 4> complex_from_real_components(const std::array<T, 4>& r) {
    const cplx i(0.0, 1.0);
    std::array<T, 4> c;
    c[vY] = (r[0] - i * r[1]) * cplx(0.5);
    c[vYb] = (r[0] + i * r[1]) * cplx(0.5);
    c[vZ] = (r[2] + i * r[3]) * cplx(0.5);
    c[vZb] = (r[2] - i * r[3]) * cplx(0.5);
    return c;
}

enum class CovAction : uint8_t { Fundamental, Adjoint };

/// Covariant derivative along a complex-frame direction:
/// fundamental D_a f = d_a f + A_a f; adjoint D_a f = d_a f + [A_a, f].
Jet covariant_derive(const GaugePotential& a, const Jet& f, int var,
                     CovAction action = CovAction::Adjoint);
/// Real-frame direction version.
Jet covariant_derive_real(const GaugePotential& a, const Jet& f, int mu,
                          CovAction action = CovAction::Adjoint);
/// Coefficient-wise covariant derivative of a Laurent object.
LaurentJet covariant_derive(const GaugePotential& a, const LaurentJet& f, int var,
                            CovAction action = CovAction::Adjoint,
                            int mode_budget = kDefaultModeBudget);

/// Real-frame curvature component jets F_{mu nu} (jet backend).
class CurvatureJets {
public:
    explicit CurvatureJets(int n) : n_(n) {}
    Jet at(int mu, int nu) const;
    void set(int mu, int nu, const Jet& j);
    int valid() const;

private:
    static int pair_index(int mu, int nu);
    int n_;
    std::array<Jet, 6> comp_;
};

CurvatureJets curvature(const GaugePotential& a);
/// Curvature at a point from the analytic backend's exact derivatives.
Tensor2Antisym curvature_at(const GaugePotential& a, const Vec4& x);

/// Complex-frame curvature component F_{ab} = d_a A_b - d_b A_a + [A_a, A_b].
Jet curvature_complex(const GaugePotential& a, int va, int vb);

/// Max norm of the anti-self-dual projection of the curvature: the residual
/// of the self-duality equations. Jet backend: coefficient-wise over the jet
/// (probes ignored); analytic backend: max over probe points.
double sdym_residual(const GaugePotential& a, const std::vector<Vec4>& probes = {});
/// Mirror check: norm of the self-dual projection (anti-instanton controls).
double asd_residual(const GaugePotential& a, const std::vector<Vec4>& probes = {});

/// Max norm of the anti-self-dual projection of the linearized curvature
/// dF_{mu nu} = D_mu dA_nu - D_nu dA_mu (adjoint covariant derivative).
/// Jet backends: coefficient-wise; analytic: finite differences at probes.
double linearized_sdym_residual(const GaugePotential& a, const Variation& da,
                                const std::vector<Vec4>& probes = {}, double fd_step = 1e-4);

/// su(2) ansatz families. Discrete choices (tensor kind and sign) are pinned
/// by the self-duality residual oracle; see tests.
GaugePotential bpst_instanton(const Vec4& center, double scale, int n = 2);
GaugePotential anti_bpst_instanton(const Vec4& center, double scale, int n = 2);
GaugePotential thooft_ansatz(const std::vector<PolePoint>& poles, int n = 2);
GaugePotential anti_thooft_ansatz(const std::vector<PolePoint>& poles, int n = 2);

GaugePotential zero_potential(int n);
GaugePotential constant_potential(const std::array<LieMatrix, 4>& real_comps);

/// Jet backend for a potential at the given base point and order. Exact jet
/// arithmetic for the built-in families; throws for plain analytic customs.
GaugePotential to_jets(const GaugePotential& a, const Vec4& base, int order);

/// Conjugate by a constant group element: A -> g^-1 A g.
GaugePotential conjugate_constant(const GaugePotential& a, const LieMatrix& g);

/// Probe points for a family: ball of the given radius around the family
/// center, excluding pole neighbourhoods (radius 0.1 * scale).
std::vector<Vec4> family_probes(const FamilyInfo& meta, uint64_t seed, int count,
                                double radius = 2.0);

/// Fixture file IO: JSON array of {family, n, center, scale, poles[]}.
std::vector<GaugePotential> load_fixtures(const std::string& path);
void save_fixtures(const std::string& path, const std::vector<FamilyInfo>& families);
GaugePotential potential_from_family(const FamilyInfo& meta);

}  // namespace sdym
