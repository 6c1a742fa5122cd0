#include "sdym/report.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <thread>

#include "json.hpp"
#include "sdym/hidden.hpp"
#include "sdym/manifest.hpp"
#include "sdym/probes.hpp"
#include "sdym/riemann_hilbert.hpp"

namespace sdym {

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Check {
    std::string id;
    double tolerance;
    std::function<double()> fn;
};

std::vector<CheckReport> execute(const RunConfig& cfg, std::vector<Check> checks) {
    std::vector<CheckReport> out(checks.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < checks.size();) {
            CheckReport& r = out[i];
            r.id = checks[i].id;
            r.digest = hex64(fnv1a(cfg.canonical_string() + "|" + checks[i].id));
            r.tolerance = checks[i].tolerance * cfg.tolerance_scale;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                r.residual = checks[i].fn();
            } catch (const std::exception& e) {
                r.residual = 9.9e99;
                r.error = e.what();
            }
            const auto t1 = std::chrono::steady_clock::now();
            r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            r.pass = r.residual <= r.tolerance;
        }
    };
    const int workers = std::max(1, std::min<int>(worker_count(), int(checks.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    std::sort(out.begin(), out.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    return out;
}

/// Jet base point near the fixture center, kept away from the poles.
Vec4 jet_base_for(const FamilyInfo& meta) {
    const Vec4 offset{0.55, 0.45, -0.5, 0.65};
    for (double scale : {1.0, 1.4, 1.9, 2.6}) {
        Vec4 base;
        for (int i = 0; i < 4; ++i) base[i] = meta.center[i] + scale * offset[i];
        bool ok = true;
        for (const auto& p : meta.poles) {
            double d2 = 0.0;
            for (int i = 0; i < 4; ++i) d2 += (base[i] - p.center[i]) * (base[i] - p.center[i]);
            if (d2 < 0.35 * 0.35) ok = false;
        }
        if (ok) return base;
    }
    throw std::runtime_error("jet_base_for: no pole-free base point found");
}

std::string fixture_tag(size_t index, const FamilyInfo& meta) {
    return "f" + std::to_string(index) + "." + meta.family + (meta.anti ? ".anti" : "");
}

Jet random_gauge_parameter(Rng& rng, const Vec4& base, int degree) {
    const auto t = su2_basis();
    Jet out(Frame::Complex, base, 2, kExactOrder);
    for (int a = 0; a < 3; ++a) {
        ScalarJet p(Frame::Real, Vec4{0, 0, 0, 0}, 1, kExactOrder);
        Mono m;
        for (int e0 = 0; e0 <= degree; ++e0)
            for (int e1 = 0; e0 + e1 <= degree; ++e1)
                for (int e2 = 0; e0 + e1 + e2 <= degree; ++e2)
                    for (int e3 = 0; e0 + e1 + e2 + e3 <= degree; ++e3) {
                        m.e = {uint8_t(e0), uint8_t(e1), uint8_t(e2), uint8_t(e3)};
                        p.set_coeff(m, std::round(rng.uniform(-16, 16)) / 16.0);
                    }
        out += scalar_times_matrix(to_complex_frame(rebase(p, base)), t[a]);
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (n != 2) throw std::invalid_argument("config: built-in fixture families are su(2); n must be 2");
    if (jet_order < lambda_order + 2)
        throw std::invalid_argument("config: jet_order must be at least lambda_order + 2");
    if (jet_order < 2 || jet_order > 12) throw std::invalid_argument("config: jet_order out of range [2,12]");
    if (lambda_order < 1 || lambda_order > 8)
        throw std::invalid_argument("config: lambda_order out of range [1,8]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("config: alpha must be in (0,1)");
    if (mode_window < 2 * lambda_order)
        throw std::invalid_argument("config: mode_window must be at least 2 * lambda_order");
    if (circle_samples < 4 * mode_window)
        throw std::invalid_argument("config: circle_samples must be at least 4 * mode_window");
    if (probe_count < 1) throw std::invalid_argument("config: probe_count must be positive");
    if (tolerance_scale < 0.0) throw std::invalid_argument("config: tolerance_scale must be nonnegative");
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    RunConfig cfg;
    cfg.n = doc.value("n", cfg.n);
    cfg.jet_order = doc.value("jet_order", cfg.jet_order);
    cfg.lambda_order = doc.value("lambda_order", cfg.lambda_order);
    cfg.mode_window = doc.value("mode_window", cfg.mode_window);
    cfg.probe_count = doc.value("probe_count", cfg.probe_count);
    cfg.circle_samples = doc.value("circle_samples", cfg.circle_samples);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.alpha = doc.value("alpha", cfg.alpha);
    cfg.tolerance_scale = doc.value("tolerance_scale", cfg.tolerance_scale);
    if (doc.contains("tolerances")) {
        const auto& t = doc.at("tolerances");
        cfg.tol.exact = t.value("exact", cfg.tol.exact);
        cfg.tol.symmetry = t.value("symmetry", cfg.tol.symmetry);
        cfg.tol.fd = t.value("fd", cfg.tol.fd);
    }
    cfg.fixtures_path = doc.value("fixtures", cfg.fixtures_path);
    return cfg;
}

std::string RunConfig::canonical_string() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "n=%d;jet_order=%d;lambda_order=%d;mode_window=%d;probe_count=%d;"
                  "circle_samples=%d;seed=%llu;alpha=%.17g;tolerance_scale=%.17g;"
                  "tol=%.17g,%.17g,%.17g;fixtures=%s",
                  n, jet_order, lambda_order, mode_window, probe_count, circle_samples,
                  static_cast<unsigned long long>(seed), alpha, tolerance_scale, tol.exact,
                  tol.symmetry, tol.fd, fixtures_path.c_str());
    return buf;
}

std::vector<GaugePotential> config_fixtures(const RunConfig& cfg) {
    if (!cfg.fixtures_path.empty()) return load_fixtures(cfg.fixtures_path);
    std::vector<GaugePotential> out;
    out.push_back(bpst_instanton({0.1, -0.2, 0.3, 0.0}, 1.3));
    out.push_back(thooft_ansatz({{{0.1, -0.2, 0.3, 0.0}, 0.8}, {{-0.9, 0.5, 0.1, -0.3}, 0.5}}));
    return out;
}

int worker_count() {
    if (const char* env = std::getenv("SDYM_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

std::vector<CheckReport> check_sdym(const RunConfig& cfg) {
    cfg.validate();
    auto fixtures = config_fixtures(cfg);
    std::vector<Check> checks;
    for (size_t i = 0; i < fixtures.size(); ++i) {
        const auto fixture = std::make_shared<GaugePotential>(fixtures[i]);
        const std::string tag = fixture_tag(i, fixture->meta());
        checks.push_back({"sdym." + tag + ".probes", cfg.tol.exact, [fixture, &cfg, i] {
                              auto probes = family_probes(fixture->meta(), cfg.seed + i, cfg.probe_count);
                              return sdym_residual(*fixture, probes);
                          }});
        checks.push_back({"sdym." + tag + ".jets", cfg.tol.exact, [fixture, &cfg] {
                              auto aj = to_jets(*fixture, jet_base_for(fixture->meta()), cfg.jet_order);
                              return sdym_residual(aj);
                          }});
    }
    return execute(cfg, std::move(checks));
}

std::vector<CheckReport> check_manifest(const RunConfig& cfg) {
    cfg.validate();
    auto fixtures = config_fixtures(cfg);
    if (fixtures.empty()) return {};
    const auto a = std::make_shared<GaugePotential>(
        to_jets(fixtures[0], jet_base_for(fixtures[0].meta()), cfg.jet_order));

    std::vector<Check> checks;
    checks.push_back({"manifest.closure", cfg.tol.exact, [] {
                          return brackets_close_in_span(all_conformal_generators()) ? 0.0 : 1.0;
                      }});
    checks.push_back({"manifest.so3.commute", cfg.tol.exact, [] {
                          double r = 0.0;
                          for (int x = 0; x < 3; ++x)
                              for (int y = 0; y < 3; ++y) {
                                  auto br = vf_bracket(conformal_generator(GenName::X, x),
                                                       conformal_generator(GenName::Y, y));
                                  for (int nu = 0; nu < 4; ++nu)
                                      r = std::max(r, br.comp[nu].max_coeff_norm());
                              }
                          return r;
                      }});
    for (const auto& n : all_conformal_generators())
        checks.push_back({"manifest.conf." + n.label, cfg.tol.exact, [a, n] {
                              return linearized_sdym_residual(*a, conformal_variation(*a, n));
                          }});
    for (int k = 0; k < 5; ++k)
        checks.push_back({"manifest.gauge.rand" + std::to_string(k), cfg.tol.exact, [a, &cfg, k] {
                              Rng rng(cfg.seed + 100 + k);
                              Jet theta = random_gauge_parameter(rng, a->jet_base(), 2);
                              return linearized_sdym_residual(*a, gauge_variation(*a, theta));
                          }});
    return execute(cfg, std::move(checks));
}

std::vector<CheckReport> check_rh(const RunConfig& cfg) {
    cfg.validate();
    const Vec4 base{0, 0, 0, 0};
    auto random_table = [&](uint64_t seed, int window) {
        Rng rng(seed);
        LaurentJet f(Frame::Complex, base, cfg.n, -window, window, 0, 0);
        for (int m = -window; m <= window; ++m)
            f.set_mode(m, Jet::constant(Frame::Complex, base, random_sl_matrix(rng, cfg.n), cfg.n));
        return f;
    };

    std::vector<Check> checks;
    checks.push_back({"rh.reconstruct", cfg.tol.exact, [&cfg, random_table] {
                          LaurentJet f = random_table(cfg.seed + 200, 5);
                          auto sp = split(f);
                          LaurentJet rec = sp.minus - sp.plus;
                          double r = 0.0;
                          for (int m = -5; m <= 5; ++m)
                              r = std::max(r, max_diff(rec.mode(m), f.mode(m), 0));
                          return r;
                      }});
    checks.push_back({"rh.support", cfg.tol.exact, [&cfg, random_table] {
                          auto sp = split(random_table(cfg.seed + 201, 5));
                          bool ok = sp.plus.support_lo() >= 0 && sp.minus.support_hi() <= 0;
                          for (const auto& [m, j] : sp.plus.modes()) ok = ok && m >= 0;
                          for (const auto& [m, j] : sp.minus.modes()) ok = ok && m <= 0;
                          return ok ? 0.0 : 1.0;
                      }});
    checks.push_back({"rh.split.constant", cfg.tol.exact, [&cfg, random_table] {
                          LaurentJet f = random_table(cfg.seed + 202, 3);
                          auto sp = split(f);
                          return max_diff(sp.plus.mode(0), f.mode(0) * cplx(-0.5), 0);
                      }});
    checks.push_back({"rh.dual_backend", cfg.tol.exact, [&cfg, random_table] {
                          LaurentJet f = random_table(cfg.seed + 203, 8);
                          auto sampled = AnnulusFunction::from_sampled(sample_circle(
                              [&](const cplx& l) { return f.eval(f.base(), l); },
                              cfg.circle_samples, cfg.mode_window));
                          auto exact = AnnulusFunction::from_laurent(f);
                          double r = 0.0;
                          for (int k = -8; k <= 8; ++k)
                              r = std::max(r, (exact.contour_coefficient(k) -
                                               sampled.contour_coefficient(k))
                                                  .max_abs());
                          return r;
                      }});
    checks.push_back({"rh.residue_oracle", cfg.tol.exact, [&cfg] {
                          auto f = AnnulusFunction::from_sampled(sample_circle(
                              [](const cplx& l) {
                                  return LieMatrix::identity(2) * (1.0 / (l - 2.0));
                              },
                              cfg.circle_samples, cfg.mode_window));
                          auto modes = f.laurent_coefficients();
                          double r = 0.0;
                          for (int n = 0; n <= 8; ++n) {
                              const double expect = -std::pow(2.0, -n - 1);
                              r = std::max(r, (modes.mode(n).coeff(Mono{}) -
                                               cplx(expect) * LieMatrix::identity(2))
                                                  .max_abs());
                          }
                          for (int n = -8; n < 0; ++n)
                              r = std::max(r, modes.mode(n).coeff(Mono{}).max_abs());
                          return r;
                      }});
    return execute(cfg, std::move(checks));
}

std::vector<CheckReport> check_hidden(const RunConfig& cfg) {
    cfg.validate();
    auto fixtures = config_fixtures(cfg);
    if (fixtures.empty()) return {};

    // One shared background and tower set, built up front and shared
    // read-only by every check.
    struct Shared {
        GaugePotential a;
        LaxSolution psi;
        LaurentJet f;
        std::map<std::string, HiddenVariation> variations;
    };
    auto sh = std::make_shared<Shared>();
    sh->a = to_jets(fixtures[0], jet_base_for(fixtures[0].meta()), cfg.jet_order);
    sh->psi = lax_recursion(sh->a, cfg.lambda_order);
    sh->f = transition_matrix(sh->psi, cfg.mode_window);

    const auto t = su2_basis();
    for (int n = 0; n <= 2; ++n)
        for (int a = 0; a < 3; ++a)
            sh->variations["gauge.n" + std::to_string(n) + ".t" + std::to_string(a)] =
                gauge_type_variation(sh->a, sh->psi, GaugeTypeGenerator::monomial(n, t[a]),
                                     cfg.mode_window);
    const std::vector<std::pair<std::string, ConformalGenerator>> lifted{
        {"P1", conformal_generator(GenName::P, 0)},
        {"B", conformal_generator(GenName::B)},
        {"X1", conformal_generator(GenName::X, 0)}};
    for (const auto& [label, gen] : lifted)
        for (int shift : {0, -1})
            sh->variations["diffeo." + label + ".l" + std::to_string(shift)] = diffeo_type_variation(
                sh->a, sh->psi, lambda_shift(lift_conformal(gen), shift),
                shift == 0 ? Branch::Plus : Branch::Minus, cfg.mode_window);

    std::vector<Check> checks;
    checks.push_back({"hidden.lax.verify", cfg.tol.exact, [sh, &cfg] {
                          CoverRegion cover(cfg.alpha);
                          return verify_linear_system(sh->a, sh->psi, cover.lambda_samples());
                      }});
    checks.push_back({"hidden.ward.roundtrip", cfg.tol.exact, [sh] {
                          GaugePotential rec = potentials_from_psi(sh->psi);
                          double r = 0.0;
                          for (int v = 0; v < 4; ++v) {
                              const int cap = std::min(
                                  {rec.cjet(v).valid(), sh->a.cjet(v).valid()});
                              r = std::max(r, max_diff(rec.cjet(v), sh->a.cjet(v), cap));
                          }
                          return r;
                      }});
    checks.push_back({"hidden.transition.holomorphy", cfg.tol.exact,
                      [sh] { return holomorphy_residual_coeffs(sh->f); }});
    checks.push_back({"hidden.example1.reduction", cfg.tol.exact, [sh, &cfg] {
                          Rng rng(cfg.seed + 300);
                          Jet theta = random_gauge_parameter(rng, sh->a.jet_base(), 1)
                                          .truncated(cfg.jet_order);
                          Variation via = variation_from_plus_part(
                              sh->a, LaurentJet::from_jet(theta), cfg.mode_window);
                          Variation direct = gauge_variation(sh->a, theta);
                          double r = 0.0;
                          for (int v = 0; v < 4; ++v)
                              r = std::max(r, max_diff(via.cjet(v), direct.cjet(v),
                                                       cfg.jet_order - 1));
                          return r;
                      }});
    for (const auto& [key, hv] : sh->variations) {
        checks.push_back({"hidden." + key + ".identity", cfg.tol.exact,
                          [&hv2 = hv] { return hv2.identity_residual; }});
        checks.push_back({"hidden." + key + ".symmetry", cfg.tol.symmetry,
                          [sh, &hv2 = hv] { return linearized_sdym_residual(sh->a, hv2.dA); }});
    }
    checks.push_back({"hidden.reality", cfg.tol.exact, [sh] {
                          double r = 0.0;
                          for (const auto& [key, hv] : sh->variations)
                              if (hv.antipodal_real) r = std::max(r, antihermiticity_defect(hv.dA));
                          return r;
                      }});

    const std::vector<std::array<GaugeTypeGenerator, 2>> pairs{
        {GaugeTypeGenerator::monomial(1, t[0]), GaugeTypeGenerator::monomial(0, t[1])},
        {GaugeTypeGenerator::monomial(2, t[2]), GaugeTypeGenerator::monomial(1, t[1])},
        {GaugeTypeGenerator::monomial(0, t[0]), GaugeTypeGenerator::monomial(0, t[2])},
        {GaugeTypeGenerator::monomial(-1, t[0]), GaugeTypeGenerator::monomial(1, t[2])},
        {GaugeTypeGenerator::monomial(0, t[1], 1, 0), GaugeTypeGenerator::monomial(1, t[0])}};
    for (size_t k = 0; k < pairs.size(); ++k)
        checks.push_back({"hidden.bracket.case" + std::to_string(k), cfg.tol.exact,
                          [sh, &cfg, &p = pairs[k]] {
                              return action_bracket_check(p[0], p[1], sh->f, cfg.mode_window);
                          }});
    const std::vector<std::pair<std::string, ConformalGenerator>> eta_gens{
        {"P1", conformal_generator(GenName::P, 0)},
        {"P3", conformal_generator(GenName::P, 2)},
        {"B", conformal_generator(GenName::B)},
        {"X1", conformal_generator(GenName::X, 0)},
        {"Y2", conformal_generator(GenName::Y, 1)}};
    for (size_t k = 0; k < eta_gens.size(); ++k)
        checks.push_back(
            {"hidden.derivation." + eta_gens[k].first, cfg.tol.exact, [sh, &cfg, &g = eta_gens[k]] {
                 return derivation_check(lift_conformal(g.second),
                                         GaugeTypeGenerator::monomial(1, su2_basis()[0]), sh->f,
                                         cfg.mode_window);
             }});

    auto reports = execute(cfg, std::move(checks));
    return reports;
}

std::vector<CheckReport> run_suite(const RunConfig& cfg) {
    cfg.validate();
    std::vector<CheckReport> all;
    for (auto* fn : {check_sdym, check_manifest, check_rh, check_hidden}) {
        auto part = fn(cfg);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    return all;
}

bool all_pass(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

std::string to_json_lines(const std::vector<CheckReport>& reports, bool timing) {
    std::string out;
    for (const auto& r : reports) {
        nlohmann::ordered_json rec;
        rec["id"] = r.id;
        rec["digest"] = r.digest;
        rec["residual"] = r.residual;
        rec["tolerance"] = r.tolerance;
        rec["pass"] = r.pass;
        rec["wall_ms"] = timing ? r.wall_ms : 0.0;
        if (!r.error.empty()) rec["error"] = r.error;
        out += rec.dump();
        out += "\n";
    }
    return out;
}

}  // namespace sdym
