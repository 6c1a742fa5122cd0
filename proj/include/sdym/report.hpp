#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdym/gauge.hpp"

namespace sdym {

struct Tolerances {
    double exact = 1e-10;    // exact/jet identities
    double symmetry = 1e-8;  // linearized symmetry residuals
    double fd = 1e-6;        // finite-difference cross-checks
};

struct RunConfig {
    int n = 2;
    int jet_order = 6;
    int lambda_order = 3;
    int mode_window = 16;
    int probe_count = 100;
    int circle_samples = 256;
    uint64_t seed = 7;
    double alpha = 0.5;
    double tolerance_scale = 1.0;
    Tolerances tol;
    std::string fixtures_path;  // empty: built-in bpst + two-pole set
    bool timing = false;        // report wall times (breaks byte determinism)

    /// Throws on inconsistent settings (order-ledger feasibility and ranges)
    /// before any computation starts.
    void validate() const;

    static RunConfig from_json_file(const std::string& path);
    std::string canonical_string() const;
};

struct CheckReport {
    std::string id;
    std::string digest;    // config + id fingerprint
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
    std::string error;  // nonempty if the check threw
};

/// Load the configured fixtures (or the built-in set).
std::vector<GaugePotential> config_fixtures(const RunConfig& cfg);

std::vector<CheckReport> check_sdym(const RunConfig& cfg);
std::vector<CheckReport> check_manifest(const RunConfig& cfg);
std::vector<CheckReport> check_rh(const RunConfig& cfg);
std::vector<CheckReport> check_hidden(const RunConfig& cfg);
/// Union of the four suites.
std::vector<CheckReport> run_suite(const RunConfig& cfg);

bool all_pass(const std::vector<CheckReport>& reports);

/// JSON Lines, one record per check, stable key order. Wall times are
/// zeroed unless cfg.timing is set, keeping reports byte-deterministic.
std::string to_json_lines(const std::vector<CheckReport>& reports, bool timing);

/// Worker count: SDYM_WORKERS env var, else hardware concurrency.
int worker_count();

}  // namespace sdym
