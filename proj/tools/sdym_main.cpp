#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sdym/report.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string fixtures_path;
    std::string out_path;
    std::string suite = "all";
    uint64_t seed = 0;
    int jet_order = 0;
    int lambda_order = 0;
    double tolerance_scale = 0.0;
    bool timing = false;
};

int run_checks(const Options& opt, const std::string& which, CLI::App* cmd) {
    sdym::RunConfig cfg;
    try {
        if (!opt.config_path.empty()) cfg = sdym::RunConfig::from_json_file(opt.config_path);
        if (cmd->count("--seed")) cfg.seed = opt.seed;
        if (cmd->count("--jet-order")) cfg.jet_order = opt.jet_order;
        if (cmd->count("--lambda-order")) cfg.lambda_order = opt.lambda_order;
        if (cmd->count("--tolerance-scale")) cfg.tolerance_scale = opt.tolerance_scale;
        if (cmd->count("--fixtures")) cfg.fixtures_path = opt.fixtures_path;
        cfg.timing = opt.timing;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }

    std::vector<sdym::CheckReport> reports;
    try {
        if (which == "sdym")
            reports = sdym::check_sdym(cfg);
        else if (which == "manifest")
            reports = sdym::check_manifest(cfg);
        else if (which == "rh")
            reports = sdym::check_rh(cfg);
        else if (which == "hidden")
            reports = sdym::check_hidden(cfg);
        else if (which == "all")
            reports = sdym::run_suite(cfg);
        else {
            std::cerr << "unknown suite: " << which << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string lines = sdym::to_json_lines(reports, cfg.timing);
    if (opt.out_path.empty()) {
        std::cout << lines;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "cannot open output file " << opt.out_path << "\n";
            return 2;
        }
        out << lines;
    }

    int failed = 0;
    for (const auto& r : reports)
        if (!r.pass) ++failed;
    std::cerr << reports.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suite for self-dual gauge fields and their hidden symmetries"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "JSON config file");
        cmd->add_option("--seed", opt.seed, "probe/sample seed");
        cmd->add_option("--jet-order", opt.jet_order, "truncation order of the jets");
        cmd->add_option("--lambda-order", opt.lambda_order, "fibre-expansion order of the towers");
        cmd->add_option("--tolerance-scale", opt.tolerance_scale, "multiply all tolerances");
        cmd->add_option("--fixtures", opt.fixtures_path, "fixture JSON file");
        cmd->add_option("--out", opt.out_path, "write the JSON Lines report here (default stdout)");
        cmd->add_flag("--timing", opt.timing, "include wall times (breaks byte determinism)");
    };

    auto* c_sdym = app.add_subcommand("check-sdym", "self-duality residuals over the fixtures");
    auto* c_manifest = app.add_subcommand("check-manifest", "gauge and conformal symmetry checks");
    auto* c_rh = app.add_subcommand("check-rh", "Riemann-Hilbert splitting checks");
    auto* c_hidden = app.add_subcommand("check-hidden", "linear system, Ward roundtrip, hidden symmetries");
    auto* c_all = app.add_subcommand("run-suite", "all check suites");
    for (auto* c : {c_sdym, c_manifest, c_rh, c_hidden, c_all}) add_common(c);
    std::string suite_arg = "all";
    c_all->add_option("--suite", suite_arg, "restrict to one suite: sdym|manifest|rh|hidden|all");

    std::string fixtures_out;
    auto* c_write = app.add_subcommand("write-fixtures", "write the built-in fixture set to a file");
    c_write->add_option("path", fixtures_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    if (c_write->parsed()) {
        std::vector<sdym::FamilyInfo> metas;
        for (const auto& f : sdym::config_fixtures(sdym::RunConfig{})) metas.push_back(f.meta());
        sdym::save_fixtures(fixtures_out, metas);
        std::cerr << "wrote " << metas.size() << " fixtures to " << fixtures_out << "\n";
        return 0;
    }
    if (c_sdym->parsed()) return run_checks(opt, "sdym", c_sdym);
    if (c_manifest->parsed()) return run_checks(opt, "manifest", c_manifest);
    if (c_rh->parsed()) return run_checks(opt, "rh", c_rh);
    if (c_hidden->parsed()) return run_checks(opt, "hidden", c_hidden);
    return run_checks(opt, suite_arg, c_all);
}
