// Command-line front door: sample-size planning for regression on a fixed
// time interval with OU-correlated errors.
//
// Exit codes: 0 success, 1 domain/runtime error (single-line diagnostic on
// stderr), 2 usage error. Data goes to stdout (or --output), diagnostics to
// stderr.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ousize/design.hpp"
#include "ousize/report.hpp"
#include "ousize/sizing.hpp"
#include "ousize/threshold.hpp"

namespace {

using namespace ousize;

struct GlobalOpts {
    RunConfig cfg;
    std::string format = "csv";
};

void emit(const std::string& doc, const RunConfig& cfg) {
    if (cfg.output_path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream os(cfg.output_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + cfg.output_path);
    os << doc;
}

RunConfig finalize(GlobalOpts& g) {
    if (g.format == "csv")
        g.cfg.format = OutputFormat::Csv;
    else
        g.cfg.format = OutputFormat::Json;
    return g.cfg;
}

std::optional<ModelSpec> parse_model(const std::string& model, const std::string& param) {
    if (model == "agnostic") return std::nullopt;
    if (model == "intercept-only")
        return ModelSpec{ModelKind::InterceptOnly, ParameterTarget::Intercept};
    if (model == "slope-only")
        return ModelSpec{ModelKind::SlopeOnly, ParameterTarget::Slope};
    if (model == "full") {
        if (param == "intercept")
            return ModelSpec{ModelKind::InterceptSlope, ParameterTarget::Intercept};
        if (param == "slope")
            return ModelSpec{ModelKind::InterceptSlope, ParameterTarget::Slope};
        if (param == "covariance")
            return ModelSpec{ModelKind::InterceptSlope,
                             ParameterTarget::InterceptSlopeCovariance};
        throw CLI::ValidationError("--param", "full model needs --param "
                                              "intercept|slope|covariance");
    }
    throw CLI::ValidationError("--model",
                               "expected intercept-only|slope-only|full|agnostic");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sample-size planning under infill sampling with OU-correlated errors"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand
    app.set_config("--config", "", "Optional key=value config file");

    GlobalOpts g;
    app.add_option("--seed", g.cfg.seed, "Design RNG seed")->capture_default_str();
    app.add_option("--points", g.cfg.design_points, "Design size before rounding")
        ->capture_default_str();
    app.add_option("--restarts", g.cfg.maximin_restarts, "Maximin restarts")
        ->capture_default_str();
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", g.cfg.output_path, "Output file (default stdout)");

    // ---- size ----
    auto* size_cmd = app.add_subcommand("size", "Minimal n for a target variance ratio");
    double snr = 0.0, lambda = 0.0, sigma2 = 1.0, target = 0.9;
    std::string model = "agnostic", param = "intercept";
    bool rule_of_thumb = false;
    auto* snr_opt = size_cmd->add_option("--snr", snr, "Signal-to-noise ratio");
    auto* lam_opt = size_cmd->add_option("--lambda", lambda, "Tuning parameter directly");
    snr_opt->excludes(lam_opt);
    lam_opt->excludes(snr_opt);
    size_cmd->add_option("--sigma2", sigma2, "Overall variance")->capture_default_str();
    size_cmd->add_option("--target", target, "Target variance ratio in (0.7,1)")
        ->capture_default_str();
    size_cmd->add_option("--model", model, "intercept-only|slope-only|full|agnostic")
        ->capture_default_str();
    size_cmd->add_option("--param", param, "intercept|slope|covariance (full model)")
        ->capture_default_str();
    size_cmd->add_flag("--rule-of-thumb", rule_of_thumb,
                       "Use the conservative lambda/n < 1 preset instead of the fitted "
                       "threshold");

    // ---- thresholds ----
    auto* thr_cmd = app.add_subcommand("thresholds", "Fitted lambda/n threshold table");
    thr_cmd->add_option("--targets", g.cfg.targets, "Target ratios")->expected(-1);

    // ---- verify ----
    auto* ver_cmd =
        app.add_subcommand("verify", "Closed forms vs matrix oracles (GLS / OLS)");
    std::vector<int> grid_n;
    std::vector<double> grid_lambda, grid_sigma2 = {1.0};
    ver_cmd->add_option("--grid-n", grid_n, "n values (default 3..50)")->expected(-1);
    ver_cmd->add_option("--grid-lambda", grid_lambda,
                        "lambda values (default 0.01 0.1 1 5 20 100 150)")
        ->expected(-1);
    ver_cmd->add_option("--grid-sigma2", grid_sigma2, "sigma2 values")->expected(-1);

    // ---- curve ----
    auto* cur_cmd = app.add_subcommand("curve", "Observed and fitted ratio-vs-x data");
    std::string cur_model = "agnostic", cur_param = "intercept", view = "fit";
    int grid_res = 512;
    cur_cmd->add_option("--model", cur_model, "intercept-only|slope-only|full|agnostic")
        ->capture_default_str();
    cur_cmd->add_option("--param", cur_param, "intercept|slope|covariance")
        ->capture_default_str();
    cur_cmd->add_option("--view", view, "fit (restricted >=0.7) or full (0-1 scatter)")
        ->check(CLI::IsMember({"fit", "full"}))
        ->capture_default_str();
    cur_cmd->add_option("--resolution", grid_res, "Fitted-grid resolution")
        ->capture_default_str();

    // ---- design ----
    app.add_subcommand("design", "Space-filling (n, lambda) design and metrics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const RunConfig cfg = finalize(g);
        if (app.got_subcommand("design")) {
            const Design d =
                latin_hypercube(cfg.design_points, cfg.seed, cfg.maximin_restarts);
            emit(render_design(d, cfg), cfg);
        } else if (app.got_subcommand(thr_cmd)) {
            const Design d =
                latin_hypercube(cfg.design_points, cfg.seed, cfg.maximin_restarts);
            emit(render_thresholds(threshold_table(d, cfg.targets), cfg), cfg);
        } else if (app.got_subcommand(ver_cmd)) {
            if (grid_n.empty())
                for (int n = 3; n <= 50; ++n) grid_n.push_back(n);
            if (grid_lambda.empty()) grid_lambda = {0.01, 0.1, 1.0, 5.0, 20.0, 100.0, 150.0};
            const VerificationReport report =
                run_verification(grid_n, grid_lambda, grid_sigma2);
            emit(render_verification(report, cfg), cfg);
            if (!report.all_matched) {
                std::cerr << "verify: at least one row matched neither oracle\n";
                return 1;
            }
        } else if (app.got_subcommand(cur_cmd)) {
            const Design d =
                latin_hypercube(cfg.design_points, cfg.seed, cfg.maximin_restarts);
            std::vector<ModelSpec> specs;
            if (const auto spec = parse_model(cur_model, cur_param))
                specs = {*spec};
            else
                specs.assign(all_specs().begin(), all_specs().end());
            const RatioDataset full = build_ratio_dataset(d, specs);
            const RatioDataset fit_data = restrict_dataset(full, 0.7);
            const CubicFit fit = fit_cubic(fit_data);
            emit(render_curve(view == "full" ? full : fit_data, fit, cfg, grid_res), cfg);
        } else if (app.got_subcommand(size_cmd)) {
            SizingRequest req;
            if (snr_opt->count()) req.snr = snr;
            if (lam_opt->count()) req.lambda = lambda;
            req.sigma2 = sigma2;
            req.target_ratio = target;
            req.spec = parse_model(model, param);
            std::vector<ThresholdResult> thresholds;
            if (rule_of_thumb) {
                auto tr = rule_of_thumb_threshold(target);
                tr.label = req.spec ? req.spec->label() : "agnostic";
                thresholds = {tr};
            } else {
                const Design d =
                    latin_hypercube(cfg.design_points, cfg.seed, cfg.maximin_restarts);
                thresholds = threshold_table(d, {target});
            }
            emit(render_sizing(size(req, thresholds), cfg), cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "ousize: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
