#include "ousize/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ousize {

using nlohmann::json;

std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string fmt_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

namespace {

constexpr double kVerdictGate = 1e-8;

double rel_err(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    if (denom == 0.0) return 0.0;
    return std::abs(a - b) / denom;
}

json meta_json(const RunConfig& cfg) {
    json m;
    m["tool"] = "ousize";
    m["version"] = "1.0.0";
    m["seed"] = cfg.seed;
    m["design_points"] = cfg.design_points;
    m["maximin_restarts"] = cfg.maximin_restarts;
    m["targets"] = cfg.targets;
    return m;
}

}  // namespace

VerificationReport run_verification(const std::vector<int>& ns,
                                    const std::vector<double>& lambdas,
                                    const std::vector<double>& sigma2s) {
    VerificationReport report;
    for (const auto& spec : all_specs()) {
        // entry indices within the estimator covariance for this target
        int i = 0, j = 0;
        if (spec.kind == ModelKind::InterceptSlope) {
            switch (spec.target) {
                case ParameterTarget::Intercept: i = j = 0; break;
                case ParameterTarget::Slope: i = j = 1; break;
                case ParameterTarget::InterceptSlopeCovariance: i = 0; j = 1; break;
            }
        }
        for (double sigma2 : sigma2s) {
            for (int n : ns) {
                Grid grid(n);
                const Eigen::MatrixXd X = design_matrix(spec.kind, grid);
                for (double lambda : lambdas) {
                    const OuParameters params(lambda, sigma2);
                    const Eigen::MatrixXd S = covariance_matrix(grid, params);
                    const double gls = gls_covariance(X, S)(i, j);
                    const double ols = ols_sandwich_covariance(X, S)(i, j);
                    const double cf = sigma2 * actual_variance(spec, n, lambda);
                    VerificationRow row;
                    row.spec = spec;
                    row.n = n;
                    row.lambda = lambda;
                    row.sigma2 = sigma2;
                    row.closed_form = cf;
                    row.gls = gls;
                    row.ols = ols;
                    row.rel_err_gls = rel_err(cf, gls);
                    row.rel_err_ols = rel_err(cf, ols);
                    if (row.rel_err_gls <= kVerdictGate)
                        row.verdict = "GLS";
                    else if (row.rel_err_ols <= kVerdictGate)
                        row.verdict = "OLS";
                    else
                        row.verdict = "NEITHER";
                    report.rows.push_back(row);
                }
            }
        }
    }
    report.all_matched = true;
    report.uniform_per_spec = true;
    for (const auto& spec : all_specs()) {
        std::string first;
        for (const auto& row : report.rows) {
            if (row.spec.label() != spec.label()) continue;
            if (row.verdict == "NEITHER") report.all_matched = false;
            if (first.empty())
                first = row.verdict;
            else if (row.verdict != first)
                report.uniform_per_spec = false;
        }
    }
    return report;
}

std::string render_design(const Design& design, const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "index,n,lambda\n";
        for (std::size_t i = 0; i < design.points.size(); ++i)
            os << i << "," << design.points[i].n << ","
               << fmt_fixed(design.points[i].lambda, 2) << "\n";
        os << "# min_pairwise_distance=" << fmt_fixed(design.min_pairwise_distance, 3)
           << ",centered_l2_discrepancy=" << fmt_fixed(design.centered_l2_discrepancy, 6)
           << "\n";
        return os.str();
    }
    json doc;
    doc["meta"] = meta_json(cfg);
    doc["meta"]["min_pairwise_distance"] = fmt_fixed(design.min_pairwise_distance, 3);
    doc["meta"]["centered_l2_discrepancy"] =
        fmt_fixed(design.centered_l2_discrepancy, 6);
    json rows = json::array();
    for (std::size_t i = 0; i < design.points.size(); ++i) {
        json r;
        r["index"] = i;
        r["n"] = design.points[i].n;
        r["lambda"] = fmt_fixed(design.points[i].lambda, 2);
        rows.push_back(r);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string render_thresholds(const std::vector<ThresholdResult>& table,
                              const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "spec,target,ci_lo,x,ci_hi,r2_adj,rmse,center,n_rows\n";
        for (const auto& t : table)
            os << t.label << "," << fmt_fixed(t.target_ratio, 2) << ","
               << fmt_fixed(t.ci_lo, 3) << "," << fmt_fixed(t.x_at_target, 3) << ","
               << fmt_fixed(t.ci_hi, 3) << "," << fmt_sig(t.fit.r2_adj, 6) << ","
               << fmt_sig(t.fit.rmse, 6) << "," << fmt_fixed(t.fit.center, 3) << ","
               << t.fit.n_rows << "\n";
        return os.str();
    }
    json doc;
    doc["meta"] = meta_json(cfg);
    json rows = json::array();
    for (const auto& t : table) {
        json r;
        r["spec"] = t.label;
        r["target"] = fmt_fixed(t.target_ratio, 2);
        r["ci_lo"] = fmt_fixed(t.ci_lo, 3);
        r["x"] = fmt_fixed(t.x_at_target, 3);
        r["ci_hi"] = fmt_fixed(t.ci_hi, 3);
        r["r2_adj"] = fmt_sig(t.fit.r2_adj, 6);
        r["rmse"] = fmt_sig(t.fit.rmse, 6);
        r["center"] = fmt_fixed(t.fit.center, 3);
        r["n_rows"] = t.fit.n_rows;
        rows.push_back(r);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string render_verification(const VerificationReport& report,
                                const RunConfig& cfg) {
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "spec,n,lambda,sigma2,closed_form,gls,ols,rel_err_gls,rel_err_ols,verdict\n";
        for (const auto& r : report.rows)
            os << r.spec.label() << "," << r.n << "," << fmt_sig(r.lambda, 6) << ","
               << fmt_sig(r.sigma2, 6) << "," << fmt_sig(r.closed_form) << ","
               << fmt_sig(r.gls) << "," << fmt_sig(r.ols) << ","
               << fmt_sig(r.rel_err_gls, 3) << "," << fmt_sig(r.rel_err_ols, 3) << ","
               << r.verdict << "\n";
        os << "# all_matched=" << (report.all_matched ? "true" : "false")
           << ",uniform_per_spec=" << (report.uniform_per_spec ? "true" : "false")
           << "\n";
        return os.str();
    }
    json doc;
    doc["meta"] = meta_json(cfg);
    doc["meta"]["all_matched"] = report.all_matched;
    doc["meta"]["uniform_per_spec"] = report.uniform_per_spec;
    json rows = json::array();
    for (const auto& r : report.rows) {
        json o;
        o["spec"] = r.spec.label();
        o["n"] = r.n;
        o["lambda"] = fmt_sig(r.lambda, 6);
        o["sigma2"] = fmt_sig(r.sigma2, 6);
        o["closed_form"] = fmt_sig(r.closed_form);
        o["gls"] = fmt_sig(r.gls);
        o["ols"] = fmt_sig(r.ols);
        o["rel_err_gls"] = fmt_sig(r.rel_err_gls, 3);
        o["rel_err_ols"] = fmt_sig(r.rel_err_ols, 3);
        o["verdict"] = r.verdict;
        rows.push_back(o);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string render_sizing(const SizingResult& result, const RunConfig& cfg) {
    const std::string model =
        result.threshold_used ? result.threshold_used->label : "exact-only";
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "lambda,threshold_model,threshold_x,n_approx,n_exact,notes\n";
        os << fmt_sig(result.lambda, 6) << "," << model << ",";
        if (result.threshold_used)
            os << fmt_fixed(result.threshold_used->x_at_target, 3);
        os << ",";
        if (result.n_approx) os << *result.n_approx;
        os << "," << result.n_exact << ",\"" << result.notes << "\"\n";
        return os.str();
    }
    json doc;
    doc["meta"] = meta_json(cfg);
    json r;
    r["lambda"] = fmt_sig(result.lambda, 6);
    r["threshold_model"] = model;
    if (result.threshold_used)
        r["threshold_x"] = fmt_fixed(result.threshold_used->x_at_target, 3);
    if (result.n_approx) r["n_approx"] = *result.n_approx;
    r["n_exact"] = result.n_exact;
    r["notes"] = result.notes;
    doc["rows"] = json::array({r});
    return doc.dump(2) + "\n";
}

std::string render_curve(const RatioDataset& observed, const CubicFit& fit,
                         const RunConfig& cfg, int grid) {
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "series,x,ratio\n";
        for (const auto& r : observed.rows)
            os << "observed," << fmt_sig(r.x, 10) << "," << fmt_sig(r.ratio, 10) << "\n";
        for (int i = 0; i < grid; ++i) {
            const double x = fit.x_min + (fit.x_max - fit.x_min) * i / (grid - 1.0);
            os << "fitted," << fmt_sig(x, 10) << "," << fmt_sig(fit.evaluate(x), 10)
               << "\n";
        }
        return os.str();
    }
    json doc;
    doc["meta"] = meta_json(cfg);
    json rows = json::array();
    for (const auto& r : observed.rows)
        rows.push_back({{"series", "observed"},
                        {"x", fmt_sig(r.x, 10)},
                        {"ratio", fmt_sig(r.ratio, 10)}});
    for (int i = 0; i < grid; ++i) {
        const double x = fit.x_min + (fit.x_max - fit.x_min) * i / (grid - 1.0);
        rows.push_back({{"series", "fitted"},
                        {"x", fmt_sig(x, 10)},
                        {"ratio", fmt_sig(fit.evaluate(x), 10)}});
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

}  // namespace ousize
