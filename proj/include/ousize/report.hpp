#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ousize/design.hpp"
#include "ousize/oracle.hpp"
#include "ousize/sizing.hpp"
#include "ousize/threshold.hpp"

namespace ousize {

enum class OutputFormat { Csv, Json };

/// Shared CLI/run configuration; defaults match the documented pipeline.
struct RunConfig {
    std::uint64_t seed = 42;
    int design_points = 200;
    int maximin_restarts = 50;
    std::vector<double> targets = {0.75, 0.80, 0.90, 0.95};
    OutputFormat format = OutputFormat::Csv;
    std::string output_path;  // empty = stdout
};

// Byte-stable numeric formatting. Thresholds and confidence bounds use 3
// decimals (table convention), verification values 10 significant digits.
std::string fmt_fixed(double v, int decimals);
std::string fmt_sig(double v, int digits = 10);

struct VerificationRow {
    ModelSpec spec;
    int n;
    double lambda;
    double sigma2;
    double closed_form;
    double gls;
    double ols;
    double rel_err_gls;
    double rel_err_ols;
    std::string verdict;  // "GLS", "OLS", or "NEITHER" at a 1e-8 relative gate
};

struct VerificationReport {
    std::vector<VerificationRow> rows;
    bool all_matched = false;       // no NEITHER rows
    bool uniform_per_spec = false;  // one verdict per model/parameter row
};

/// Closed-form vs oracle sweep over the given grids.
VerificationReport run_verification(const std::vector<int>& ns,
                                    const std::vector<double>& lambdas,
                                    const std::vector<double>& sigma2s = {1.0});

// Renderers. Each returns the complete output document; identical inputs
// give identical bytes.
std::string render_design(const Design& design, const RunConfig& cfg);
std::string render_thresholds(const std::vector<ThresholdResult>& table,
                              const RunConfig& cfg);
std::string render_verification(const VerificationReport& report, const RunConfig& cfg);
std::string render_sizing(const SizingResult& result, const RunConfig& cfg);

/// Plot-ready curve data: the observed (x, ratio) rows of the dataset the fit
/// was built on (restricted view) or of the unrestricted dataset (full view),
/// followed by `grid` fitted rows over the fit's x-domain.
std::string render_curve(const RatioDataset& observed, const CubicFit& fit,
                         const RunConfig& cfg, int grid = 512);

}  // namespace ousize
