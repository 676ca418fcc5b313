#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sphirf/partition.hpp"
#include "sphirf/sampling.hpp"
#include "sphirf/solver.hpp"

namespace sphirf {

/// Test signal for the convergence analysis: L^2 coefficients with real
/// and imaginary parts uniform on [-1, 1], drawn from the seeded portable
/// generator (real part first, flat order).
CoefficientVector generate_test_signal(int band_limit, std::uint64_t seed);

/// Either one of the four named choices or a path to a partition file.
using PartitionSpec = std::variant<PartitionChoice, std::filesystem::path>;

struct ExperimentConfig {
    int band_limit = 15;
    SamplingScheme scheme;
    PartitionSpec partition = PartitionChoice::OrderPaired;
    int passes = 200;
    std::optional<double> tolerance;
    double ridge = 0.0;
    std::uint64_t seed = 1;
    std::filesystem::path output_path;              // empty: no files written
    bool validate_residual_operator = false;
    std::optional<std::filesystem::path> dump_samples;
};

struct ExperimentResult {
    FitReport report;
    CoefficientVector reference;
    std::size_t sample_count = 0;
    std::optional<double> residual_operator_discrepancy;
    std::string scheme_label;
    std::string partition_label;
};

/// End-to-end run: generate the test signal, sample it per the scheme,
/// fit with multi-pass IRF, and (when an output path is set) write the
/// per-pass trace CSV plus a ".meta" sidecar describing the run.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// First pass (1-based) whose epsilon_max trace entry drops below the
/// threshold; empty when the budget runs out first.
std::optional<int> passes_to_threshold(const FitReport& report, double threshold);

struct SweepCell {
    int multiplier = 0;
    std::uint64_t seed = 0;
    ExperimentResult result;
    std::optional<int> passes_to_threshold;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<int> multipliers;
    std::vector<double> median_passes;  // per multiplier; budget+1 stands in for "not reached"
    bool trend_nonincreasing = false;   // medians non-increasing in the multiplier
    double threshold = 0.0;
};

/// Sample-count sweep for the optimal-dimensionality-style scheme: runs the
/// base experiment at each multiplier (and each seed), writes one combined
/// CSV with multiplier and seed columns, and reports whether the median
/// passes-to-threshold is non-increasing in the multiplier.
SweepResult sweep_sample_counts(const ExperimentConfig& base, std::span<const int> multipliers,
                                std::span<const std::uint64_t> seeds, double threshold = 1e-10);

}  // namespace sphirf
