#include "sphirf/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "sphirf/rng.hpp"

namespace sphirf {

namespace {

Partition resolve_partition(const PartitionSpec& spec, int band_limit) {
    if (const auto* choice = std::get_if<PartitionChoice>(&spec))
        return make_partition(*choice, band_limit);
    const Partition p = load_partition(std::get<std::filesystem::path>(spec));
    if (p.band_limit != band_limit)
        throw std::invalid_argument("partition file band limit " + std::to_string(p.band_limit) +
                                    " does not match --band-limit " + std::to_string(band_limit));
    return p;
}

std::string partition_label(const PartitionSpec& spec) {
    if (const auto* choice = std::get_if<PartitionChoice>(&spec)) return partition_choice_name(*choice);
    return "custom(" + std::get<std::filesystem::path>(spec).string() + ")";
}

void write_sidecar(const ExperimentConfig& config, const ExperimentResult& result,
                   const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("run_experiment: cannot open " + path.string());
    os << "band_limit: " << config.band_limit << '\n'
       << "scheme: " << result.scheme_label << '\n'
       << "partition: " << result.partition_label << '\n'
       << "samples: " << result.sample_count << '\n'
       << "blocks: " << resolve_partition(config.partition, config.band_limit).block_count() << '\n'
       << "seed: " << config.seed << '\n'
       << "ridge: " << config.ridge << '\n'
       << "pass_budget: " << config.passes << '\n'
       << "passes_run: " << result.report.passes_run << '\n';
    if (!result.report.per_pass_epsilon_max.empty()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", result.report.per_pass_epsilon_max.back());
        os << "final_epsilon_max: " << buf << '\n';
    }
    if (result.residual_operator_discrepancy) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", *result.residual_operator_discrepancy);
        os << "residual_operator_discrepancy: " << buf << '\n';
    }
    for (const std::string& w : result.report.warnings) os << "warning: " << w << '\n';
    if (config.scheme.kind == SchemeKind::OptimalDimensionality)
        os << "note: optimal-dimensionality sampling is reproduced in style (iso-latitude rings, "
              "matching counts), not as the exact published point set\n";
}

}  // namespace

CoefficientVector generate_test_signal(int band_limit, std::uint64_t seed) {
    CoefficientVector out(band_limit);
    UniformRng rng(seed);
    for (cdouble& c : out.values) {
        const double re = rng.next_symmetric();
        const double im = rng.next_symmetric();
        c = {re, im};
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.band_limit < 1) throw std::invalid_argument("run_experiment: band limit must be >= 1");
    if (config.passes < 1) throw std::invalid_argument("run_experiment: pass budget must be >= 1");

    const Partition partition = resolve_partition(config.partition, config.band_limit);

    ExperimentResult result;
    result.report.estimate = CoefficientVector(config.band_limit);
    result.reference = generate_test_signal(config.band_limit, config.seed);
    const SampleSet geometry = generate_samples(config.scheme, config.band_limit);
    const SampleSet samples = attach_signal(geometry, result.reference);
    result.sample_count = samples.size();
    result.scheme_label = samples.label;
    result.partition_label = partition_label(config.partition);

    if (config.dump_samples) write_sample_csv(samples, *config.dump_samples);

    const IrfConfig irf_config{config.passes, config.tolerance, config.ridge, true};
    result.report = multi_pass_irf(samples, partition, irf_config, &result.reference);

    if (config.validate_residual_operator) {
        const std::vector<BlockSystem> systems = build_block_systems(samples, partition, config.ridge);
        result.residual_operator_discrepancy =
            residual_operator_check(samples, systems, result.report.passes_run);
    }

    if (!config.output_path.empty()) {
        write_trace_csv(result.report, config.output_path);
        write_sidecar(config, result, config.output_path.string() + ".meta");
    }
    return result;
}

std::optional<int> passes_to_threshold(const FitReport& report, double threshold) {
    for (std::size_t i = 0; i < report.per_pass_epsilon_max.size(); ++i)
        if (report.per_pass_epsilon_max[i] < threshold) return static_cast<int>(i) + 1;
    return std::nullopt;
}

SweepResult sweep_sample_counts(const ExperimentConfig& base, std::span<const int> multipliers,
                                std::span<const std::uint64_t> seeds, double threshold) {
    if (base.scheme.kind != SchemeKind::OptimalDimensionality)
        throw std::invalid_argument("sweep_sample_counts: scheme must be optimal-dimensionality style");
    if (multipliers.empty()) throw std::invalid_argument("sweep_sample_counts: no multipliers");
    if (seeds.empty()) throw std::invalid_argument("sweep_sample_counts: no seeds");

    SweepResult sweep;
    sweep.multipliers.assign(multipliers.begin(), multipliers.end());
    sweep.threshold = threshold;

    std::ofstream csv;
    if (!base.output_path.empty()) {
        csv.open(base.output_path);
        if (!csv) throw std::invalid_argument("sweep_sample_counts: cannot open " +
                                              base.output_path.string());
        csv << "multiplier,seed,pass,epsilon_max,residual_norm2,elapsed_ms\n";
    }

    for (int multiplier : multipliers) {
        std::vector<double> reached;
        for (std::uint64_t seed : seeds) {
            ExperimentConfig config = base;
            config.scheme.multiplier = multiplier;
            config.scheme.seed = seed + 1;  // geometry stream, distinct from the signal stream
            config.seed = seed;
            config.output_path.clear();  // the sweep owns the file output
            config.dump_samples.reset();

            SweepCell cell{multiplier, seed, run_experiment(config), std::nullopt};
            cell.passes_to_threshold = passes_to_threshold(cell.result.report, threshold);
            reached.push_back(cell.passes_to_threshold ? double(*cell.passes_to_threshold)
                                                       : double(base.passes + 1));

            if (csv.is_open()) {
                const FitReport& r = cell.result.report;
                char buf[200];
                for (int p = 0; p < r.passes_run; ++p) {
                    std::snprintf(buf, sizeof buf, "%d,%llu,%d,%.17g,%.17g,%.3f\n", multiplier,
                                  static_cast<unsigned long long>(seed), p + 1,
                                  r.per_pass_epsilon_max[p], r.per_pass_residual_norm2[p],
                                  r.per_pass_elapsed_ms[p]);
                    csv << buf;
                }
            }
            sweep.cells.push_back(std::move(cell));
        }
        std::sort(reached.begin(), reached.end());
        const std::size_t n = reached.size();
        sweep.median_passes.push_back(n % 2 ? reached[n / 2]
                                            : 0.5 * (reached[n / 2 - 1] + reached[n / 2]));
    }

    sweep.trend_nonincreasing = true;
    for (std::size_t i = 1; i < sweep.median_passes.size(); ++i)
        if (sweep.median_passes[i] > sweep.median_passes[i - 1]) sweep.trend_nonincreasing = false;

    if (!base.output_path.empty()) {
        std::ofstream meta(base.output_path.string() + ".meta");
        if (!meta) throw std::invalid_argument("sweep_sample_counts: cannot open sidecar");
        meta << "band_limit: " << base.band_limit << '\n'
             << "scheme: optimal-dimensionality-style\n"
             << "partition: " << partition_label(base.partition) << '\n'
             << "threshold: " << threshold << '\n'
             << "seeds:";
        for (std::uint64_t s : seeds) meta << ' ' << s;
        meta << '\n';
        for (std::size_t i = 0; i < sweep.multipliers.size(); ++i)
            meta << "median_passes_x" << sweep.multipliers[i] << ": " << sweep.median_passes[i] << '\n';
        meta << "trend_nonincreasing: " << (sweep.trend_nonincreasing ? "true" : "false") << '\n';
    }
    return sweep;
}

}  // namespace sphirf
