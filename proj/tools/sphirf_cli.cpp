// Experiment harness: fits seeded band-limited test signals sampled over
// the sphere with multi-pass iterative residual fitting and emits the
// per-pass convergence traces as CSV.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphirf/experiment.hpp"

namespace {

using namespace sphirf;

struct CommonOptions {
    int band_limit = 15;
    std::string scheme = "optimal";
    int n_theta = 0;  // 0: derive from L
    int n_phi = 0;
    int nside = 0;
    int multiplier = 4;
    int count = 0;
    std::string partition = "4";
    int passes = 200;
    double tolerance = 0.0;  // 0: run the full pass budget
    double ridge = 0.0;
    std::uint64_t seed = 1;
    bool validate_residual = false;
    std::string out = "irf_trace.csv";
    std::string dump_samples;
};

void add_common_options(CLI::App& cmd, CommonOptions& opt, bool with_scheme_params) {
    cmd.add_option("-L,--band-limit", opt.band_limit, "Band limit L (signal has L^2 coefficients)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--passes", opt.passes, "Pass budget for the multi-pass fit")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--tolerance", opt.tolerance,
                   "Stop early once epsilon_max drops below this (0 = fixed budget)");
    cmd.add_option("--ridge", opt.ridge, "Ridge term added to each block's normal matrix");
    cmd.add_option("--seed", opt.seed, "Seed for the test signal (geometry draws use seed+1)");
    cmd.add_option("--partition", opt.partition, "Partition: 1|2|3|4 or a partition JSON file");
    cmd.add_option("-o,--out", opt.out, "Output CSV path (a .meta sidecar is written alongside)");
    if (with_scheme_params) {
        cmd.add_option("--scheme", opt.scheme, "Sampling scheme: equiangular|healpix|optimal|random");
        cmd.add_option("--n-theta", opt.n_theta, "Equiangular colatitude count (default 2L)");
        cmd.add_option("--n-phi", opt.n_phi, "Equiangular longitude count (default 2L+1)");
        cmd.add_option("--nside", opt.nside, "HEALPix resolution (default: smallest with 12 nside^2 >= 4L^2)");
        cmd.add_option("--multiplier", opt.multiplier, "Optimal-style sample multiplier (even, M = multiplier*L^2)");
        cmd.add_option("--count", opt.count, "Random-uniform sample count (default 4L^2)");
    }
}

SamplingScheme resolve_scheme(const CommonOptions& opt) {
    SamplingScheme s;
    const int L = opt.band_limit;
    s.seed = opt.seed + 1;  // keep the geometry stream distinct from the signal stream
    if (opt.scheme == "equiangular") {
        s.kind = SchemeKind::Equiangular;
        s.n_theta = opt.n_theta > 0 ? opt.n_theta : 2 * L;
        s.n_phi = opt.n_phi > 0 ? opt.n_phi : 2 * L + 1;
    } else if (opt.scheme == "healpix") {
        s.kind = SchemeKind::Healpix;
        s.nside = opt.nside > 0 ? opt.nside : static_cast<int>(std::ceil(L / std::sqrt(3.0)));
    } else if (opt.scheme == "optimal") {
        s.kind = SchemeKind::OptimalDimensionality;
        s.multiplier = opt.multiplier;
    } else if (opt.scheme == "random") {
        s.kind = SchemeKind::RandomUniform;
        s.count = opt.count > 0 ? opt.count : 4 * L * L;
    } else {
        throw std::invalid_argument("unknown scheme '" + opt.scheme +
                                    "' (expected equiangular|healpix|optimal|random)");
    }
    return s;
}

PartitionSpec resolve_partition_spec(const std::string& text) {
    if (text == "1") return PartitionChoice::Degree;
    if (text == "2") return PartitionChoice::DegreePaired;
    if (text == "3") return PartitionChoice::Order;
    if (text == "4") return PartitionChoice::OrderPaired;
    return std::filesystem::path(text);
}

ExperimentConfig make_config(const CommonOptions& opt) {
    ExperimentConfig config;
    config.band_limit = opt.band_limit;
    config.scheme = resolve_scheme(opt);
    config.partition = resolve_partition_spec(opt.partition);
    config.passes = opt.passes;
    if (opt.tolerance > 0.0) config.tolerance = opt.tolerance;
    config.ridge = opt.ridge;
    config.seed = opt.seed;
    config.output_path = opt.out;
    config.validate_residual_operator = opt.validate_residual;
    if (!opt.dump_samples.empty()) config.dump_samples = opt.dump_samples;
    return config;
}

int run_command(const CommonOptions& opt) {
    const ExperimentResult result = run_experiment(make_config(opt));
    std::printf("scheme=%s partition=%s M=%zu passes=%d final_epsilon_max=%.3e\n",
                result.scheme_label.c_str(), result.partition_label.c_str(), result.sample_count,
                result.report.passes_run, result.report.per_pass_epsilon_max.back());
    if (result.residual_operator_discrepancy)
        std::printf("residual_operator_discrepancy=%.3e\n", *result.residual_operator_discrepancy);
    std::printf("trace written to %s\n", opt.out.c_str());
    return 0;
}

int sweep_command(const CommonOptions& opt, std::vector<int>& multipliers,
                  std::vector<std::uint64_t>& seeds, double threshold) {
    CommonOptions base = opt;
    base.scheme = "optimal";
    if (seeds.empty()) seeds.push_back(opt.seed);
    const SweepResult sweep =
        sweep_sample_counts(make_config(base), multipliers, seeds, threshold);
    for (std::size_t i = 0; i < sweep.multipliers.size(); ++i)
        std::printf("multiplier=%d (M=%d) median_passes_to_%.0e=%g\n", sweep.multipliers[i],
                    sweep.multipliers[i] * opt.band_limit * opt.band_limit, threshold,
                    sweep.median_passes[i]);
    std::printf("trend_nonincreasing=%s\n", sweep.trend_nonincreasing ? "true" : "false");
    std::printf("combined trace written to %s\n", opt.out.c_str());
    return 0;
}

int samples_command(const CommonOptions& opt) {
    const SamplingScheme scheme = resolve_scheme(opt);
    const SampleSet geometry = generate_samples(scheme, opt.band_limit);
    const SampleSet samples =
        attach_signal(geometry, generate_test_signal(opt.band_limit, opt.seed));
    write_sample_csv(samples, std::filesystem::path(opt.out));
    std::printf("%zu samples (%s) written to %s\n", samples.size(), samples.label.c_str(),
                opt.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical harmonic transform by multi-pass iterative residual fitting"};
    app.require_subcommand(1);

    CommonOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "Fit one seeded test signal and emit its trace CSV");
    add_common_options(*run, run_opt, true);
    run->add_flag("--validate-residual", run_opt.validate_residual,
                  "Also check the product-operator residual identity");
    run->add_option("--dump-samples", run_opt.dump_samples, "Also write the sample set as CSV");

    CommonOptions sweep_opt;
    std::vector<int> multipliers{2, 4, 6};
    std::vector<std::uint64_t> sweep_seeds;
    double threshold = 1e-10;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run the optimal-style scheme across sample-count multipliers");
    add_common_options(*sweep, sweep_opt, false);
    sweep->add_option("--multipliers", multipliers, "Multipliers to sweep (M = multiplier*L^2)");
    sweep->add_option("--seeds", sweep_seeds, "Seeds to aggregate medians over (default: --seed)");
    sweep->add_option("--threshold", threshold, "Epsilon_max threshold for passes-to-threshold");

    CommonOptions samples_opt;
    samples_opt.out = "samples.csv";
    CLI::App* samples = app.add_subcommand(
        "samples", "Generate a sample set, attach the seeded test signal, write it as CSV");
    add_common_options(*samples, samples_opt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_command(run_opt);
        if (sweep->parsed()) return sweep_command(sweep_opt, multipliers, sweep_seeds, threshold);
        if (samples->parsed()) return samples_command(samples_opt);
    } catch (const sphirf::NotPositiveDefiniteError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
