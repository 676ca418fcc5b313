#include "sphirf/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sphirf {

namespace {

// Y^H Y (+ ridge I), filled from the upper triangle with fixed summation order.
ComplexMatrix normal_matrix(const ComplexMatrix& design, double ridge) {
    const std::size_t m = design.rows(), n = design.cols();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cdouble acc{};
            for (std::size_t p = 0; p < m; ++p) acc += std::conj(design(p, i)) * design(p, j);
            a(i, j) = acc;
            a(j, i) = std::conj(acc);
        }
        a(i, i) += ridge;
    }
    return a;
}

BlockSystem make_system(ComplexMatrix design, std::vector<std::size_t> indices, double ridge,
                        std::size_t block_ordinal) {
    try {
        CholeskyFactor factor(normal_matrix(design, ridge), kDefaultPivotTolerance);
        return BlockSystem{std::move(design), std::move(factor), std::move(indices), ridge};
    } catch (const NotPositiveDefiniteError& e) {
        throw NotPositiveDefiniteError(e.pivot(), e.value(),
                                       "block " + std::to_string(block_ordinal) +
                                           " is rank deficient at these samples");
    }
}

std::vector<cdouble> residual_for_passes(std::span<const BlockSystem> systems,
                                         std::span<const cdouble> g, int passes) {
    std::vector<cdouble> r(g.begin(), g.end());
    for (int i = 0; i < passes; ++i) r = irf_pass(systems, r).residual;
    return r;
}

}  // namespace

std::vector<cdouble> BlockSystem::fit(std::span<const cdouble> residual) const {
    return factor.solve(matvec_hermitian(design, residual));
}

BlockSystem build_block_system(const SampleSet& samples, std::span<const std::size_t> block,
                               double ridge) {
    if (block.empty()) throw std::invalid_argument("build_block_system: empty block");
    if (samples.points.empty()) throw std::invalid_argument("build_block_system: empty sample set");

    // band limit just large enough to cover the block's degrees
    int max_degree = 0;
    for (std::size_t idx : block)
        max_degree = std::max(max_degree, harmonic_index_from_flat(idx).degree);
    const int L = max_degree + 1;

    ComplexMatrix design(samples.size(), block.size());
    for (std::size_t p = 0; p < samples.size(); ++p) {
        const std::vector<cdouble> row = basis_row(L, samples.points[p]);
        for (std::size_t j = 0; j < block.size(); ++j) design(p, j) = row[block[j]];
    }
    return make_system(std::move(design), std::vector<std::size_t>(block.begin(), block.end()), ridge, 0);
}

std::vector<BlockSystem> build_block_systems(const SampleSet& samples, const Partition& partition,
                                             double ridge) {
    const PartitionValidation v = validate_partition(partition);
    if (!v.ok()) throw std::invalid_argument("build_block_systems: " + v.message());
    if (samples.points.empty()) throw std::invalid_argument("build_block_systems: empty sample set");

    const ComplexMatrix full = basis_matrix(samples.points, partition.band_limit);
    std::vector<BlockSystem> systems;
    systems.reserve(partition.blocks.size());
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        const auto& block = partition.blocks[b];
        ComplexMatrix design(samples.size(), block.size());
        for (std::size_t p = 0; p < samples.size(); ++p)
            for (std::size_t j = 0; j < block.size(); ++j) design(p, j) = full(p, block[j]);
        systems.push_back(make_system(std::move(design), block, ridge, b + 1));
    }
    return systems;
}

PassResult irf_pass(std::span<const BlockSystem> systems, std::span<const cdouble> residual_in) {
    PassResult out;
    out.block_increments.reserve(systems.size());
    out.step_residual_norm2.reserve(systems.size());
    out.residual.assign(residual_in.begin(), residual_in.end());

    for (const BlockSystem& bs : systems) {
        std::vector<cdouble> g = bs.fit(out.residual);
        const std::vector<cdouble> fitted = matvec(bs.design, g);
        for (std::size_t p = 0; p < out.residual.size(); ++p) out.residual[p] -= fitted[p];
        out.step_residual_norm2.push_back(norm2(out.residual));
        out.block_increments.push_back(std::move(g));
    }
    return out;
}

FitReport multi_pass_irf(const SampleSet& samples, const Partition& partition, const IrfConfig& config,
                         const CoefficientVector* reference) {
    if (!samples.has_values()) throw std::invalid_argument("multi_pass_irf: samples carry no values");
    if (samples.values.size() != samples.points.size())
        throw std::invalid_argument("multi_pass_irf: value/point count mismatch");
    if (config.passes < 1) throw std::invalid_argument("multi_pass_irf: pass budget must be >= 1");
    if (config.tolerance && !(*config.tolerance > 0.0))
        throw std::invalid_argument("multi_pass_irf: tolerance must be positive");
    if (reference && reference->band_limit != partition.band_limit)
        throw std::invalid_argument("multi_pass_irf: reference band limit mismatch");

    const std::vector<BlockSystem> systems = build_block_systems(samples, partition, config.ridge);

    FitReport report;
    report.estimate = CoefficientVector(partition.band_limit);
    report.sample_norm2 = norm2(samples.values);
    if (config.ridge > 0.0)
        report.warnings.push_back("ridge active (lambda = " + std::to_string(config.ridge) + ")");

    std::vector<cdouble> residual = samples.values;
    for (int pass = 1; pass <= config.passes; ++pass) {
        const auto t0 = std::chrono::steady_clock::now();
        PassResult pr = irf_pass(systems, residual);
        residual = std::move(pr.residual);

        for (std::size_t b = 0; b < systems.size(); ++b) {
            const auto& indices = systems[b].indices;
            const auto& inc = pr.block_increments[b];
            for (std::size_t j = 0; j < indices.size(); ++j) report.estimate.values[indices[j]] += inc[j];
        }

        const auto t1 = std::chrono::steady_clock::now();
        report.per_pass_elapsed_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        report.per_pass_residual_norm2.push_back(pr.step_residual_norm2.back());
        if (config.record_trace)
            report.per_step_residual_norm2.insert(report.per_step_residual_norm2.end(),
                                                  pr.step_residual_norm2.begin(),
                                                  pr.step_residual_norm2.end());
        report.passes_run = pass;

        double stop_metric = report.per_pass_residual_norm2.back();
        if (reference) {
            const double eps = epsilon_max(*reference, report.estimate);
            report.per_pass_epsilon_max.push_back(eps);
            stop_metric = eps;
        }
        if (config.tolerance && stop_metric < *config.tolerance) break;
    }
    return report;
}

double residual_operator_check(const SampleSet& samples, std::span<const BlockSystem> systems,
                               int passes, std::size_t m_cap) {
    if (!samples.has_values())
        throw std::invalid_argument("residual_operator_check: samples carry no values");
    if (passes < 0) throw std::invalid_argument("residual_operator_check: passes must be >= 0");
    const std::size_t m = samples.size();
    if (m > m_cap)
        throw std::length_error("residual_operator_check: M = " + std::to_string(m) +
                                " exceeds the materialization cap " + std::to_string(m_cap));

    // T = (I - C_K) ... (I - C_1), applied left to right like the sweep.
    // Each factor is applied through its rank-N_k structure,
    // T <- T - Y_k (Z_k T), rather than as a dense M x M product.
    ComplexMatrix t = ComplexMatrix::identity(m);
    for (const BlockSystem& bs : systems) {
        const std::size_t n = bs.indices.size();
        // Z = (Y^H Y + ridge I)^{-1} Y^H, column by column
        ComplexMatrix z(n, m);
        std::vector<cdouble> col(n);
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t j = 0; j < n; ++j) col[j] = std::conj(bs.design(p, j));
            const std::vector<cdouble> zc = bs.factor.solve(col);
            for (std::size_t j = 0; j < n; ++j) z(j, p) = zc[j];
        }
        const ComplexMatrix zt = matmul(z, t);           // N x M
        const ComplexMatrix correction = matmul(bs.design, zt);  // C_k T
        for (std::size_t i = 0; i < m * m; ++i) t.data()[i] -= correction.data()[i];
    }

    // T^i G, power by repeated squaring
    ComplexMatrix power = ComplexMatrix::identity(m);
    ComplexMatrix base = std::move(t);
    for (int e = passes; e > 0; e >>= 1) {
        if (e & 1) power = matmul(base, power);
        if (e > 1) base = matmul(base, base);
    }
    const std::vector<cdouble> via_operator = matvec(power, samples.values);

    const std::vector<cdouble> via_sweeps = residual_for_passes(systems, samples.values, passes);

    double disc = 0.0;
    for (std::size_t i = 0; i < m; ++i) disc = std::max(disc, std::abs(via_operator[i] - via_sweeps[i]));
    return disc;
}

double epsilon_max(const CoefficientVector& reference, const CoefficientVector& estimate) {
    if (reference.band_limit != estimate.band_limit)
        throw std::invalid_argument("epsilon_max: band limit mismatch");
    double out = 0.0;
    for (std::size_t i = 0; i < reference.values.size(); ++i)
        out = std::max(out, std::abs(reference.values[i] - estimate.values[i]));
    return out;
}

void write_trace_csv(const FitReport& report, std::ostream& os) {
    os << "pass,epsilon_max,residual_norm2,elapsed_ms\n";
    char buf[160];
    for (int i = 0; i < report.passes_run; ++i) {
        const double eps = static_cast<std::size_t>(i) < report.per_pass_epsilon_max.size()
                               ? report.per_pass_epsilon_max[i]
                               : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.3f\n", i + 1, eps,
                      report.per_pass_residual_norm2[i], report.per_pass_elapsed_ms[i]);
        os << buf;
    }
}

void write_trace_csv(const FitReport& report, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("write_trace_csv: cannot open " + path.string());
    write_trace_csv(report, os);
}

}  // namespace sphirf
