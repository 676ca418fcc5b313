#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sphirf/linalg.hpp"
#include "sphirf/partition.hpp"
#include "sphirf/sampling.hpp"
#include "sphirf/sh.hpp"

namespace sphirf {

/// One partition block's least-squares machinery: the M x N_k design
/// matrix of block basis functions at the sample points, and the Cholesky
/// factor of its normal matrix. Built once, applied every pass.
struct BlockSystem {
    ComplexMatrix design;               // column j is basis function indices[j]
    CholeskyFactor factor;              // of design^H design + ridge I
    std::vector<std::size_t> indices;   // flat indices into {0,...,L^2-1}
    double ridge = 0.0;

    /// Least-squares fit of the block against a residual: (Y^H Y + ridge I)^{-1} Y^H r.
    std::vector<cdouble> fit(std::span<const cdouble> residual) const;
};

/// Assemble and factorize one block system. Throws NotPositiveDefiniteError
/// when the block is rank deficient at these samples.
BlockSystem build_block_system(const SampleSet& samples, std::span<const std::size_t> block,
                               double ridge = 0.0);

/// All blocks of a partition, sharing one pass over the basis evaluations.
std::vector<BlockSystem> build_block_systems(const SampleSet& samples, const Partition& partition,
                                             double ridge = 0.0);

struct IrfConfig {
    int passes = 1;                    // pass budget (i = 1..passes)
    std::optional<double> tolerance;   // optional early-stop threshold
    double ridge = 0.0;
    bool record_trace = true;          // keep per-step residual norms
};

/// Per-pass and per-block diagnostics plus the accumulated estimate.
struct FitReport {
    CoefficientVector estimate;
    std::vector<double> per_pass_epsilon_max;     // empty when no reference was supplied
    std::vector<double> per_pass_residual_norm2;  // after the final block step of each pass
    std::vector<double> per_step_residual_norm2;  // K entries per pass, when record_trace
    std::vector<double> per_pass_elapsed_ms;
    int passes_run = 0;
    double sample_norm2 = 0.0;  // ||G||
    std::vector<std::string> warnings;
};

struct PassResult {
    std::vector<std::vector<cdouble>> block_increments;  // one vector per block
    std::vector<cdouble> residual;                       // r_K
    std::vector<double> step_residual_norm2;             // ||r_k|| after each block step
};

/// One sweep over the blocks: for each k, fit the current residual and
/// subtract the fitted signal, so r_k = r_{k-1} - Y_k g_k.
PassResult irf_pass(std::span<const BlockSystem> systems, std::span<const cdouble> residual_in);

/// Multi-pass IRF: repeated sweeps, threading each pass's final residual
/// into the next and accumulating the block increments into the estimate.
/// When a reference is supplied the per-pass epsilon_max trace is recorded
/// and, if a tolerance is set, used for early stopping (otherwise the
/// residual norm is compared against the tolerance).
FitReport multi_pass_irf(const SampleSet& samples, const Partition& partition, const IrfConfig& config,
                         const CoefficientVector* reference = nullptr);

/// Validates the product form of the residual: explicitly forms
/// prod_k (I - Y_k (Y_k^H Y_k)^{-1} Y_k^H), raises it to the given power,
/// applies it to the sample vector, and returns the max-abs discrepancy
/// against the residual the pass iteration produces. Desk scale only;
/// throws std::length_error when M exceeds m_cap.
double residual_operator_check(const SampleSet& samples, std::span<const BlockSystem> systems,
                               int passes, std::size_t m_cap = 4096);

/// Maximum absolute coefficient error between two expansions.
double epsilon_max(const CoefficientVector& reference, const CoefficientVector& estimate);

/// CSV: "pass,epsilon_max,residual_norm2,elapsed_ms", one row per pass.
void write_trace_csv(const FitReport& report, std::ostream& os);
void write_trace_csv(const FitReport& report, const std::filesystem::path& path);

}  // namespace sphirf
