#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphirf/sh.hpp"

namespace sphirf {

/// M sphere points plus, once a signal has been attached, the M complex
/// signal values measured at them.
struct SampleSet {
    std::vector<SpherePoint> points;
    std::vector<cdouble> values;  // empty until a signal is attached
    std::string label;            // human-readable scheme description

    std::size_t size() const { return points.size(); }
    bool has_values() const { return !values.empty(); }
};

enum class SchemeKind { Equiangular, Healpix, OptimalDimensionality, RandomUniform };

const char* scheme_kind_name(SchemeKind kind);

/// Scheme selector plus its parameters; unused fields are ignored.
struct SamplingScheme {
    SchemeKind kind = SchemeKind::RandomUniform;
    int n_theta = 0;      // equiangular
    int n_phi = 0;        // equiangular
    int nside = 0;        // healpix
    int multiplier = 0;   // optimal-dimensionality style (even, >= 2)
    int count = 0;        // random
    std::uint64_t seed = 0;
};

/// Iso-latitude grid: theta_t = pi(2t+1)/(2 nTheta), phi_p = 2 pi p / nPhi.
/// No points at the poles.
SampleSet equiangular_grid(int n_theta, int n_phi);

/// The 12 nside^2 pixel centers of the HEALPix RING-scheme geometry.
SampleSet healpix_ring_centers(int nside);

/// Iso-latitude construction with (multiplier/2)*L rings of 2L equispaced
/// longitudes each (multiplier even), totalling multiplier*L^2 points.
/// Each ring gets a deterministic seed-derived longitude rotation. This
/// reproduces the sample counts of optimal-dimensionality sampling, not its
/// exact point locations ("style", not "exact").
SampleSet optimal_dimensionality_style(int band_limit, int multiplier, std::uint64_t seed);

/// count i.i.d. points uniform w.r.t. sin(theta) dtheta dphi:
/// theta = arccos(1 - 2u), phi uniform on [0, 2 pi).
SampleSet random_uniform(int count, std::uint64_t seed);

/// Dispatch on scheme kind; band_limit feeds the optimal-style generator.
SampleSet generate_samples(const SamplingScheme& scheme, int band_limit);

/// Attach a band-limited signal: values = synthesize(coeffs, points).
SampleSet attach_signal(const SampleSet& samples, const CoefficientVector& coeffs);

/// CSV serialization: header "theta,phi,re,im", one row per point,
/// 17 significant digits. Missing values are written as zeros.
void write_sample_csv(const SampleSet& samples, std::ostream& os);
void write_sample_csv(const SampleSet& samples, const std::filesystem::path& path);

}  // namespace sphirf
