#include "sphirf/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sphirf/rng.hpp"

namespace sphirf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

const char* scheme_kind_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Equiangular: return "equiangular";
        case SchemeKind::Healpix: return "healpix";
        case SchemeKind::OptimalDimensionality: return "optimal-dimensionality-style";
        case SchemeKind::RandomUniform: return "random-uniform";
    }
    return "unknown";
}

SampleSet equiangular_grid(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("equiangular_grid: grid sizes must be >= 1");
    SampleSet out;
    out.points.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    for (int t = 0; t < n_theta; ++t) {
        const double theta = kPi * (2.0 * t + 1.0) / (2.0 * n_theta);
        for (int p = 0; p < n_phi; ++p) out.points.emplace_back(theta, kTwoPi * p / n_phi);
    }
    out.label = "equiangular(" + std::to_string(n_theta) + "x" + std::to_string(n_phi) + ")";
    return out;
}

SampleSet healpix_ring_centers(int nside) {
    if (nside < 1) throw std::invalid_argument("healpix_ring_centers: nside must be >= 1");
    SampleSet out;
    out.points.reserve(static_cast<std::size_t>(12) * nside * nside);

    const double ns = nside;
    // rings i = 1 .. 4*nside-1, north to south
    for (int i = 1; i <= 4 * nside - 1; ++i) {
        double z;
        int ring_count;
        double phi0;
        if (i < nside) {  // north polar cap
            z = 1.0 - (double(i) * i) / (3.0 * ns * ns);
            ring_count = 4 * i;
            phi0 = kPi / (2.0 * i) * 0.5;
        } else if (i <= 3 * nside) {  // equatorial belt
            z = 4.0 / 3.0 - 2.0 * i / (3.0 * ns);
            ring_count = 4 * nside;
            const int s = (i - nside + 1) % 2;  // alternating half-cell phase
            phi0 = kPi / (2.0 * ns) * (s * 0.5);
        } else {  // south polar cap, mirror of the north
            const int im = 4 * nside - i;
            z = -(1.0 - (double(im) * im) / (3.0 * ns * ns));
            ring_count = 4 * im;
            phi0 = kPi / (2.0 * im) * 0.5;
        }
        const double theta = std::acos(z);
        for (int j = 0; j < ring_count; ++j)
            out.points.emplace_back(theta, phi0 + kTwoPi * j / ring_count);
    }
    out.label = "healpix(nside=" + std::to_string(nside) + ")";
    return out;
}

SampleSet optimal_dimensionality_style(int band_limit, int multiplier, std::uint64_t seed) {
    if (band_limit < 1) throw std::invalid_argument("optimal_dimensionality_style: band limit must be >= 1");
    if (multiplier < 2 || multiplier % 2 != 0)
        throw std::invalid_argument("optimal_dimensionality_style: multiplier must be even and >= 2");

    const int n_rings = (multiplier / 2) * band_limit;
    const int per_ring = 2 * band_limit;
    UniformRng rng(seed);

    SampleSet out;
    out.points.reserve(static_cast<std::size_t>(n_rings) * per_ring);
    for (int r = 0; r < n_rings; ++r) {
        const double theta = kPi * (2.0 * r + 1.0) / (multiplier * band_limit);
        const double rotation = kTwoPi * rng.next_unit();
        for (int j = 0; j < per_ring; ++j)
            out.points.emplace_back(theta, rotation + kTwoPi * j / per_ring);
    }
    out.label = "optimal-dimensionality-style(L=" + std::to_string(band_limit) +
                ",x" + std::to_string(multiplier) + ",seed=" + std::to_string(seed) + ")";
    return out;
}

SampleSet random_uniform(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("random_uniform: count must be >= 1");
    UniformRng rng(seed);
    SampleSet out;
    out.points.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double theta = std::acos(1.0 - 2.0 * rng.next_unit());
        const double phi = kTwoPi * rng.next_unit();
        out.points.emplace_back(theta, phi);
    }
    out.label = "random-uniform(count=" + std::to_string(count) + ",seed=" + std::to_string(seed) + ")";
    return out;
}

SampleSet generate_samples(const SamplingScheme& scheme, int band_limit) {
    switch (scheme.kind) {
        case SchemeKind::Equiangular: return equiangular_grid(scheme.n_theta, scheme.n_phi);
        case SchemeKind::Healpix: return healpix_ring_centers(scheme.nside);
        case SchemeKind::OptimalDimensionality:
            return optimal_dimensionality_style(band_limit, scheme.multiplier, scheme.seed);
        case SchemeKind::RandomUniform: return random_uniform(scheme.count, scheme.seed);
    }
    throw std::invalid_argument("generate_samples: unknown scheme kind");
}

SampleSet attach_signal(const SampleSet& samples, const CoefficientVector& coeffs) {
    if (samples.points.empty()) throw std::invalid_argument("attach_signal: empty sample set");
    SampleSet out = samples;
    out.values = synthesize(coeffs, samples.points);
    return out;
}

void write_sample_csv(const SampleSet& samples, std::ostream& os) {
    os << "theta,phi,re,im\n";
    char buf[160];
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
        const double re = samples.has_values() ? samples.values[i].real() : 0.0;
        const double im = samples.has_values() ? samples.values[i].imag() : 0.0;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", samples.points[i].theta(),
                      samples.points[i].phi(), re, im);
        os << buf;
    }
}

void write_sample_csv(const SampleSet& samples, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("write_sample_csv: cannot open " + path.string());
    write_sample_csv(samples, os);
}

}  // namespace sphirf
