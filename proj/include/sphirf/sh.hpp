#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sphirf/linalg.hpp"

namespace sphirf {

/// (degree l, order m) pair identifying one spherical harmonic Y_l^m.
struct HarmonicIndex {
    int degree = 0;
    int order = 0;
};

inline bool is_valid(HarmonicIndex idx) {
    return idx.degree >= 0 && idx.order >= -idx.degree && idx.order <= idx.degree;
}

/// Flat index l^2 + l + m; bijection onto {0,...,L^2-1} for l < L.
std::size_t flat_index(HarmonicIndex idx);

/// Inverse of flat_index.
HarmonicIndex harmonic_index_from_flat(std::size_t flat);

/// A point on the unit sphere. Longitude is normalized modulo 2*pi on
/// construction; colatitude must lie in [0, pi].
class SpherePoint {
public:
    SpherePoint(double colatitude, double longitude);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

private:
    double theta_;
    double phi_;
};

/// Spectral representation of a band-limited signal: L^2 complex
/// coefficients in flat (l,m) order.
struct CoefficientVector {
    int band_limit = 0;
    std::vector<cdouble> values;

    CoefficientVector() = default;  // empty expansion
    explicit CoefficientVector(int L);
    CoefficientVector(int L, std::vector<cdouble> v);
};

/// Associated Legendre function P_l^m(x), Condon-Shortley phase included.
/// Upward three-term recursion in degree seeded by the closed-form P_m^m.
/// Throws std::domain_error for |x| > 1 or order outside [0, degree].
double associated_legendre(int degree, int order, double x);

/// Orthonormal spherical harmonic Y_l^m(theta, phi) with the e^{i m phi}
/// convention and Y_l^{-m} = (-1)^m conj(Y_l^m).
cdouble evaluate_harmonic(HarmonicIndex idx, const SpherePoint& point);

/// All L^2 harmonics at one point, in flat order. The workhorse behind
/// synthesis and design-matrix assembly; O(L^2) per call.
std::vector<cdouble> basis_row(int band_limit, const SpherePoint& point);

/// M x L^2 matrix of basis values, one row per point.
ComplexMatrix basis_matrix(std::span<const SpherePoint> points, int band_limit);

/// Evaluate the band-limited expansion at each point:
/// sum over l < L, |m| <= l of coeff(l,m) * Y_l^m.
std::vector<cdouble> synthesize(const CoefficientVector& coeffs, std::span<const SpherePoint> points);

}  // namespace sphirf
