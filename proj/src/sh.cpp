#include "sphirf/sh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sphirf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kY00 = 0.5 / std::sqrt(std::numbers::pi);

std::string index_str(HarmonicIndex idx) {
    return "(" + std::to_string(idx.degree) + "," + std::to_string(idx.order) + ")";
}

// Normalized associated Legendre function
//   sqrt((2l+1)/(4*pi) * (l-m)!/(l+m)!) * P_l^m(x),  0 <= m <= l,
// Condon-Shortley phase included. The normalization is folded into every
// recursion term, which keeps all intermediates O(1) up to high degree.
double normalized_legendre(int l, int m, double x) {
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double pmm = kY00;
    for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    if (l == m) return pmm;
    double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    if (l == m + 1) return pm1;
    for (int ll = m + 2; ll <= l; ++ll) {
        const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
        const double b =
            std::sqrt((double(ll - 1) * (ll - 1) - double(m) * m) / (4.0 * double(ll - 1) * (ll - 1) - 1.0));
        const double p = a * (x * pm1 - b * pmm);
        pmm = pm1;
        pm1 = p;
    }
    return pm1;
}

}  // namespace

std::size_t flat_index(HarmonicIndex idx) {
    if (!is_valid(idx)) throw std::invalid_argument("flat_index: invalid harmonic index " + index_str(idx));
    const long l = idx.degree;
    return static_cast<std::size_t>(l * l + l + idx.order);
}

HarmonicIndex harmonic_index_from_flat(std::size_t flat) {
    int l = static_cast<int>(std::sqrt(static_cast<double>(flat)));
    while (static_cast<std::size_t>(l + 1) * (l + 1) <= flat) ++l;
    while (static_cast<std::size_t>(l) * l > flat) --l;
    const int m = static_cast<int>(flat - static_cast<std::size_t>(l) * l) - l;
    return {l, m};
}

SpherePoint::SpherePoint(double colatitude, double longitude) : theta_(colatitude) {
    if (!(theta_ >= 0.0 && theta_ <= std::numbers::pi))
        throw std::domain_error("SpherePoint: colatitude " + std::to_string(colatitude) +
                                " outside [0, pi]");
    phi_ = std::fmod(longitude, kTwoPi);
    if (phi_ < 0.0) phi_ += kTwoPi;
    if (phi_ >= kTwoPi) phi_ = 0.0;
}

CoefficientVector::CoefficientVector(int L) : band_limit(L) {
    if (L < 1) throw std::invalid_argument("CoefficientVector: band limit must be >= 1");
    values.assign(static_cast<std::size_t>(L) * L, cdouble{});
}

CoefficientVector::CoefficientVector(int L, std::vector<cdouble> v) : band_limit(L), values(std::move(v)) {
    if (L < 1) throw std::invalid_argument("CoefficientVector: band limit must be >= 1");
    if (values.size() != static_cast<std::size_t>(L) * L)
        throw std::invalid_argument("CoefficientVector: expected " + std::to_string(L * L) +
                                    " values, got " + std::to_string(values.size()));
}

double associated_legendre(int degree, int order, double x) {
    if (degree < 0 || order < 0 || order > degree)
        throw std::domain_error("associated_legendre: order must satisfy 0 <= m <= l");
    if (!(x >= -1.0 && x <= 1.0))
        throw std::domain_error("associated_legendre: argument " + std::to_string(x) + " outside [-1, 1]");

    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, accumulated factor by factor
    // so the double factorial never overflows on its own.
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double pmm = 1.0;
    for (int k = 1; k <= order; ++k) pmm *= -(2.0 * k - 1.0) * s;
    if (degree == order) return pmm;

    double pm1 = x * (2.0 * order + 1.0) * pmm;
    if (degree == order + 1) return pm1;

    for (int ll = order + 2; ll <= degree; ++ll) {
        const double p = (x * (2.0 * ll - 1.0) * pm1 - (ll + order - 1.0) * pmm) / (ll - order);
        pmm = pm1;
        pm1 = p;
    }
    return pm1;
}

cdouble evaluate_harmonic(HarmonicIndex idx, const SpherePoint& point) {
    if (!is_valid(idx)) throw std::invalid_argument("evaluate_harmonic: invalid index " + index_str(idx));
    const int am = std::abs(idx.order);
    const double p = normalized_legendre(idx.degree, am, std::cos(point.theta()));
    const cdouble phase = std::polar(1.0, idx.order * point.phi());
    const double sign = (idx.order < 0 && (am % 2 != 0)) ? -1.0 : 1.0;
    return sign * p * phase;
}

std::vector<cdouble> basis_row(int band_limit, const SpherePoint& point) {
    const int L = band_limit;
    if (L < 1) throw std::invalid_argument("basis_row: band limit must be >= 1");
    std::vector<cdouble> row(static_cast<std::size_t>(L) * L);

    const double x = std::cos(point.theta());
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));

    double seed = kY00;  // running P~_m^m
    for (int m = 0; m < L; ++m) {
        if (m > 0) seed *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
        const cdouble phase = std::polar(1.0, m * point.phi());
        const double neg_sign = (m % 2 != 0) ? -1.0 : 1.0;

        // climb degrees l = m .. L-1 for this order
        double pmm = seed;
        double pm1 = 0.0;
        for (int l = m; l < L; ++l) {
            double p;
            if (l == m) {
                p = seed;
            } else if (l == m + 1) {
                p = x * std::sqrt(2.0 * m + 3.0) * seed;
            } else {
                const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
                const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) /
                                           (4.0 * double(l - 1) * (l - 1) - 1.0));
                p = a * (x * pm1 - b * pmm);
            }
            pmm = pm1;
            pm1 = p;

            const std::size_t base = static_cast<std::size_t>(l) * l + l;
            row[base + m] = p * phase;
            if (m > 0) row[base - m] = neg_sign * p * std::conj(phase);
        }
    }
    return row;
}

ComplexMatrix basis_matrix(std::span<const SpherePoint> points, int band_limit) {
    const std::size_t n = static_cast<std::size_t>(band_limit) * band_limit;
    ComplexMatrix out(points.size(), n);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const std::vector<cdouble> row = basis_row(band_limit, points[p]);
        for (std::size_t j = 0; j < n; ++j) out(p, j) = row[j];
    }
    return out;
}

std::vector<cdouble> synthesize(const CoefficientVector& coeffs, std::span<const SpherePoint> points) {
    if (points.empty()) throw std::invalid_argument("synthesize: empty point list");
    std::vector<cdouble> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        const std::vector<cdouble> row = basis_row(coeffs.band_limit, points[p]);
        cdouble acc{};
        for (std::size_t j = 0; j < row.size(); ++j) acc += coeffs.values[j] * row[j];
        out[p] = acc;
    }
    return out;
}

}  // namespace sphirf
