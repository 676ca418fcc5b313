#include "sphirf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sphirf {

NotPositiveDefiniteError::NotPositiveDefiniteError(std::size_t pivot, double value,
                                                   const std::string& context)
    : std::runtime_error("matrix not positive definite: pivot " + std::to_string(pivot) +
                         " = " + std::to_string(value) + (context.empty() ? "" : " (" + context + ")")),
      pivot_(pivot),
      value_(value) {}

ComplexMatrix hermitian(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()) + ")");
    ComplexMatrix c(a.rows(), b.cols());
    // i-k-j loop order: cache friendly, and each c(i,j) still accumulates
    // its k terms in ascending order.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

std::vector<cdouble> matvec(const ComplexMatrix& a, std::span<const cdouble> x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cdouble> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cdouble acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<cdouble> matvec_hermitian(const ComplexMatrix& a, std::span<const cdouble> x) {
    if (a.rows() != x.size()) throw std::invalid_argument("matvec_hermitian: dimension mismatch");
    std::vector<cdouble> y(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        cdouble acc{};
        for (std::size_t i = 0; i < a.rows(); ++i) acc += std::conj(a(i, j)) * x[i];
        y[j] = acc;
    }
    return y;
}

double norm2(std::span<const cdouble> v) {
    double acc = 0.0;
    for (const cdouble& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

CholeskyFactor::CholeskyFactor(const ComplexMatrix& a, double pivot_tolerance) {
    if (a.rows() != a.cols()) throw std::invalid_argument("CholeskyFactor: matrix not square");
    const std::size_t n = a.rows();

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::real(a(i, i)));
    const double threshold = pivot_tolerance * std::max(max_diag, 1e-300);

    lower_ = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = std::real(a(j, j));
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(lower_(j, k));
        if (!(d > threshold)) throw NotPositiveDefiniteError(j, d);
        const double ljj = std::sqrt(d);
        lower_(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cdouble s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * std::conj(lower_(j, k));
            lower_(i, j) = s / ljj;
        }
    }
}

std::vector<cdouble> CholeskyFactor::solve(std::span<const cdouble> b) const {
    const std::size_t n = lower_.rows();
    if (b.size() != n) throw std::invalid_argument("CholeskyFactor::solve: dimension mismatch");

    // L y = b
    std::vector<cdouble> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cdouble s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= lower_(i, j) * y[j];
        y[i] = s / lower_(i, i);
    }
    // L^H x = y
    std::vector<cdouble> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        cdouble s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= std::conj(lower_(j, ii)) * x[j];
        x[ii] = s / std::real(lower_(ii, ii));
    }
    return x;
}

std::vector<cdouble> solve_hermitian_pd(const ComplexMatrix& a, std::span<const cdouble> b,
                                        double pivot_tolerance) {
    return CholeskyFactor(a, pivot_tolerance).solve(b);
}

}  // namespace sphirf
