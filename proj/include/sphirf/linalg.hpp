#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sphirf {

using cdouble = std::complex<double>;

/// Relative pivot threshold for the Cholesky factorization: a pivot is
/// treated as zero when it falls below this fraction of the largest
/// diagonal entry of the input matrix.
inline constexpr double kDefaultPivotTolerance = 1e-12;

/// Dense row-major complex matrix. Value-semantic; sized for the block
/// systems that appear in sphere fitting (at most a few thousand rows).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::vector<cdouble>& data() { return entries_; }
    const std::vector<cdouble>& data() const { return entries_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

/// Thrown when a factorization pivot drops to (or below) the tolerance,
/// i.e. the normal matrix is numerically rank deficient.
class NotPositiveDefiniteError : public std::runtime_error {
public:
    NotPositiveDefiniteError(std::size_t pivot, double value, const std::string& context = {});
    std::size_t pivot() const { return pivot_; }
    double value() const { return value_; }

private:
    std::size_t pivot_;
    double value_;
};

/// Conjugate transpose.
ComplexMatrix hermitian(const ComplexMatrix& m);

/// Standard dense product; throws std::invalid_argument on dimension
/// mismatch. Summation order over the inner index is fixed (ascending),
/// so results do not depend on scheduling.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product with the same fixed summation order.
std::vector<cdouble> matvec(const ComplexMatrix& a, std::span<const cdouble> x);

/// y = a^H x without materializing the transpose.
std::vector<cdouble> matvec_hermitian(const ComplexMatrix& a, std::span<const cdouble> x);

/// Euclidean norm.
double norm2(std::span<const cdouble> v);

/// Cholesky factorization A = L L^H of a Hermitian positive-definite
/// matrix, kept around so one factorization serves many solves.
/// Only the lower triangle of the input is referenced.
class CholeskyFactor {
public:
    explicit CholeskyFactor(const ComplexMatrix& a, double pivot_tolerance = kDefaultPivotTolerance);

    std::size_t size() const { return lower_.rows(); }

    /// Solve A x = b by forward/back substitution.
    std::vector<cdouble> solve(std::span<const cdouble> b) const;

private:
    ComplexMatrix lower_;
};

/// One-shot solve of a Hermitian positive-definite system.
std::vector<cdouble> solve_hermitian_pd(const ComplexMatrix& a, std::span<const cdouble> b,
                                        double pivot_tolerance = kDefaultPivotTolerance);

}  // namespace sphirf
