#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "qrev/errors.hpp"

namespace qrev {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

// Eigenvalues at or below kSupportThreshold * lambda_max are treated as kernel.
inline constexpr double kSupportThreshold = 1e-10;
// Relative tolerance for ||m - m^dagger||_max against ||m||_max.
inline constexpr double kHermiticityTolerance = 1e-10;
// Relative tolerance for negative eigenvalues of a PSD operator.
inline constexpr double kPsdTolerance = 1e-9;

/// Dense complex matrix, row-major. Every binary operation checks shapes
/// and throws DimensionMismatch instead of guessing.
class Matrix {
 public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);
    // Column vector |v>.
    static Matrix ket(std::span<const Complex> v);
    // Rank-one operator |a><b|.
    static Matrix outer(std::span<const Complex> a, std::span<const Complex> b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> data() const { return entries_; }
    Vector column(std::size_t c) const;

    Matrix adjoint() const;
    Matrix transpose() const;
    Complex trace() const;

    double max_norm() const;
    double frobenius_norm() const;

    Matrix &operator+=(const Matrix &other);
    Matrix &operator-=(const Matrix &other);
    Matrix &operator*=(Complex s);

    bool operator==(const Matrix &other) const = default;

 private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

Matrix operator+(Matrix a, const Matrix &b);
Matrix operator-(Matrix a, const Matrix &b);
Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator*(Matrix a, Complex s);
Matrix operator*(Complex s, Matrix a);

// a^dagger * b without materializing the adjoint.
Matrix adjoint_times(const Matrix &a, const Matrix &b);

// ||a - b||_max; shapes must agree.
double max_abs_diff(const Matrix &a, const Matrix &b);

double hermiticity_defect(const Matrix &m);
// (m + m^dagger) / 2
Matrix hermitian_part(const Matrix &m);

Matrix kron(const Matrix &a, const Matrix &b);

/// Reduced operator on the factors listed in `keep`, which must be strictly
/// increasing indices into `dims`. Kept factors stay in their original order.
Matrix partial_trace(const Matrix &m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);

// Eigen-decomposition of a Hermitian matrix.
//
// Eigenvalues are sorted in descending order; equal eigenvalues keep the
// order in which the Jacobi sweeps left them. Each eigenvector column is
// rotated so that its largest-magnitude entry is real and nonnegative, which
// makes purifications and Kraus extractions reproducible run to run.
struct HermitianEigen {
    std::vector<double> values;
    Matrix vectors;  // column k pairs with values[k]

    Matrix reconstruct() const;
    double max_value() const { return values.empty() ? 0.0 : values.front(); }
    double min_value() const { return values.empty() ? 0.0 : values.back(); }
    // Number of eigenvalues above kSupportThreshold * max(lambda_max, 0).
    std::size_t support_rank() const;
};

struct JacobiOptions {
    int max_sweeps = 100;
    // Converged when off-diagonal Frobenius mass <= this * ||H||_F.
    double relative_off_diagonal = 1e-13;
};

HermitianEigen eig_hermitian(const Matrix &m, const JacobiOptions &options = {});

// Applies f to the eigenvalues strictly above the support threshold and maps
// the kernel to zero. Requires m PSD up to kPsdTolerance.
Matrix matfun_on_support(const Matrix &m, const std::function<double(double)> &f);
Matrix matfun_on_support(const HermitianEigen &eig, const std::function<double(double)> &f);

// Orthogonal projector onto the support of a PSD matrix.
Matrix support_projector(const HermitianEigen &eig);

// Throws NotPSD if the spectrum dips below -kPsdTolerance * lambda_max.
void require_psd(const HermitianEigen &eig, const char *what);

}  // namespace qrev
