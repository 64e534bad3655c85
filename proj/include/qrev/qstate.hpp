#pragma once

#include <cstddef>

#include "qrev/densemath.hpp"

namespace qrev {

struct StateTolerances {
    double hermiticity = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-9;
};

// Tolerances for operators produced by applying a validated channel: the
// trace is only as good as the channel's trace-preservation check.
inline constexpr StateTolerances kChannelOutputTolerances{1e-10, 1e-8, -1e-9};

/// Hermitian, unit-trace, positive semidefinite operator. Validated on
/// construction; its eigen-decomposition is computed once and carried along.
class DensityOperator {
 public:
    explicit DensityOperator(const Matrix &m, const StateTolerances &tol = {});

    static DensityOperator pure(std::span<const Complex> psi);
    static DensityOperator basis_state(std::size_t dim, std::size_t index);
    static DensityOperator maximally_mixed(std::size_t dim);

    std::size_t dim() const { return matrix_.rows(); }
    const Matrix &matrix() const { return matrix_; }
    const HermitianEigen &eigen() const { return eigen_; }
    const Matrix &support_projector() const { return support_; }
    std::size_t rank() const { return eigen_.support_rank(); }

 private:
    Matrix matrix_;
    HermitianEigen eigen_;
    Matrix support_;
};

/// Pure state on H_R (x) H_A, reference factor first.
struct PurifiedState {
    std::size_t ref_dim = 0;
    std::size_t sys_dim = 0;
    Vector amplitudes;

    Matrix projector() const { return Matrix::outer(amplitudes, amplitudes); }
};

// |Phi_rho> = sum_i sqrt(p_i) |i>_R (x) |v_i>_A with (p_i, v_i) the eigenpairs
// of rho and |i> the computational basis of a reference of dimension dim(rho).
PurifiedState purify(const DensityOperator &rho);

// Same construction restricted to the support: the reference has dimension
// rank(rho). Isometrically equivalent to purify(); used where only
// reference-invariant quantities are needed.
PurifiedState purify_on_support(const DensityOperator &rho);

/// Isometry V: H_X -> H_A whose range is the code space K_A.
class CodeSubspace {
 public:
    explicit CodeSubspace(Matrix isometry);

    // Code spanned by computational basis states of the ambient space.
    static CodeSubspace from_basis_states(std::size_t ambient_dim,
                                          std::span<const std::size_t> indices);
    static CodeSubspace full(std::size_t dim);

    std::size_t ambient_dim() const { return isometry_.rows(); }
    std::size_t logical_dim() const { return isometry_.cols(); }
    const Matrix &isometry() const { return isometry_; }
    const Matrix &projector() const { return projector_; }
    // V|x> for the logical basis state x.
    Vector codeword(std::size_t x) const { return isometry_.column(x); }

 private:
    Matrix isometry_;
    Matrix projector_;
};

// rho_A = V rho_X V^dagger
DensityOperator encode(const CodeSubspace &code, const DensityOperator &rho_x);

// V V^dagger / logical_dim: maximally mixed on the code, full support there.
DensityOperator faithful_code_state(const CodeSubspace &code);

}  // namespace qrev
