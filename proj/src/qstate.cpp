#include "qrev/qstate.hpp"

#include <cmath>
#include <sstream>

namespace qrev {

DensityOperator::DensityOperator(const Matrix &m, const StateTolerances &tol) {
    if (!m.is_square() || m.rows() == 0) {
        throw DimensionMismatch("density operator must be a non-empty square matrix");
    }
    const double defect = hermiticity_defect(m);
    if (defect > tol.hermiticity) {
        std::ostringstream msg;
        msg << "density operator not Hermitian: ||m - m^dagger||_max = " << defect;
        throw InvalidState(msg.str());
    }
    matrix_ = hermitian_part(m);
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream msg;
        msg << "density operator trace " << tr << " differs from 1";
        throw InvalidState(msg.str());
    }
    eigen_ = eig_hermitian(matrix_);
    if (eigen_.min_value() < tol.min_eigenvalue) {
        std::ostringstream msg;
        msg << "density operator has eigenvalue " << eigen_.min_value();
        throw InvalidState(msg.str());
    }
    support_ = qrev::support_projector(eigen_);
}

DensityOperator DensityOperator::pure(std::span<const Complex> psi) {
    double norm2 = 0.0;
    for (const auto &z : psi) {
        norm2 += std::norm(z);
    }
    if (norm2 == 0.0) {
        throw InvalidState("pure state from zero vector");
    }
    Matrix m = Matrix::outer(psi, psi);
    m *= 1.0 / norm2;
    return DensityOperator(m);
}

DensityOperator DensityOperator::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw DimensionMismatch("basis index out of range");
    }
    Matrix m(dim, dim);
    m(index, index) = 1.0;
    return DensityOperator(m);
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    Matrix m = Matrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityOperator(m);
}

namespace {

PurifiedState purify_impl(const DensityOperator &rho, bool support_only) {
    const auto &eig = rho.eigen();
    const std::size_t d = rho.dim();
    const std::size_t ref = support_only ? std::max<std::size_t>(rho.rank(), 1) : d;
    PurifiedState out{ref, d, Vector(ref * d)};
    for (std::size_t i = 0; i < ref; ++i) {
        const double p = std::max(eig.values[i], 0.0);
        if (p == 0.0) {
            continue;
        }
        const double w = std::sqrt(p);
        for (std::size_t a = 0; a < d; ++a) {
            out.amplitudes[i * d + a] = w * eig.vectors(a, i);
        }
    }
    // Clipped negative rounding noise leaves the norm a hair off one.
    double norm2 = 0.0;
    for (const auto &z : out.amplitudes) {
        norm2 += std::norm(z);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto &z : out.amplitudes) {
        z *= scale;
    }
    return out;
}

}  // namespace

PurifiedState purify(const DensityOperator &rho) { return purify_impl(rho, false); }

PurifiedState purify_on_support(const DensityOperator &rho) { return purify_impl(rho, true); }

CodeSubspace::CodeSubspace(Matrix isometry) : isometry_(std::move(isometry)) {
    if (isometry_.rows() == 0 || isometry_.cols() == 0 || isometry_.cols() > isometry_.rows()) {
        throw InvalidCode("code isometry must be n x k with 0 < k <= n");
    }
    const double defect =
        max_abs_diff(adjoint_times(isometry_, isometry_), Matrix::identity(isometry_.cols()));
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << "code isometry: ||V^dagger V - I||_max = " << defect;
        throw InvalidCode(msg.str());
    }
    projector_ = isometry_ * isometry_.adjoint();
}

CodeSubspace CodeSubspace::from_basis_states(std::size_t ambient_dim,
                                             std::span<const std::size_t> indices) {
    Matrix v(ambient_dim, indices.size());
    for (std::size_t x = 0; x < indices.size(); ++x) {
        if (indices[x] >= ambient_dim) {
            throw InvalidCode("codeword index out of range");
        }
        v(indices[x], x) = 1.0;
    }
    return CodeSubspace(std::move(v));
}

CodeSubspace CodeSubspace::full(std::size_t dim) { return CodeSubspace(Matrix::identity(dim)); }

DensityOperator encode(const CodeSubspace &code, const DensityOperator &rho_x) {
    if (rho_x.dim() != code.logical_dim()) {
        throw DimensionMismatch("encode: logical state has dim " + std::to_string(rho_x.dim()) +
                                ", code expects " + std::to_string(code.logical_dim()));
    }
    const Matrix &v = code.isometry();
    return DensityOperator(v * rho_x.matrix() * v.adjoint(), kChannelOutputTolerances);
}

DensityOperator faithful_code_state(const CodeSubspace &code) {
    Matrix m = code.projector();
    m *= 1.0 / static_cast<double>(code.logical_dim());
    return DensityOperator(m, kChannelOutputTolerances);
}

}  // namespace qrev
