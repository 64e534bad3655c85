#include "qrev/densemath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace qrev {

namespace {

std::string shape(const Matrix &m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix &a, const Matrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": " + shape(a) + " vs " + shape(b));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatch("matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " given " + std::to_string(entries_.size()) + " entries");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("ragged matrix literal");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

Matrix Matrix::ket(std::span<const Complex> v) {
    return Matrix(v.size(), 1, Vector(v.begin(), v.end()));
}

Matrix Matrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
    Matrix m(a.size(), b.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < b.size(); ++c) {
            m(r, c) = a[r] * std::conj(b[c]);
        }
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

Complex Matrix::trace() const {
    if (!is_square()) {
        throw DimensionMismatch("trace of non-square " + shape(*this));
    }
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::max_norm() const {
    double best = 0.0;
    for (const auto &z : entries_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (const auto &z : entries_) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

Matrix &Matrix::operator+=(const Matrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

Matrix &Matrix::operator*=(Complex s) {
    for (auto &z : entries_) {
        z *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
Matrix operator*(Matrix a, Complex s) { return a *= s; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("operator*: " + shape(a) + " times " + shape(b));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex x = a(r, k);
            if (x == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += x * b(k, c);
            }
        }
    }
    return out;
}

Matrix adjoint_times(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows()) {
        throw DimensionMismatch("adjoint_times: " + shape(a) + " vs " + shape(b));
    }
    Matrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t r = 0; r < a.cols(); ++r) {
            const Complex x = std::conj(a(k, r));
            if (x == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += x * b(k, c);
            }
        }
    }
    return out;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    }
    return best;
}

double hermiticity_defect(const Matrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("hermiticity of non-square " + shape(m));
    }
    double best = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r; c < m.cols(); ++c) {
            best = std::max(best, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return best;
}

Matrix hermitian_part(const Matrix &m) {
    if (!m.is_square()) {
        throw DimensionMismatch("hermitian_part of non-square " + shape(m));
    }
    Matrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out(r, r) = m(r, r).real();
        for (std::size_t c = r + 1; c < m.cols(); ++c) {
            const Complex z = 0.5 * (m(r, c) + std::conj(m(c, r)));
            out(r, c) = z;
            out(c, r) = std::conj(z);
        }
    }
    return out;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex x = a(ar, ac);
            if (x == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

Matrix partial_trace(const Matrix &m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
    if (!m.is_square()) {
        throw DimensionMismatch("partial_trace of non-square " + shape(m));
    }
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (dims.empty() || total != m.rows()) {
        throw DimensionMismatch("partial_trace: factor dimensions do not multiply to " +
                                std::to_string(m.rows()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1])) {
            throw DimensionMismatch("partial_trace: keep indices must be increasing and in range");
        }
        kept[keep[i]] = true;
    }

    // Split every composite index into (kept part, traced part).
    std::size_t kept_dim = 1;
    for (auto k : keep) {
        kept_dim *= dims[k];
    }
    std::vector<std::size_t> kept_index(total), traced_index(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        std::size_t k_idx = 0, k_stride = 1, t_idx = 0, t_stride = 1;
        for (std::size_t f = dims.size(); f-- > 0;) {
            const std::size_t digit = rest % dims[f];
            rest /= dims[f];
            if (kept[f]) {
                k_idx += digit * k_stride;
                k_stride *= dims[f];
            } else {
                t_idx += digit * t_stride;
                t_stride *= dims[f];
            }
        }
        kept_index[idx] = k_idx;
        traced_index[idx] = t_idx;
    }

    Matrix out(kept_dim, kept_dim);
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            if (traced_index[r] == traced_index[c]) {
                out(kept_index[r], kept_index[c]) += m(r, c);
            }
        }
    }
    return out;
}

Matrix HermitianEigen::reconstruct() const {
    const std::size_t n = vectors.rows();
    Matrix out(n, n);
    for (std::size_t k = 0; k < values.size(); ++k) {
        for (std::size_t r = 0; r < n; ++r) {
            const Complex x = values[k] * vectors(r, k);
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += x * std::conj(vectors(c, k));
            }
        }
    }
    return out;
}

std::size_t HermitianEigen::support_rank() const {
    const double threshold = kSupportThreshold * std::max(max_value(), 0.0);
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; }));
}

namespace {

double off_diagonal_mass(const Matrix &a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                sum += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing a(p, q). G = diag-phase * real rotation.
void rotate(Matrix &a, Matrix &v, std::size_t p, std::size_t q) {
    const Complex b = a(p, q);
    const double mag = std::abs(b);
    if (mag == 0.0) {
        return;
    }
    const Complex phase_conj = std::conj(b / mag);
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex g_pp = c;
    const Complex g_pq = s;
    const Complex g_qp = -s * phase_conj;
    const Complex g_qq = c * phase_conj;

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * g_pp + akq * g_qp;
        a(k, q) = akp * g_pq + akq * g_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
        a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * g_pp + vkq * g_qp;
        v(k, q) = vkp * g_pq + vkq * g_qq;
    }
}

void fix_phase(Matrix &v, std::size_t col) {
    double best = 0.0;
    for (std::size_t r = 0; r < v.rows(); ++r) {
        best = std::max(best, std::abs(v(r, col)));
    }
    if (best == 0.0) {
        return;
    }
    // First entry within rounding of the maximum wins, so ties are stable.
    std::size_t pivot = 0;
    for (std::size_t r = 0; r < v.rows(); ++r) {
        if (std::abs(v(r, col)) >= best * (1.0 - 1e-12)) {
            pivot = r;
            break;
        }
    }
    const Complex z = v(pivot, col);
    const Complex rot = std::conj(z) / std::abs(z);
    for (std::size_t r = 0; r < v.rows(); ++r) {
        v(r, col) *= rot;
    }
    v(pivot, col) = std::abs(z);
}

}  // namespace

HermitianEigen eig_hermitian(const Matrix &m, const JacobiOptions &options) {
    if (!m.is_square()) {
        throw DimensionMismatch("eig_hermitian of non-square " + shape(m));
    }
    const double defect = hermiticity_defect(m);
    if (defect > kHermiticityTolerance * m.max_norm()) {
        std::ostringstream msg;
        msg << "eig_hermitian: ||m - m^dagger||_max = " << defect;
        throw NonHermitian(msg.str());
    }

    const std::size_t n = m.rows();
    Matrix a = hermitian_part(m);
    Matrix v = Matrix::identity(n);
    const double target = options.relative_off_diagonal * a.frobenius_norm();

    int sweeps = 0;
    while (off_diagonal_mass(a) > target) {
        if (sweeps == options.max_sweeps) {
            throw NoConvergence("eig_hermitian: no convergence after " +
                                std::to_string(sweeps) + " sweeps");
        }
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
        fix_phase(out.vectors, k);
    }
    return out;
}

void require_psd(const HermitianEigen &eig, const char *what) {
    const double floor = -kPsdTolerance * std::max(eig.max_value(), 0.0);
    if (eig.min_value() < floor) {
        std::ostringstream msg;
        msg << what << ": eigenvalue " << eig.min_value() << " below PSD tolerance";
        throw NotPSD(msg.str());
    }
}

Matrix matfun_on_support(const HermitianEigen &eig, const std::function<double(double)> &f) {
    require_psd(eig, "matfun_on_support");
    const std::size_t n = eig.vectors.rows();
    const double threshold = kSupportThreshold * std::max(eig.max_value(), 0.0);
    Matrix out(n, n);
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] <= threshold) {
            continue;
        }
        const double fk = f(eig.values[k]);
        for (std::size_t r = 0; r < n; ++r) {
            const Complex x = fk * eig.vectors(r, k);
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += x * std::conj(eig.vectors(c, k));
            }
        }
    }
    return hermitian_part(out);
}

Matrix matfun_on_support(const Matrix &m, const std::function<double(double)> &f) {
    return matfun_on_support(eig_hermitian(m), f);
}

Matrix support_projector(const HermitianEigen &eig) {
    return matfun_on_support(eig, [](double) { return 1.0; });
}

}  // namespace qrev
