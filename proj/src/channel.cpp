#include "qrev/channel.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace qrev {

namespace {

constexpr double kKrausTraceTolerance = 1e-8;
constexpr double kChoiPsdFloor = -1e-9;
constexpr double kChoiMarginalTolerance = 1e-9;

void require_kraus_shapes(const KrausSet &ops) {
    if (ops.empty()) {
        throw DimensionMismatch("empty Kraus set");
    }
    for (const auto &op : ops) {
        if (op.rows() != ops.front().rows() || op.cols() != ops.front().cols()) {
            throw DimensionMismatch("Kraus operators have differing shapes");
        }
    }
    if (ops.front().rows() == 0 || ops.front().cols() == 0) {
        throw DimensionMismatch("Kraus operators must be non-empty");
    }
}

KrausSet extract_kraus(std::size_t in_dim, std::size_t out_dim, const HermitianEigen &eig) {
    const double threshold = kSupportThreshold * std::max(eig.max_value(), 0.0);
    const double d = static_cast<double>(in_dim);
    KrausSet ops;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] <= threshold) {
            continue;
        }
        const double w = std::sqrt(d * eig.values[k]);
        Matrix e(out_dim, in_dim);
        for (std::size_t i = 0; i < in_dim; ++i) {
            for (std::size_t b = 0; b < out_dim; ++b) {
                e(b, i) = w * eig.vectors(i * out_dim + b, k);
            }
        }
        ops.push_back(std::move(e));
    }
    return ops;
}

}  // namespace

Matrix choi_from_kraus(const KrausSet &ops) {
    require_kraus_shapes(ops);
    const std::size_t in_dim = ops.front().cols();
    const std::size_t out_dim = ops.front().rows();
    const std::size_t n = in_dim * out_dim;
    const double scale = 1.0 / static_cast<double>(in_dim);
    Matrix m(n, n);
    Vector psi(n);
    for (const auto &e : ops) {
        for (std::size_t i = 0; i < in_dim; ++i) {
            for (std::size_t b = 0; b < out_dim; ++b) {
                psi[i * out_dim + b] = e(b, i);
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (psi[r] == Complex{0.0, 0.0}) {
                continue;
            }
            const Complex x = scale * psi[r];
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) += x * std::conj(psi[c]);
            }
        }
    }
    return m;
}

double trace_preservation_defect(const KrausSet &ops) {
    require_kraus_shapes(ops);
    Matrix sum(ops.front().cols(), ops.front().cols());
    for (const auto &e : ops) {
        sum += adjoint_times(e, e);
    }
    return max_abs_diff(sum, Matrix::identity(sum.rows()));
}

QuantumChannel QuantumChannel::from_kraus(KrausSet ops) {
    require_kraus_shapes(ops);
    const double defect = trace_preservation_defect(ops);
    if (defect > kKrausTraceTolerance) {
        std::ostringstream msg;
        msg << "Kraus set not trace preserving: ||sum E^dagger E - I||_max = " << defect;
        throw NotTracePreserving(msg.str(), defect);
    }
    const std::size_t in_dim = ops.front().cols();
    const std::size_t out_dim = ops.front().rows();
    Matrix choi = choi_from_kraus(ops);
    return QuantumChannel(in_dim, out_dim, std::move(choi), std::move(ops));
}

QuantumChannel QuantumChannel::from_choi(std::size_t in_dim, std::size_t out_dim, Matrix choi) {
    if (in_dim == 0 || out_dim == 0 || choi.rows() != in_dim * out_dim || !choi.is_square()) {
        throw DimensionMismatch("Choi matrix must be (in_dim * out_dim) square");
    }
    const HermitianEigen eig = eig_hermitian(choi);
    if (eig.min_value() < kChoiPsdFloor) {
        std::ostringstream msg;
        msg << "Choi matrix has eigenvalue " << eig.min_value() << " (not completely positive)";
        throw NotCompletelyPositive(msg.str());
    }
    const std::size_t dims[] = {in_dim, out_dim};
    const std::size_t keep_ref[] = {0};
    Matrix target = Matrix::identity(in_dim);
    target *= 1.0 / static_cast<double>(in_dim);
    const double marginal_defect = max_abs_diff(partial_trace(choi, dims, keep_ref), target);
    if (marginal_defect > kChoiMarginalTolerance) {
        std::ostringstream msg;
        msg << "Choi matrix not trace preserving: ||Tr_B M - I/d||_max = " << marginal_defect;
        throw NotTracePreserving(msg.str(), marginal_defect);
    }
    KrausSet ops = extract_kraus(in_dim, out_dim, eig);
    const double defect = ops.empty() ? 1.0 : trace_preservation_defect(ops);
    if (defect > kKrausTraceTolerance) {
        std::ostringstream msg;
        msg << "Kraus set extracted from Choi matrix lost trace preservation: " << defect;
        throw NotTracePreserving(msg.str(), defect);
    }
    return QuantumChannel(in_dim, out_dim, hermitian_part(choi), std::move(ops));
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
    return from_kraus({Matrix::identity(dim)});
}

QuantumChannel QuantumChannel::unitary(const Matrix &u) {
    if (!u.is_square()) {
        throw DimensionMismatch("unitary channel needs a square matrix");
    }
    return from_kraus({u});
}

QuantumChannel QuantumChannel::constant(std::size_t in_dim, const DensityOperator &rho0) {
    const auto &eig = rho0.eigen();
    const std::size_t rank = rho0.rank();
    KrausSet ops;
    for (std::size_t j = 0; j < rank; ++j) {
        const double w = std::sqrt(eig.values[j]);
        for (std::size_t i = 0; i < in_dim; ++i) {
            Matrix e(rho0.dim(), in_dim);
            for (std::size_t b = 0; b < rho0.dim(); ++b) {
                e(b, i) = w * eig.vectors(b, j);
            }
            ops.push_back(std::move(e));
        }
    }
    return from_kraus(std::move(ops));
}

KrausSet to_kraus(const QuantumChannel &ch) {
    return extract_kraus(ch.in_dim(), ch.out_dim(), eig_hermitian(ch.choi()));
}

Matrix apply(const QuantumChannel &ch, const Matrix &x) {
    if (x.rows() != ch.in_dim() || x.cols() != ch.in_dim()) {
        throw DimensionMismatch("apply: operator is " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", channel input dim " +
                                std::to_string(ch.in_dim()));
    }
    const std::size_t d = ch.in_dim();
    const std::size_t m = ch.out_dim();
    const Matrix &choi = ch.choi();
    Matrix out(m, m);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Complex xij = x(i, j);
            if (xij == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t b = 0; b < m; ++b) {
                for (std::size_t bp = 0; bp < m; ++bp) {
                    out(b, bp) += xij * choi(i * m + b, j * m + bp);
                }
            }
        }
    }
    out *= static_cast<double>(d);
    return out;
}

DensityOperator apply(const QuantumChannel &ch, const DensityOperator &rho) {
    return DensityOperator(hermitian_part(apply(ch, rho.matrix())), kChannelOutputTolerances);
}

DensityOperator apply_extended(const QuantumChannel &ch, const PurifiedState &state) {
    if (state.sys_dim != ch.in_dim()) {
        throw DimensionMismatch("apply_extended: state system dim " +
                                std::to_string(state.sys_dim) + ", channel input dim " +
                                std::to_string(ch.in_dim()));
    }
    const std::size_t r_dim = state.ref_dim;
    const std::size_t a_dim = state.sys_dim;
    const std::size_t b_dim = ch.out_dim();
    const std::size_t n = r_dim * b_dim;
    Matrix out(n, n);
    Vector phi(n);
    for (const auto &e : ch.kraus()) {
        // (I_R (x) E_k)|psi>
        std::fill(phi.begin(), phi.end(), Complex{0.0, 0.0});
        for (std::size_t r = 0; r < r_dim; ++r) {
            for (std::size_t a = 0; a < a_dim; ++a) {
                const Complex amp = state.amplitudes[r * a_dim + a];
                if (amp == Complex{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t b = 0; b < b_dim; ++b) {
                    phi[r * b_dim + b] += e(b, a) * amp;
                }
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (phi[r] == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += phi[r] * std::conj(phi[c]);
            }
        }
    }
    return DensityOperator(hermitian_part(out), kChannelOutputTolerances);
}

StinespringDilation to_stinespring(const QuantumChannel &ch) {
    const auto &ops = ch.kraus();
    const std::size_t env = ops.size();
    const std::size_t m = ch.out_dim();
    StinespringDilation out{Matrix(m * env, ch.in_dim()), m, env};
    for (std::size_t l = 0; l < env; ++l) {
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t i = 0; i < ch.in_dim(); ++i) {
                out.isometry(b * env + l, i) = ops[l](b, i);
            }
        }
    }
    return out;
}

QuantumChannel complement(const QuantumChannel &ch) {
    const auto &ops = ch.kraus();
    const std::size_t env = ops.size();
    KrausSet comp;
    comp.reserve(ch.out_dim());
    for (std::size_t b = 0; b < ch.out_dim(); ++b) {
        // F_b = (<b| (x) I_E) V
        Matrix f(env, ch.in_dim());
        for (std::size_t l = 0; l < env; ++l) {
            for (std::size_t i = 0; i < ch.in_dim(); ++i) {
                f(l, i) = ops[l](b, i);
            }
        }
        comp.push_back(std::move(f));
    }
    return QuantumChannel::from_kraus(std::move(comp));
}

Matrix DualMap::operator()(const Matrix &y) const {
    Matrix out(kraus_.front().cols(), kraus_.front().cols());
    for (const auto &e : kraus_) {
        out += adjoint_times(e, y * e);
    }
    return out;
}

DualMap dual(const QuantumChannel &ch) { return DualMap(ch.kraus()); }

QuantumChannel compose(const QuantumChannel &later, const QuantumChannel &earlier) {
    if (later.in_dim() != earlier.out_dim()) {
        throw DimensionMismatch("compose: earlier output dim " + std::to_string(earlier.out_dim()) +
                                " != later input dim " + std::to_string(later.in_dim()));
    }
    KrausSet ops;
    ops.reserve(later.kraus().size() * earlier.kraus().size());
    for (const auto &l : later.kraus()) {
        for (const auto &e : earlier.kraus()) {
            ops.push_back(l * e);
        }
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel marginal(const QuantumChannel &ch, std::pair<std::size_t, std::size_t> out_dims,
                        Factor keep) {
    const auto [b_dim, c_dim] = out_dims;
    if (b_dim * c_dim != ch.out_dim() || b_dim == 0 || c_dim == 0) {
        throw DimensionMismatch("marginal: output dim " + std::to_string(ch.out_dim()) +
                                " does not factor as " + std::to_string(b_dim) + " x " +
                                std::to_string(c_dim));
    }
    const std::size_t kept_dim = keep == Factor::First ? b_dim : c_dim;
    const std::size_t traced_dim = keep == Factor::First ? c_dim : b_dim;
    KrausSet ops;
    ops.reserve(ch.kraus().size() * traced_dim);
    for (const auto &e : ch.kraus()) {
        for (std::size_t t = 0; t < traced_dim; ++t) {
            Matrix f(kept_dim, ch.in_dim());
            for (std::size_t k = 0; k < kept_dim; ++k) {
                const std::size_t row = keep == Factor::First ? k * c_dim + t : t * c_dim + k;
                for (std::size_t i = 0; i < ch.in_dim(); ++i) {
                    f(k, i) = e(row, i);
                }
            }
            ops.push_back(std::move(f));
        }
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel tensor(const QuantumChannel &a, const QuantumChannel &b) {
    KrausSet ops;
    ops.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &ea : a.kraus()) {
        for (const auto &eb : b.kraus()) {
            ops.push_back(kron(ea, eb));
        }
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel with_fixed_output(const QuantumChannel &ch, const DensityOperator &fixed) {
    const auto &eig = fixed.eigen();
    KrausSet ops;
    for (const auto &e : ch.kraus()) {
        for (std::size_t j = 0; j < fixed.rank(); ++j) {
            Vector u = eig.vectors.column(j);
            Matrix col = Matrix::ket(u);
            col *= std::sqrt(eig.values[j]);
            ops.push_back(kron(e, col));
        }
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

QuantumChannel mixture(double t, const QuantumChannel &a, const QuantumChannel &b) {
    if (t < 0.0 || t > 1.0) {
        throw DimensionMismatch("mixture weight must lie in [0, 1]");
    }
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
        throw DimensionMismatch("mixture of channels with different dimensions");
    }
    KrausSet ops;
    for (const auto &e : a.kraus()) {
        ops.push_back(e * std::sqrt(t));
    }
    for (const auto &e : b.kraus()) {
        ops.push_back(e * std::sqrt(1.0 - t));
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

}  // namespace qrev
