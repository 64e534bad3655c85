#include "qrev/entropy.hpp"

#include <cmath>
#include <string>

namespace qrev {

namespace {

constexpr double kSupportLeakTolerance = 1e-9;

void require_finite(const EntropyValue &v, const char *op) {
    if (!v.is_finite()) {
        throw InfiniteEntropyArithmetic(std::string(op) + " on an infinite entropy value");
    }
}

double entropy_bits(const HermitianEigen &eig) {
    const double threshold = kSupportThreshold * std::max(eig.max_value(), 0.0);
    double h = 0.0;
    for (double p : eig.values) {
        if (p > threshold) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

double entropy_bits(const Matrix &m) { return entropy_bits(eig_hermitian(m)); }

// Entropies of the joint state and both marginals on H_X (x) H_Y.
struct BipartiteEntropies {
    double x;
    double y;
    double xy;
};

BipartiteEntropies bipartite_entropies(const DensityOperator &rho_xy, std::size_t dx,
                                       std::size_t dy) {
    const std::size_t dims[] = {dx, dy};
    const std::size_t keep_x[] = {0};
    const std::size_t keep_y[] = {1};
    return {entropy_bits(partial_trace(rho_xy.matrix(), dims, keep_x)),
            entropy_bits(partial_trace(rho_xy.matrix(), dims, keep_y)),
            entropy_bits(rho_xy.eigen())};
}

void require_input_dim(const DensityOperator &rho, const QuantumChannel &ch, const char *op) {
    if (rho.dim() != ch.in_dim()) {
        throw DimensionMismatch(std::string(op) + ": state dim " + std::to_string(rho.dim()) +
                                ", channel input dim " + std::to_string(ch.in_dim()));
    }
}

}  // namespace

double EntropyValue::bits() const {
    require_finite(*this, "bits()");
    return bits_;
}

EntropyValue operator+(EntropyValue a, EntropyValue b) {
    require_finite(a, "operator+");
    require_finite(b, "operator+");
    return EntropyValue::finite(a.bits_ + b.bits_);
}

EntropyValue operator-(EntropyValue a, EntropyValue b) {
    require_finite(a, "operator-");
    require_finite(b, "operator-");
    return EntropyValue::finite(a.bits_ - b.bits_);
}

EntropyValue operator*(double s, EntropyValue a) {
    require_finite(a, "operator*");
    return EntropyValue::finite(s * a.bits_);
}

EntropyValue vn_entropy(const DensityOperator &rho) {
    return EntropyValue::finite(entropy_bits(rho.eigen()));
}

EntropyValue relative_entropy(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("relative_entropy: dims " + std::to_string(rho.dim()) + " and " +
                                std::to_string(sigma.dim()));
    }
    const Matrix kernel = Matrix::identity(sigma.dim()) - sigma.support_projector();
    if ((kernel * rho.matrix() * kernel).max_norm() > kSupportLeakTolerance) {
        return EntropyValue::infinite();
    }
    const Matrix log_sigma = matfun_on_support(sigma.eigen(), [](double x) { return std::log2(x); });
    const double cross = (rho.matrix() * log_sigma).trace().real();
    return EntropyValue::finite(-entropy_bits(rho.eigen()) - cross);
}

EntropyValue mutual_information(const DensityOperator &rho_xy,
                                std::pair<std::size_t, std::size_t> dims) {
    if (dims.first * dims.second != rho_xy.dim()) {
        throw DimensionMismatch("mutual_information: " + std::to_string(dims.first) + " x " +
                                std::to_string(dims.second) + " does not factor dim " +
                                std::to_string(rho_xy.dim()));
    }
    const auto h = bipartite_entropies(rho_xy, dims.first, dims.second);
    return EntropyValue::finite(h.x + h.y - h.xy);
}

EntropyValue channel_mutual_information(const DensityOperator &rho, const QuantumChannel &ch) {
    require_input_dim(rho, ch, "channel_mutual_information");
    const PurifiedState phi = purify_on_support(rho);
    return mutual_information(apply_extended(ch, phi), {phi.ref_dim, ch.out_dim()});
}

EntropyValue coherent_information(const DensityOperator &rho, const QuantumChannel &ch) {
    require_input_dim(rho, ch, "coherent_information");
    const PurifiedState phi = purify_on_support(rho);
    const auto h = bipartite_entropies(apply_extended(ch, phi), phi.ref_dim, ch.out_dim());
    return EntropyValue::finite(h.y - h.xy);
}

double entanglement_fidelity(const DensityOperator &rho, const QuantumChannel &ch) {
    require_input_dim(rho, ch, "entanglement_fidelity");
    if (ch.out_dim() != ch.in_dim()) {
        throw DimensionMismatch("entanglement_fidelity needs a channel with in_dim == out_dim");
    }
    const PurifiedState phi = purify_on_support(rho);
    const DensityOperator out = apply_extended(ch, phi);
    const Matrix &joint = out.matrix();
    Complex overlap{0.0, 0.0};
    const std::size_t n = phi.amplitudes.size();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            overlap += std::conj(phi.amplitudes[r]) * joint(r, c) * phi.amplitudes[c];
        }
    }
    return overlap.real();
}

}  // namespace qrev
