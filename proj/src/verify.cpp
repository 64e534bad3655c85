#include "qrev/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qrev {

namespace {

void require_code_fits(const QuantumChannel &ch, const CodeSubspace &code, const char *op) {
    if (code.ambient_dim() != ch.in_dim()) {
        throw DimensionMismatch(std::string(op) + ": code ambient dim " +
                                std::to_string(code.ambient_dim()) + ", channel input dim " +
                                std::to_string(ch.in_dim()));
    }
}

double flag(bool b) { return b ? 1.0 : 0.0; }

// Ginibre-distributed full-rank logical state.
DensityOperator random_logical_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    Matrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            g(r, c) = Complex{normal(rng), normal(rng)};
        }
    }
    Matrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityOperator(hermitian_part(rho));
}

double mutual_information_gap(const DensityOperator &rho, const QuantumChannel &ch) {
    const auto id = QuantumChannel::identity(ch.in_dim());
    return (channel_mutual_information(rho, id) - channel_mutual_information(rho, ch)).bits();
}

}  // namespace

const char *to_string(Verdict v) { return v == Verdict::Pass ? "pass" : "fail"; }

void CheckReport::record_deviation(const std::string &name, double deviation, double bound) {
    quantities_[name] = deviation;
    // NaN compares false and fails the check.
    if (!(deviation <= bound)) {
        failed_ = true;
    }
}

QuantumChannel petz_recovery(const QuantumChannel &ch, const DensityOperator &sigma) {
    if (sigma.dim() != ch.in_dim()) {
        throw DimensionMismatch("petz_recovery: sigma dim " + std::to_string(sigma.dim()) +
                                ", channel input dim " + std::to_string(ch.in_dim()));
    }
    const DensityOperator image = apply(ch, sigma);
    const Matrix image_inv_sqrt =
        matfun_on_support(image.eigen(), [](double x) { return 1.0 / std::sqrt(x); });
    const Matrix sigma_sqrt = matfun_on_support(sigma.eigen(), [](double x) { return std::sqrt(x); });

    KrausSet ops;
    for (const auto &e : ch.kraus()) {
        ops.push_back(sigma_sqrt * e.adjoint() * image_inv_sqrt);
    }

    // Completion: |q><q| on the kernel of E(sigma) goes to sigma.
    const auto &img = image.eigen();
    const auto &sig = sigma.eigen();
    for (std::size_t m = image.rank(); m < image.dim(); ++m) {
        const Vector q = img.vectors.column(m);
        for (std::size_t j = 0; j < sigma.rank(); ++j) {
            const Vector u = sig.vectors.column(j);
            Matrix k = Matrix::outer(u, q);
            k *= std::sqrt(sig.values[j]);
            ops.push_back(std::move(k));
        }
    }
    return QuantumChannel::from_kraus(std::move(ops));
}

CheckReport check_reversible(const QuantumChannel &ch, const CodeSubspace &code,
                             const VerifyOptions &options) {
    require_code_fits(ch, code, "check_reversible");
    CheckReport report("mutual-information", options.tolerance);

    const DensityOperator faithful = faithful_code_state(code);
    const auto i_id = channel_mutual_information(faithful, QuantumChannel::identity(ch.in_dim()));
    const auto i_ch = channel_mutual_information(faithful, ch);
    report.record("i_identity_bits", i_id.bits());
    report.record("i_channel_bits", i_ch.bits());
    report.record_deviation("delta_bits", std::abs((i_id - i_ch).bits()));

    const QuantumChannel recovery = petz_recovery(ch, faithful);
    const DensityOperator image = apply(ch, faithful);
    report.record("petz_entanglement_fidelity",
                  entanglement_fidelity(faithful, compose(recovery, ch)));
    report.record("petz_completion_dim", static_cast<double>(image.dim() - image.rank()));

    double sampled_max = 0.0;
    if (options.sample_states > 0) {
        std::mt19937_64 rng(options.seed);
        for (std::size_t s = 0; s < options.sample_states; ++s) {
            const DensityOperator rho = encode(code, random_logical_state(code.logical_dim(), rng));
            sampled_max = std::max(sampled_max, std::abs(mutual_information_gap(rho, ch)));
        }
    }
    report.record("sampled_states", static_cast<double>(options.sample_states));
    report.record_deviation("sampled_max_delta_bits", sampled_max);
    return report;
}

CheckReport check_vanishing(const QuantumChannel &ch, const CodeSubspace &code,
                            const VerifyOptions &options) {
    require_code_fits(ch, code, "check_vanishing");
    CheckReport report("vanishing", options.tolerance);

    const DensityOperator faithful = faithful_code_state(code);
    report.record_deviation("i_channel_bits", channel_mutual_information(faithful, ch).bits());

    const Matrix reference = apply(ch, faithful.matrix());
    double spread = 0.0;
    for (std::size_t x = 0; x < code.logical_dim(); ++x) {
        const Vector psi = code.codeword(x);
        spread = std::max(spread, max_abs_diff(apply(ch, Matrix::outer(psi, psi)), reference));
    }
    report.record_deviation("max_output_spread", spread, std::sqrt(options.tolerance));
    return report;
}

double KLMatrix::max_residual() const {
    return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

std::pair<CheckReport, KLMatrix> check_kl(const QuantumChannel &ch, const CodeSubspace &code,
                                          const VerifyOptions &options) {
    require_code_fits(ch, code, "check_kl");
    CheckReport report("knill-laflamme", options.tolerance);

    const auto &ops = ch.kraus();
    const std::size_t n = ops.size();
    const Matrix &p = code.projector();
    const double logical = static_cast<double>(code.logical_dim());

    // E_k P, reused for every pair.
    std::vector<Matrix> compressed;
    compressed.reserve(n);
    for (const auto &e : ops) {
        compressed.push_back(e * p);
    }

    KLMatrix kl{Matrix(n, n), std::vector<double>(n * n, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const Matrix block = adjoint_times(compressed[k], compressed[l]);
            const Complex c = block.trace() / logical;
            kl.coefficients(k, l) = c;
            kl.residuals[k * n + l] = max_abs_diff(block, p * c);
        }
    }

    report.record("kraus_count", static_cast<double>(n));
    report.record_deviation("max_residual", kl.max_residual());
    report.record("coefficient_trace", kl.coefficients.trace().real());
    report.record("coefficient_hermiticity_defect", hermiticity_defect(kl.coefficients));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const std::string key = "c_" + std::to_string(k) + "_" + std::to_string(l);
            report.record(key + "_re", kl.coefficients(k, l).real());
            report.record(key + "_im", kl.coefficients(k, l).imag());
        }
    }
    return {std::move(report), std::move(kl)};
}

double min_probe_purity(const QuantumChannel &ch, const CodeSubspace &code) {
    require_code_fits(ch, code, "min_probe_purity");
    auto purity = [&](const Vector &psi) {
        const Matrix out = apply(ch, Matrix::outer(psi, psi));
        return (out * out).trace().real();
    };
    double worst = 1.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t x = 0; x < code.logical_dim(); ++x) {
        const Vector vx = code.codeword(x);
        worst = std::min(worst, purity(vx));
        for (std::size_t y = x + 1; y < code.logical_dim(); ++y) {
            const Vector vy = code.codeword(y);
            Vector sum(vx.size());
            for (std::size_t i = 0; i < sum.size(); ++i) {
                sum[i] = inv_sqrt2 * (vx[i] + vy[i]);
            }
            worst = std::min(worst, purity(sum));
        }
    }
    return worst;
}

CheckReport check_tradeoff(const QuantumChannel &ch_bc, std::pair<std::size_t, std::size_t> out_dims,
                           const CodeSubspace &code, const VerifyOptions &options) {
    require_code_fits(ch_bc, code, "check_tradeoff");
    const QuantumChannel ch_b = marginal(ch_bc, out_dims, Factor::First);
    const QuantumChannel ch_c = marginal(ch_bc, out_dims, Factor::Second);
    CheckReport report("tradeoff", options.tolerance);

    const DensityOperator faithful = faithful_code_state(code);
    const auto i_id = channel_mutual_information(faithful, QuantumChannel::identity(ch_bc.in_dim()));
    const auto i_b = channel_mutual_information(faithful, ch_b);
    const auto i_c = channel_mutual_information(faithful, ch_c);
    const double slack = (i_id - i_b - i_c).bits();
    report.record("i_identity_bits", i_id.bits());
    report.record("i_b_bits", i_b.bits());
    report.record("i_c_bits", i_c.bits());
    report.record("slack_bits", slack);
    report.record_deviation("inequality_violation", std::max(0.0, -slack));

    // Reversible B must force vanishing C.
    VerifyOptions sub = options;
    sub.sample_states = 0;
    const bool b_reversible = check_reversible(ch_b, code, sub).passed();
    const bool c_vanishing = check_vanishing(ch_c, code, sub).passed();
    report.record("b_reversible", flag(b_reversible));
    report.record("c_vanishing", flag(c_vanishing));
    report.record_deviation("implication_violation", flag(b_reversible && !c_vanishing));

    const double purity = min_probe_purity(ch_bc, code);
    const bool pure = purity >= 1.0 - options.tolerance;
    const bool bc_reversible = check_reversible(ch_bc, code, sub).passed();
    report.record("min_probe_purity", purity);
    report.record("pure_state_channel", flag(pure));
    report.record("pure_detection_heuristic", 1.0);
    report.record("bc_reversible", flag(bc_reversible));

    const bool applicable = pure && bc_reversible;
    report.record("equality_applicable", flag(applicable));
    report.record_deviation("equality_deviation", applicable ? std::abs(slack) : 0.0);
    report.record_deviation("converse_violation",
                            flag(applicable && c_vanishing && !b_reversible));
    return report;
}

}  // namespace qrev
