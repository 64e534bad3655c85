#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qrev/channel.hpp"
#include "qrev/entropy.hpp"
#include "qrev/qstate.hpp"

namespace qrev {

inline constexpr double kDefaultTolerance = 1e-7;

enum class Verdict { Pass, Fail };

const char *to_string(Verdict v);

/// Outcome of a checker. Every recorded deviation is compared against its
/// bound; the verdict is Pass exactly when none exceeds it. Plain quantities
/// are witnesses and never affect the verdict.
class CheckReport {
 public:
    CheckReport(std::string method, double tolerance)
        : method_(std::move(method)), tolerance_(tolerance) {}

    void record(const std::string &name, double value) { quantities_[name] = value; }
    // Deviation bounded by the report tolerance.
    void record_deviation(const std::string &name, double deviation) {
        record_deviation(name, deviation, tolerance_);
    }
    void record_deviation(const std::string &name, double deviation, double bound);

    Verdict verdict() const { return failed_ ? Verdict::Fail : Verdict::Pass; }
    bool passed() const { return !failed_; }
    const std::string &method() const { return method_; }
    double tolerance() const { return tolerance_; }
    const std::map<std::string, double> &quantities() const { return quantities_; }
    double quantity(const std::string &name) const { return quantities_.at(name); }

 private:
    std::string method_;
    double tolerance_;
    std::map<std::string, double> quantities_;
    bool failed_ = false;
};

struct VerifyOptions {
    double tolerance = kDefaultTolerance;
    // When nonzero, check_reversible re-tests the mutual-information equality
    // on this many random code states as well as the faithful one.
    std::size_t sample_states = 0;
    std::uint64_t seed = 0x5eed;
};

// R(tau) = sigma^1/2 E*(E(sigma)^-1/2 tau E(sigma)^-1/2) sigma^1/2 on the
// support of E(sigma). The orthocomplement of that support is sent to sigma,
// which keeps R trace preserving.
QuantumChannel petz_recovery(const QuantumChannel &ch, const DensityOperator &sigma);

// Quantities: i_identity_bits, i_channel_bits, delta_bits,
// petz_entanglement_fidelity, petz_completion_dim, sampled_states,
// sampled_max_delta_bits.
CheckReport check_reversible(const QuantumChannel &ch, const CodeSubspace &code,
                             const VerifyOptions &options = {});

// Quantities: i_channel_bits, max_output_spread (bounded by sqrt(tol)).
CheckReport check_vanishing(const QuantumChannel &ch, const CodeSubspace &code,
                            const VerifyOptions &options = {});

/// Knill-Laflamme coefficients c_kl = Tr[P E_k^dagger E_l P] / dim K and the
/// residuals ||P E_k^dagger E_l P - c_kl P||_max, indexed by Kraus pairs.
struct KLMatrix {
    Matrix coefficients;
    std::vector<double> residuals;  // row-major, size n*n

    std::size_t size() const { return coefficients.rows(); }
    double residual(std::size_t k, std::size_t l) const { return residuals[k * size() + l]; }
    double max_residual() const;
};

// Quantities: kraus_count, max_residual, coefficient_trace,
// coefficient_hermiticity_defect, and c_<k>_<l>_re / c_<k>_<l>_im.
std::pair<CheckReport, KLMatrix> check_kl(const QuantumChannel &ch, const CodeSubspace &code,
                                          const VerifyOptions &options = {});

// Output purity Tr[E(psi)^2] on the code basis and on the real superpositions
// (|x> + |y>)/sqrt(2). A heuristic: probes, not a proof over all code states.
double min_probe_purity(const QuantumChannel &ch, const CodeSubspace &code);

// Quantities: i_identity_bits, i_b_bits, i_c_bits, slack_bits,
// inequality_violation, b_reversible, c_vanishing, implication_violation,
// min_probe_purity, pure_state_channel, pure_detection_heuristic,
// bc_reversible, equality_applicable, equality_deviation, converse_violation.
CheckReport check_tradeoff(const QuantumChannel &ch_bc, std::pair<std::size_t, std::size_t> out_dims,
                           const CodeSubspace &code, const VerifyOptions &options = {});

}  // namespace qrev
