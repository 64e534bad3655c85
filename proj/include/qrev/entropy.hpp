#pragma once

#include <cstddef>
#include <utility>

#include "qrev/channel.hpp"
#include "qrev/qstate.hpp"

namespace qrev {

/// Entropic quantity in bits, or the +infinity sentinel produced by a
/// relative entropy whose support condition fails. Arithmetic on the
/// sentinel throws InfiniteEntropyArithmetic instead of propagating inf.
class EntropyValue {
 public:
    static EntropyValue finite(double bits) { return EntropyValue(bits, false); }
    static EntropyValue infinite() { return EntropyValue(0.0, true); }

    bool is_finite() const { return !infinite_; }
    // Throws on the sentinel.
    double bits() const;

    friend EntropyValue operator+(EntropyValue a, EntropyValue b);
    friend EntropyValue operator-(EntropyValue a, EntropyValue b);
    friend EntropyValue operator*(double s, EntropyValue a);

 private:
    EntropyValue(double bits, bool infinite) : bits_(bits), infinite_(infinite) {}

    double bits_;
    bool infinite_;
};

EntropyValue vn_entropy(const DensityOperator &rho);

// D(rho || sigma) = Tr[rho (log rho - log sigma)]; +inf when rho leaks out of
// the support of sigma (||(I - P_sigma) rho (I - P_sigma)||_max > 1e-9).
EntropyValue relative_entropy(const DensityOperator &rho, const DensityOperator &sigma);

// H(X) + H(Y) - H(XY) for rho on H_X (x) H_Y.
EntropyValue mutual_information(const DensityOperator &rho_xy,
                                std::pair<std::size_t, std::size_t> dims);

// I(rho, E) = I(R;B) on (I_R (x) E)(|Phi_rho><Phi_rho|).
EntropyValue channel_mutual_information(const DensityOperator &rho, const QuantumChannel &ch);

// I_c(rho, E) = H(B) - H(RB).
EntropyValue coherent_information(const DensityOperator &rho, const QuantumChannel &ch);

// <Phi_rho| (I (x) E)(|Phi_rho><Phi_rho|) |Phi_rho>; needs in_dim == out_dim.
double entanglement_fidelity(const DensityOperator &rho, const QuantumChannel &ch);

}  // namespace qrev
