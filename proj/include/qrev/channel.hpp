#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qrev/densemath.hpp"
#include "qrev/qstate.hpp"

namespace qrev {

using KrausSet = std::vector<Matrix>;

/// CPTP map H_A -> H_B held canonically as its Choi matrix
///
///     M = (1/d) sum_ij |i><j| (x) E(|i><j|),   Tr_B M = I_R / d,
///
/// on H_R (x) H_B, reference first. A Kraus set is always present: either the
/// one the channel was built from or the one extracted from M at construction.
class QuantumChannel {
 public:
    // Kraus operators are out_dim x in_dim and must satisfy
    // sum_k E_k^dagger E_k = I within 1e-8.
    static QuantumChannel from_kraus(KrausSet ops);
    // Validates M >= -1e-9 and Tr_B M = I/d within 1e-9, then extracts Kraus.
    static QuantumChannel from_choi(std::size_t in_dim, std::size_t out_dim, Matrix choi);

    static QuantumChannel identity(std::size_t dim);
    static QuantumChannel unitary(const Matrix &u);
    // rho -> Tr[rho] rho0
    static QuantumChannel constant(std::size_t in_dim, const DensityOperator &rho0);

    std::size_t in_dim() const { return in_dim_; }
    std::size_t out_dim() const { return out_dim_; }
    const Matrix &choi() const { return choi_; }
    const KrausSet &kraus() const { return kraus_; }

 private:
    QuantumChannel(std::size_t in_dim, std::size_t out_dim, Matrix choi, KrausSet kraus)
        : in_dim_(in_dim), out_dim_(out_dim), choi_(std::move(choi)), kraus_(std::move(kraus)) {}

    std::size_t in_dim_;
    std::size_t out_dim_;
    Matrix choi_;
    KrausSet kraus_;
};

// (1/d) sum_ij |i><j| (x) sum_k E_k |i><j| E_k^dagger
Matrix choi_from_kraus(const KrausSet &ops);

// sum_k E_k^dagger E_k - I, in max norm.
double trace_preservation_defect(const KrausSet &ops);

// Canonical Kraus operators from the spectral decomposition of the Choi
// matrix: E_k = sqrt(d * lambda_k) unvec(v_k), column-stacked, dropping
// eigenvalues at or below the support threshold.
KrausSet to_kraus(const QuantumChannel &ch);

// E(X) = d Tr_R[(X^T (x) I_B) M]; valid for any operator X on H_A.
Matrix apply(const QuantumChannel &ch, const Matrix &x);
DensityOperator apply(const QuantumChannel &ch, const DensityOperator &rho);

// (I_R (x) E)(|psi><psi|) on H_R (x) H_B.
DensityOperator apply_extended(const QuantumChannel &ch, const PurifiedState &state);

struct StinespringDilation {
    Matrix isometry;  // (out_dim * env_dim) x in_dim, output factor first
    std::size_t out_dim = 0;
    std::size_t env_dim = 0;
};

// V|i> = sum_l E_l|i> (x) |l> over the channel's Kraus set.
StinespringDilation to_stinespring(const QuantumChannel &ch);

// rho -> Tr_B[V rho V^dagger] = sum_kl Tr[rho E_k^dagger E_l] |l><k|.
QuantumChannel complement(const QuantumChannel &ch);

/// Heisenberg-picture map Y -> sum_k E_k^dagger Y E_k.
class DualMap {
 public:
    explicit DualMap(KrausSet kraus) : kraus_(std::move(kraus)) {}
    Matrix operator()(const Matrix &y) const;

 private:
    KrausSet kraus_;
};

DualMap dual(const QuantumChannel &ch);

// later o earlier
QuantumChannel compose(const QuantumChannel &later, const QuantumChannel &earlier);

enum class Factor { First, Second };

// Output factor `keep` of a channel whose output space is dims.first (x) dims.second.
QuantumChannel marginal(const QuantumChannel &ch, std::pair<std::size_t, std::size_t> out_dims,
                        Factor keep);

// a (x) b acting on H_A1 (x) H_A2.
QuantumChannel tensor(const QuantumChannel &a, const QuantumChannel &b);

// rho -> ch(rho) (x) fixed: appends a decoupled output factor.
QuantumChannel with_fixed_output(const QuantumChannel &ch, const DensityOperator &fixed);

// t a + (1 - t) b for t in [0, 1].
QuantumChannel mixture(double t, const QuantumChannel &a, const QuantumChannel &b);

}  // namespace qrev
