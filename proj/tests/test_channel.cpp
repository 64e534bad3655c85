#include <gtest/gtest.h>

#include <cmath>

#include "instances.hpp"
#include "oracle.hpp"
#include "qrev/channel.hpp"

using namespace qrev;
using instances::Rng;

namespace {

Matrix unit(std::size_t d, std::size_t i, std::size_t j) {
    Matrix m(d, d);
    m(i, j) = 1.0;
    return m;
}

QuantumChannel pauli_twirl() {
    const double w = 0.5;
    return QuantumChannel::from_kraus({Matrix::identity(2) * w, instances::pauli_x() * w,
                                       instances::pauli_y() * w, instances::pauli_z() * w});
}

}  // namespace

TEST(FromKraus, IdentityGivesMaximallyEntangledProjector) {
    const auto ch = QuantumChannel::from_kraus({Matrix::identity(2)});
    const double h = 1.0 / std::sqrt(2.0);
    const Complex phi[] = {h, 0.0, 0.0, h};
    EXPECT_LE(max_abs_diff(ch.choi(), Matrix::outer(phi, phi)), 1e-15);
}

TEST(FromKraus, ResetToZero) {
    const auto ch = instances::reset_to_zero();
    const Matrix expected = kron(Matrix::identity(2) * 0.5, Matrix{{1.0, 0.0}, {0.0, 0.0}});
    EXPECT_LE(max_abs_diff(ch.choi(), expected), 1e-15);
}

TEST(FromKraus, PauliTwirlIsFlat) {
    EXPECT_LE(max_abs_diff(pauli_twirl().choi(), Matrix::identity(4) * 0.25), 1e-15);
}

TEST(FromKraus, Errors) {
    try {
        QuantumChannel::from_kraus({Matrix::identity(2) * 0.9});
        FAIL() << "expected NotTracePreserving";
    } catch (const NotTracePreserving &e) {
        EXPECT_NEAR(e.deviation(), 0.19, 1e-12);
    }
    EXPECT_THROW(QuantumChannel::from_kraus({Matrix::identity(2), Matrix(3, 2)}),
                 DimensionMismatch);
    EXPECT_THROW(QuantumChannel::from_kraus({}), DimensionMismatch);
}

TEST(FromChoi, Errors) {
    // Not completely positive: the partial transpose of |Phi><Phi|.
    Matrix swap_half(4, 4);
    swap_half(0, 0) = 0.5;
    swap_half(1, 2) = 0.5;
    swap_half(2, 1) = 0.5;
    swap_half(3, 3) = 0.5;
    EXPECT_THROW(QuantumChannel::from_choi(2, 2, swap_half), NotCompletelyPositive);
    // Positive but Tr_B M != I/2.
    EXPECT_THROW(QuantumChannel::from_choi(2, 2, Matrix::identity(4) * 0.5), NotTracePreserving);
    EXPECT_THROW(QuantumChannel::from_choi(2, 3, Matrix::identity(4) * 0.25), DimensionMismatch);
}

TEST(ToKraus, RankOneChoi) {
    const auto ops = to_kraus(QuantumChannel::identity(2));
    ASSERT_EQ(ops.size(), 1u);
    // Proportional to I with a unit-modulus factor fixed by the phase convention.
    EXPECT_NEAR(std::abs(ops[0](0, 0)), 1.0, 1e-12);
    EXPECT_LE(max_abs_diff(ops[0], Matrix::identity(2) * ops[0](0, 0)), 1e-12);
    EXPECT_NEAR(ops[0](0, 0).imag(), 0.0, 1e-12);
}

TEST(ToKraus, FlatChoiHasFourOperators) {
    const auto rebuilt = QuantumChannel::from_choi(2, 2, Matrix::identity(4) * 0.25);
    EXPECT_EQ(rebuilt.kraus().size(), 4u);
    for (std::size_t i = 0; i < 2; ++i) {
        const Matrix out = oracle::kraus_apply(rebuilt.kraus(), unit(2, i, i));
        EXPECT_LE(max_abs_diff(out, Matrix::identity(2) * 0.5), 1e-12);
    }
}

TEST(ToKraus, RoundTrip) {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const auto ch = instances::random_channel(3, 2, 2, rng);
        const auto ops = to_kraus(ch);
        EXPECT_EQ(ops.size(), 2u);
        EXPECT_LE(trace_preservation_defect(ops), 1e-8);
        EXPECT_LE(max_abs_diff(QuantumChannel::from_kraus(ops).choi(), ch.choi()), 1e-8);
    }
}

TEST(Apply, Examples) {
    Rng rng(32);
    const auto rho = instances::random_state(3, rng);
    EXPECT_LE(max_abs_diff(apply(QuantumChannel::identity(3), rho).matrix(), rho.matrix()), 1e-12);
    const auto out = apply(instances::reset_to_zero(), DensityOperator::maximally_mixed(2));
    EXPECT_LE(max_abs_diff(out.matrix(), Matrix{{1.0, 0.0}, {0.0, 0.0}}), 1e-15);
}

TEST(Apply, MatchesKrausSum) {
    Rng rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        const auto ch = instances::random_channel(3, 4, 3, rng);
        const auto rho = instances::random_state(3, rng);
        EXPECT_LE(max_abs_diff(apply(ch, rho).matrix(), oracle::kraus_apply(ch.kraus(), rho.matrix())),
                  1e-9);
        // Also on a non-Hermitian operator: the Choi action is linear on all of L(H).
        const Matrix x = instances::ginibre(3, 3, rng);
        EXPECT_LE(max_abs_diff(apply(ch, x), oracle::kraus_apply(ch.kraus(), x)), 1e-9);
    }
    EXPECT_THROW(apply(QuantumChannel::identity(2), DensityOperator::maximally_mixed(3)),
                 DimensionMismatch);
}

TEST(ApplyExtended, Examples) {
    Rng rng(34);
    const auto rho = instances::random_state(3, rng);
    const auto phi = purify(rho);
    EXPECT_LE(max_abs_diff(apply_extended(QuantumChannel::identity(3), phi).matrix(), phi.projector()),
              1e-12);

    // Maximally entangled input reproduces the Choi matrix.
    const auto ch = instances::random_channel(3, 2, 2, rng);
    const auto joint = apply_extended(ch, purify(DensityOperator::maximally_mixed(3)));
    EXPECT_LE(max_abs_diff(joint.matrix(), ch.choi()), 1e-9);

    // Constant channel decouples the reference.
    const auto rho0 = instances::random_state(2, rng);
    const auto constant = QuantumChannel::constant(3, rho0);
    const auto decoupled = apply_extended(constant, phi);
    const Matrix rho_r = oracle::trace_out_second(phi.projector(), 3, 3);
    EXPECT_LE(max_abs_diff(decoupled.matrix(), kron(rho_r, rho0.matrix())), 1e-12);
}

TEST(ApplyExtended, MatchesOracleAndReferenceMarginal) {
    Rng rng(35);
    for (int rep = 0; rep < 5; ++rep) {
        const auto ch = instances::random_channel(3, 2, 3, rng);
        const auto rho = instances::random_state(3, rng);
        const auto phi = purify(rho);
        const auto joint = apply_extended(ch, phi);
        const Matrix rho_r = oracle::trace_out_second(phi.projector(), 3, 3);
        EXPECT_LE(max_abs_diff(oracle::trace_out_second(joint.matrix(), 3, 2), rho_r), 1e-9);
        // Both realizations share the reference spectrum, hence the entropies.
        const Matrix ref_joint = oracle::extended_output(ch.kraus(), rho.matrix());
        EXPECT_NEAR(oracle::entropy_bits(joint.matrix()), oracle::entropy_bits(ref_joint), 1e-9);
    }
}

TEST(Stinespring, Identity) {
    const auto v = to_stinespring(QuantumChannel::identity(2));
    EXPECT_EQ(v.env_dim, 1u);
    EXPECT_LE(max_abs_diff(v.isometry, Matrix::identity(2)), 1e-12);
}

TEST(Stinespring, DephasingKillsCoherence) {
    const auto v = to_stinespring(instances::dephasing_half());
    EXPECT_EQ(v.env_dim, 2u);
    const Matrix rho{{0.7, Complex(0.1, 0.2)}, {Complex(0.1, -0.2), 0.3}};
    const Matrix joint = v.isometry * rho * v.isometry.adjoint();
    const Matrix out = oracle::trace_out_second(joint, 2, 2);
    EXPECT_LE(max_abs_diff(out, Matrix{{0.7, 0.0}, {0.0, 0.3}}), 1e-15);
}

TEST(Stinespring, ConsistentWithApplyAndComplement) {
    Rng rng(36);
    for (int rep = 0; rep < 10; ++rep) {
        const auto ch = instances::random_channel(3, 2, 3, rng);
        const auto v = to_stinespring(ch);
        EXPECT_LE(max_abs_diff(adjoint_times(v.isometry, v.isometry), Matrix::identity(3)), 1e-8);
        const auto rho = instances::random_state(3, rng);
        const Matrix joint = v.isometry * rho.matrix() * v.isometry.adjoint();
        EXPECT_LE(max_abs_diff(oracle::trace_out_second(joint, 2, v.env_dim), apply(ch, rho).matrix()),
                  1e-9);
        EXPECT_LE(max_abs_diff(oracle::trace_out_first(joint, 2, v.env_dim),
                               apply(complement(ch), rho).matrix()),
                  1e-9);
    }
}

TEST(Complement, IdentityAndUnitaryAreConstant) {
    const auto c = complement(QuantumChannel::identity(2));
    EXPECT_EQ(c.out_dim(), 1u);
    Rng rng(37);
    const auto cu = complement(QuantumChannel::unitary(instances::random_unitary(3, rng)));
    EXPECT_EQ(cu.out_dim(), 1u);
    const auto a = apply(cu, instances::random_state(3, rng));
    const auto b = apply(cu, instances::random_state(3, rng));
    EXPECT_LE(max_abs_diff(a.matrix(), b.matrix()), 1e-12);
}

TEST(Complement, DephasingEnvironmentOutput) {
    // E_E(rho) = sum_kl Tr[rho E_k^dagger E_l] |l><k| with E = {I, Z}/sqrt2.
    const Matrix rho{{0.7, Complex(0.1, 0.2)}, {Complex(0.1, -0.2), 0.3}};
    const auto out = apply(complement(instances::dephasing_half()), DensityOperator(rho));
    const Matrix expected{{0.5, 0.2}, {0.2, 0.5}};
    EXPECT_LE(max_abs_diff(out.matrix(), expected), 1e-12);
}

TEST(Dual, Examples) {
    Rng rng(38);
    const Matrix y = instances::random_hermitian(3, rng);
    EXPECT_LE(max_abs_diff(dual(QuantumChannel::identity(3))(y), y), 1e-14);
    const Matrix u = instances::random_unitary(3, rng);
    EXPECT_LE(max_abs_diff(dual(QuantumChannel::unitary(u))(y), u.adjoint() * y * u), 1e-12);
}

TEST(Dual, TracePairingAndUnital) {
    Rng rng(39);
    for (int rep = 0; rep < 10; ++rep) {
        const auto ch = instances::random_channel(2, 3, 2, rng);
        const Matrix rho = instances::random_state(2, rng).matrix();
        const Matrix y = instances::random_hermitian(3, rng);
        const Complex lhs = (apply(ch, rho) * y).trace();
        const Complex rhs = (rho * dual(ch)(y)).trace();
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9);
        EXPECT_LE(max_abs_diff(dual(ch)(Matrix::identity(3)), Matrix::identity(2)), 1e-9);
    }
}

TEST(Compose, IdentityIsNeutralAndMatchesSequentialApply) {
    Rng rng(40);
    const auto ch = instances::random_channel(2, 3, 2, rng);
    EXPECT_LE(max_abs_diff(compose(QuantumChannel::identity(3), ch).choi(), ch.choi()), 1e-9);
    EXPECT_LE(max_abs_diff(compose(ch, QuantumChannel::identity(2)).choi(), ch.choi()), 1e-9);
    const auto later = instances::random_channel(3, 2, 3, rng);
    const auto both = compose(later, ch);
    for (int rep = 0; rep < 5; ++rep) {
        const auto rho = instances::random_state(2, rng);
        EXPECT_LE(max_abs_diff(apply(both, rho).matrix(), apply(later, apply(ch, rho)).matrix()), 1e-9);
    }
    EXPECT_THROW(compose(ch, ch), DimensionMismatch);
}

TEST(Marginal, DecoupledFactor) {
    Rng rng(41);
    const auto ch = instances::random_channel(2, 3, 2, rng);
    const auto fixed = instances::random_state(2, rng);
    const auto joint = with_fixed_output(ch, fixed);
    EXPECT_EQ(joint.out_dim(), 6u);
    EXPECT_LE(max_abs_diff(marginal(joint, {3, 2}, Factor::First).choi(), ch.choi()), 1e-9);
    const auto second = marginal(joint, {3, 2}, Factor::Second);
    const auto out = apply(second, instances::random_state(2, rng));
    EXPECT_LE(max_abs_diff(out.matrix(), fixed.matrix()), 1e-9);
    EXPECT_THROW(marginal(joint, {2, 2}, Factor::First), DimensionMismatch);
}

TEST(Marginal, MatchesPartialTraceOfOutput) {
    Rng rng(42);
    const auto ch = instances::random_channel(2, 6, 3, rng);
    const auto rho = instances::random_state(2, rng);
    const Matrix out = apply(ch, rho).matrix();
    EXPECT_LE(max_abs_diff(apply(marginal(ch, {2, 3}, Factor::First), rho).matrix(),
                           oracle::trace_out_second(out, 2, 3)),
              1e-9);
    EXPECT_LE(max_abs_diff(apply(marginal(ch, {2, 3}, Factor::Second), rho).matrix(),
                           oracle::trace_out_first(out, 2, 3)),
              1e-9);
}

TEST(Tensor, ActsFactorwise) {
    Rng rng(43);
    const auto a = instances::random_channel(2, 2, 2, rng);
    const auto b = instances::random_channel(3, 2, 2, rng);
    const auto ab = tensor(a, b);
    const auto r1 = instances::random_state(2, rng);
    const auto r2 = instances::random_state(3, rng);
    const auto out = apply(ab, DensityOperator(kron(r1.matrix(), r2.matrix())));
    EXPECT_LE(max_abs_diff(out.matrix(), kron(apply(a, r1).matrix(), apply(b, r2).matrix())), 1e-9);
}

TEST(Parameterization, Affine) {
    Rng rng(44);
    std::uniform_real_distribution<double> t_dist(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = instances::random_channel(2, 3, 2, rng);
        const auto b = instances::random_channel(2, 3, 3, rng);
        const double t = t_dist(rng);
        EXPECT_LE(max_abs_diff(mixture(t, a, b).choi(), a.choi() * t + b.choi() * (1.0 - t)), 1e-10);
    }
}

TEST(Parameterization, InjectiveOnMatrixUnits) {
    Rng rng(45);
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = instances::random_channel(3, 2, 2, rng);
        // Nearby channel: Choi matrices differ by about 1e-6 or more.
        const auto b = mixture(1.0 - 1e-5, a, instances::random_channel(3, 2, 2, rng));
        ASSERT_GE(max_abs_diff(a.choi(), b.choi()), 1e-6);
        double widest = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                widest = std::max(widest, max_abs_diff(apply(a, unit(3, i, j)), apply(b, unit(3, i, j))));
            }
        }
        EXPECT_GT(widest, 0.0);
        // E(|i><j|) = d * (block i,j of M), so the widest unit difference is d times the Choi gap.
        EXPECT_NEAR(widest, 3.0 * max_abs_diff(a.choi(), b.choi()), 1e-12);
    }
}

TEST(Constant, MapsEverythingToFixedState) {
    Rng rng(46);
    const auto rho0 = instances::random_state(3, rng);
    const auto ch = QuantumChannel::constant(2, rho0);
    EXPECT_LE(max_abs_diff(apply(ch, instances::random_state(2, rng)).matrix(), rho0.matrix()), 1e-12);
    EXPECT_LE(trace_preservation_defect(ch.kraus()), 1e-12);
}
