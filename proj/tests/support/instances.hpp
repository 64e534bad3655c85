#pragma once

// Random and named test instances shared by the unit and acceptance suites.

#include <cstddef>
#include <random>
#include <utility>

#include "qrev/channel.hpp"
#include "qrev/qstate.hpp"

namespace instances {

using qrev::CodeSubspace;
using qrev::DensityOperator;
using qrev::KrausSet;
using qrev::Matrix;
using qrev::QuantumChannel;
using Rng = std::mt19937_64;

Matrix ginibre(std::size_t rows, std::size_t cols, Rng &rng);
Matrix random_hermitian(std::size_t n, Rng &rng);
// Rank-`rank` state (full rank by default).
DensityOperator random_state(std::size_t n, Rng &rng, std::size_t rank = 0);
Matrix random_unitary(std::size_t n, Rng &rng);
// First k columns of a Haar-ish unitary.
Matrix random_isometry(std::size_t n, std::size_t k, Rng &rng);
CodeSubspace random_code(std::size_t n, std::size_t k, Rng &rng);
// Kraus rank `rank` channel from a random Stinespring isometry; requires
// out_dim * rank >= in_dim.
QuantumChannel random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t rank, Rng &rng);

// max(rank, ceil(in_dim / out_dim)): smallest usable rank for random_channel.
std::size_t feasible_rank(std::size_t in_dim, std::size_t out_dim, std::size_t rank);

// E'_j = sum_k u_jk E_k
KrausSet remix(const KrausSet &ops, const Matrix &u);

struct CorrectableInstance {
    QuantumChannel channel;
    CodeSubspace code;
};

// Channel on C^ambient that is perfectly correctable on a random k-dim code:
// the code is mapped into orthogonal, isometrically scaled copies (one per
// Kraus operator) and the complement of the code goes anywhere else.
CorrectableInstance correctable_instance(std::size_t ambient, std::size_t logical,
                                         std::size_t out_dim, std::size_t rank, Rng &rng);

// Named operators.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
// Single-qubit operator on `site` of an n-qubit register (site 0 leftmost).
Matrix on_site(const Matrix &op, std::size_t site, std::size_t qubits);

// |0> -> |000>, |1> -> |111>
CodeSubspace bitflip_code();
// {sqrt(1-p) III, sqrt(p/3) XII, sqrt(p/3) IXI, sqrt(p/3) IIX}
QuantumChannel single_flip_channel(double p);
// {sqrt(1/2) I, sqrt(1/2) Z}
QuantumChannel dephasing_half();
// {|0><0|, |0><1|}
QuantumChannel reset_to_zero();

}  // namespace instances
