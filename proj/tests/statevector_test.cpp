#include "qosp/statevector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qosp/dense_oracle.hpp"
#include "test_util.hpp"

using namespace qosp;
using std::numbers::pi;

TEST(PrepareState, PlusStateAmplitudes) {
    const StateVector one = prepare_plus_state(1);
    EXPECT_NEAR(one.amps[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(one.amps[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
    const StateVector two = prepare_plus_state(2);
    for (const auto& a : two.amps) EXPECT_NEAR(a.real(), 0.5, 1e-15);
    EXPECT_NEAR(prepare_plus_state(3).norm_sq(), 1.0, 1e-12);
    EXPECT_THROW(prepare_plus_state(0), ResourceLimit);
    EXPECT_THROW(prepare_plus_state(25), ResourceLimit);
}

TEST(PrepareState, DickeStates) {
    const StateVector d21 = prepare_dicke(2, 1);
    EXPECT_EQ(d21.amps[0], c64(0.0, 0.0));
    EXPECT_NEAR(d21.amps[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(d21.amps[2].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(d21.amps[3], c64(0.0, 0.0));

    const StateVector d31 = prepare_dicke(3, 1);
    for (std::uint64_t m : {1u, 2u, 4u}) EXPECT_NEAR(d31.amps[m].real(), 1.0 / std::sqrt(3.0), 1e-15);
    for (std::uint64_t m : {0u, 3u, 5u, 6u, 7u}) EXPECT_EQ(d31.amps[m], c64(0.0, 0.0));

    const StateVector dnn = prepare_dicke(4, 4);
    EXPECT_NEAR(dnn.amps[15].real(), 1.0, 1e-15);
    EXPECT_NEAR(dnn.norm_sq(), 1.0, 1e-15);

    EXPECT_THROW(prepare_dicke(3, 4), InvalidParameter);
}

TEST(SingleQubitGate, PauliXFlips) {
    StateVector s = make_zero_state(1);
    apply_single_qubit_gate(s, gates::pauli_x(), 0);
    EXPECT_NEAR(std::abs(s.amps[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amps[0]), 0.0, 1e-15);
}

TEST(SingleQubitGate, HadamardTwiceIsIdentity) {
    std::mt19937_64 gen(5);
    StateVector s = testutil::random_state(3, gen);
    const StateVector before = s;
    apply_single_qubit_gate(s, gates::hadamard(), 1);
    apply_single_qubit_gate(s, gates::hadamard(), 1);
    for (std::size_t m = 0; m < s.amps.size(); ++m)
        EXPECT_NEAR(std::abs(s.amps[m] - before.amps[m]), 0.0, 1e-12);
}

TEST(SingleQubitGate, RxMatchesMatrixExponential) {
    std::mt19937_64 gen(17);
    for (int round = 0; round < 20; ++round) {
        const double beta = uniform_in(gen, -pi, pi);
        StateVector s = make_zero_state(1);
        apply_single_qubit_gate(s, gates::rx(2.0 * beta), 0);
        const Eigen::MatrixXcd u = propagator(testutil::pauli('X'), beta);
        Eigen::VectorXcd v(2);
        v << 1.0, 0.0;
        v = u * v;
        EXPECT_LT(testutil::max_amp_diff(s, v), 1e-10);
    }
}

TEST(SingleQubitGate, RejectsBadIndexAndNonUnitary) {
    StateVector s = make_zero_state(2);
    EXPECT_THROW(apply_single_qubit_gate(s, gates::pauli_x(), 2), InvalidParameter);
    Gate2 broken{{{1.0, 0.0}, {0.0, 0.5}}};
    EXPECT_THROW(apply_single_qubit_gate(s, broken, 0), InvalidParameter);
}

TEST(TwoQubitGate, CnotEntangles) {
    StateVector s = make_zero_state(2);
    apply_single_qubit_gate(s, gates::hadamard(), 0);  // (|00> + |10>)/sqrt2
    apply_two_qubit_gate(s, gates::cnot(), 0, 1);
    EXPECT_NEAR(s.amps[0].real(), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(std::abs(s.amps[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amps[2]), 0.0, 1e-12);
    EXPECT_NEAR(s.amps[3].real(), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(TwoQubitGate, CnotTwiceIsIdentity) {
    std::mt19937_64 gen(23);
    StateVector s = testutil::random_state(3, gen);
    const StateVector before = s;
    apply_two_qubit_gate(s, gates::cnot(), 2, 0);
    apply_two_qubit_gate(s, gates::cnot(), 2, 0);
    for (std::size_t m = 0; m < s.amps.size(); ++m)
        EXPECT_NEAR(std::abs(s.amps[m] - before.amps[m]), 0.0, 1e-12);
}

TEST(TwoQubitGate, RejectsIndexCollision) {
    StateVector s = make_zero_state(2);
    EXPECT_THROW(apply_two_qubit_gate(s, gates::cnot(), 1, 1), InvalidParameter);
}

TEST(DenseOracle, ToffoliOnBasisState) {
    Eigen::MatrixXcd ccx = Eigen::MatrixXcd::Identity(8, 8);
    ccx(6, 6) = ccx(7, 7) = 0.0;
    ccx(6, 7) = ccx(7, 6) = 1.0;
    const Eigen::MatrixXcd u = dense_circuit_oracle(3, {{ccx, {0, 1, 2}}});
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v(6) = 1.0;  // |110>
    v = u * v;
    EXPECT_NEAR(std::abs(v(7)), 1.0, 1e-12);  // |111>
}

TEST(DenseOracle, LayoutWithHadamardRyCnotIsUnitary) {
    const Eigen::MatrixXcd u = dense_circuit_oracle(
        4, {{gate2_matrix(gates::hadamard()), {0}},
            {gate2_matrix(gates::ry(0.6)), {1}},
            {gate4_matrix(gates::cnot()), {2, 3}}});
    const Eigen::MatrixXcd err =
        u.adjoint() * u - Eigen::MatrixXcd::Identity(16, 16);
    EXPECT_LT(err.cwiseAbs().maxCoeff(), 1e-10);
    // disjoint placements consolidate to the plain Kronecker product
    const Eigen::MatrixXcd direct = testutil::kron(
        testutil::kron(gate2_matrix(gates::hadamard()), gate2_matrix(gates::ry(0.6))),
        gate4_matrix(gates::cnot()));
    EXPECT_LT((u - direct).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DenseOracle, IdentityGate) {
    const Eigen::MatrixXcd u =
        dense_circuit_oracle(2, {{Eigen::MatrixXcd::Identity(2, 2), {1}}});
    EXPECT_LT((u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DenseOracle, KernelsMatchRandomCircuit) {
    std::mt19937_64 gen(31);
    for (int round = 0; round < 10; ++round) {
        StateVector s = testutil::random_state(3, gen);
        const Eigen::VectorXcd v0 = to_eigen(s);
        std::vector<PlacedGate> circuit;
        for (int g = 0; g < 3; ++g) {
            if (uniform01(gen) < 0.5) {
                const Gate2 gate = gates::ry(uniform_in(gen, -pi, pi));
                const int q = static_cast<int>(gen() % 3);
                apply_single_qubit_gate(s, gate, q);
                circuit.push_back({gate2_matrix(gate), {q}});
            } else {
                const int q1 = static_cast<int>(gen() % 3);
                const int q2 = (q1 + 1 + static_cast<int>(gen() % 2)) % 3;
                apply_two_qubit_gate(s, gates::cnot(), q1, q2);
                circuit.push_back({gate4_matrix(gates::cnot()), {q1, q2}});
            }
        }
        const Eigen::VectorXcd v = dense_circuit_oracle(3, circuit) * v0;
        EXPECT_LT(testutil::max_amp_diff(s, v), 1e-10);
    }
}

TEST(DenseOracle, RejectsLargeRegisters) {
    EXPECT_THROW(dense_circuit_oracle(7, {}), ResourceLimit);
}

TEST(CostPhase, ZeroAngleIsExactIdentity) {
    std::mt19937_64 gen(3);
    StateVector s = testutil::random_state(2, gen);
    const StateVector before = s;
    const std::vector<double> diag{0.4, -1.0, 2.0, 0.0};
    apply_cost_phase(s, diag, 0.0);
    for (std::size_t m = 0; m < s.amps.size(); ++m) EXPECT_EQ(s.amps[m], before.amps[m]);
}

TEST(CostPhase, SingleQubitPhase) {
    StateVector s = prepare_plus_state(1);
    const std::vector<double> diag{0.0, 1.0};
    const double gamma = 0.9;
    apply_cost_phase(s, diag, gamma);
    EXPECT_NEAR(std::abs(s.amps[0] - c64(1.0 / std::sqrt(2.0), 0.0)), 0.0, 1e-12);
    const c64 expected = std::exp(c64(0, -gamma)) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s.amps[1] - expected), 0.0, 1e-12);
}

TEST(CostPhase, MatchesDensePropagator) {
    std::mt19937_64 gen(11);
    IsingCoefficients ising;
    ising.n_vars = 3;
    ising.b = {0.7, -1.1, 0.3};
    ising.c[{0, 1}] = 0.9;
    ising.c[{1, 2}] = -0.4;
    const auto diag = ising_phase_diagonal(ising);
    StateVector s = testutil::random_state(3, gen);
    const Eigen::VectorXcd v0 = to_eigen(s);
    apply_cost_phase(s, diag, 0.7);
    const Eigen::MatrixXcd h = testutil::ising_hamiltonian_dense(ising, false);
    const Eigen::VectorXcd v = propagator(h, 0.7) * v0;
    EXPECT_LT(testutil::max_amp_diff(s, v), 1e-10);
}

TEST(CostPhase, RejectsLengthMismatch) {
    StateVector s = make_zero_state(2);
    const std::vector<double> wrong{1.0, 2.0};
    EXPECT_THROW(apply_cost_phase(s, wrong, 0.5), InvalidParameter);
}

TEST(XMixer, ZeroAngleIdentity) {
    std::mt19937_64 gen(13);
    StateVector s = testutil::random_state(3, gen);
    const StateVector before = s;
    apply_x_mixer_layer(s, 0.0);
    for (std::size_t m = 0; m < s.amps.size(); ++m)
        EXPECT_NEAR(std::abs(s.amps[m] - before.amps[m]), 0.0, 1e-12);
}

TEST(XMixer, HalfPiSendsZeroToMinusIOne) {
    StateVector s = make_zero_state(1);
    apply_x_mixer_layer(s, pi / 2.0);  // R_x(pi) = -iX
    EXPECT_NEAR(std::abs(s.amps[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amps[1] - c64(0.0, -1.0)), 0.0, 1e-12);
}

TEST(XMixer, MatchesDenseExponential) {
    std::mt19937_64 gen(19);
    for (int round = 0; round < 5; ++round) {
        const double beta = uniform_in(gen, -pi, pi);
        StateVector s = testutil::random_state(2, gen);
        const Eigen::VectorXcd v0 = to_eigen(s);
        apply_x_mixer_layer(s, beta);
        const Eigen::VectorXcd v =
            propagator(testutil::x_mixer_hamiltonian(2), beta) * v0;
        EXPECT_LT(testutil::max_amp_diff(s, v), 1e-10);
    }
}

TEST(XyMixer, ZeroAngleIdentity) {
    std::mt19937_64 gen(29);
    StateVector s = testutil::random_state(4, gen);
    const StateVector before = s;
    apply_xy_mixer_layer(s, 0.0);
    for (std::size_t m = 0; m < s.amps.size(); ++m)
        EXPECT_NEAR(std::abs(s.amps[m] - before.amps[m]), 0.0, 1e-12);
}

TEST(XyMixer, SinglePairMatrixColumns) {
    // two qubits: the layer is exactly one pair block
    StateVector s = make_zero_state(2);
    s.amps[0] = 0.0;
    s.amps[1] = 1.0;  // |01>
    const double beta = 1.3;
    apply_xy_mixer_layer(s, beta);
    EXPECT_NEAR(std::abs(s.amps[1] - c64(std::cos(beta / 2.0), 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amps[2] - c64(0.0, std::sin(beta / 2.0))), 0.0, 1e-12);
}

TEST(XyMixer, PreservesHammingWeight) {
    StateVector s = prepare_dicke(4, 2);
    for (double beta : {0.3, 1.1, -2.0}) {
        apply_xy_mixer_layer(s, beta);
        double leaked = 0.0;
        for (std::uint64_t m = 0; m < s.amps.size(); ++m)
            if (std::popcount(m) != 2) leaked += std::norm(s.amps[m]);
        EXPECT_LE(leaked, 1e-12);
    }
}

TEST(XyMixer, MatchesDensePairProduct) {
    std::mt19937_64 gen(37);
    for (int round = 0; round < 5; ++round) {
        const double beta = uniform_in(gen, -pi, pi);
        StateVector s = testutil::random_state(3, gen);
        const Eigen::VectorXcd v0 = to_eigen(s);
        apply_xy_mixer_layer(s, beta);
        const Eigen::VectorXcd v = testutil::xy_layer_dense(3, beta) * v0;
        EXPECT_LT(testutil::max_amp_diff(s, v), 1e-10);
    }
}

TEST(Sampling, DeterministicBasisState) {
    StateVector s = make_zero_state(2);
    s.amps[0] = 0.0;
    s.amps[2] = 1.0;  // |10>
    for (std::uint64_t idx : sample_bitstrings(s, 50, 123)) {
        EXPECT_EQ(idx, 2u);
        EXPECT_EQ(index_to_bits(idx, 2), "10");
    }
}

TEST(Sampling, UniformSingleQubitFraction) {
    const StateVector s = prepare_plus_state(1);
    const auto samples = sample_bitstrings(s, 10000, 99);
    long ones = 0;
    for (auto idx : samples) ones += idx;
    EXPECT_NEAR(static_cast<double>(ones) / 10000.0, 0.5, 0.02);
}

TEST(Sampling, SeedDeterminism) {
    std::mt19937_64 gen(43);
    const StateVector s = testutil::random_state(4, gen);
    EXPECT_EQ(sample_bitstrings(s, 500, 7), sample_bitstrings(s, 500, 7));
    EXPECT_NE(sample_bitstrings(s, 500, 7), sample_bitstrings(s, 500, 8));
}

TEST(Sampling, ChiSquareAgainstAmplitudes) {
    std::mt19937_64 gen(47);
    const StateVector s = testutil::random_state(4, gen);
    const auto samples = sample_bitstrings(s, 100000, 11);
    std::vector<long> counts(16, 0);
    for (auto idx : samples) ++counts[idx];
    std::vector<double> probs(16);
    for (int m = 0; m < 16; ++m) probs[m] = std::norm(s.amps[m]);
    EXPECT_GE(testutil::chi_square_pvalue_counts(counts, probs, 100000), 0.001);
}

TEST(Expectation, BasisAndUniformStates) {
    const std::vector<double> diag{0.0, -1.25, 3.0, 1.75};  // (0, a2, a1, a1+a2)
    StateVector basis = make_zero_state(2);
    basis.amps[0] = 0.0;
    basis.amps[2] = 1.0;
    EXPECT_DOUBLE_EQ(expectation_of_diagonal(basis, diag), 3.0);
    const StateVector uniform = prepare_plus_state(2);
    EXPECT_NEAR(expectation_of_diagonal(uniform, diag), 1.75 / 2.0, 1e-12);
}

TEST(Expectation, SampledMeanConverges) {
    std::mt19937_64 gen(53);
    const StateVector s = testutil::random_state(3, gen);
    std::vector<double> diag(8);
    for (double& v : diag) v = uniform_in(gen, -2.0, 2.0);
    const double exact = expectation_of_diagonal(s, diag);
    double var = 0.0;
    for (int m = 0; m < 8; ++m)
        var += std::norm(s.amps[m]) * (diag[m] - exact) * (diag[m] - exact);
    const int shots = 100000;
    const auto samples = sample_bitstrings(s, shots, 21);
    double mean = 0.0;
    for (auto idx : samples) mean += diag[idx];
    mean /= shots;
    EXPECT_NEAR(mean, exact, 3.0 * std::sqrt(var / shots));
}

TEST(Expectation, RejectsLengthMismatch) {
    const StateVector s = prepare_plus_state(2);
    const std::vector<double> wrong{1.0};
    EXPECT_THROW(expectation_of_diagonal(s, wrong), InvalidParameter);
}

TEST(Invariants, NormPreservedOverRandomGateSequence) {
    std::mt19937_64 gen(59);
    StateVector s = testutil::random_state(4, gen);
    for (int g = 0; g < 100; ++g) {
        switch (gen() % 4) {
            case 0:
                apply_single_qubit_gate(s, gates::rx(uniform_in(gen, -pi, pi)),
                                        static_cast<int>(gen() % 4));
                break;
            case 1:
                apply_single_qubit_gate(s, gates::hadamard(), static_cast<int>(gen() % 4));
                break;
            case 2: {
                const int q1 = static_cast<int>(gen() % 4);
                apply_two_qubit_gate(s, gates::cnot(), q1, (q1 + 1) % 4);
                break;
            }
            default:
                apply_xy_mixer_layer(s, uniform_in(gen, -pi, pi));
        }
    }
    EXPECT_NEAR(s.norm_sq(), 1.0, 1e-9);
}
