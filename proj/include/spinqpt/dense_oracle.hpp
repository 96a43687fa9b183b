// dense_oracle.hpp — independent dense diagonalization of the full
// Dicke-sector Hamiltonian, used to validate the closed-form spectrum.
//
// Product basis |s> ⊗ |j, m>, s in {up, dn}, m = -j..j. A state is indexed by
// its bath excitation q = m + j in [0, N]:
//   index(up, q) = q,  index(dn, q) = (N+1) + q.

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spinqpt/model.hpp"

namespace spinqpt {

inline constexpr int kOracleDefaultCap = 4096;

// Raw assembly in the product basis, no parameter validation (lets tests
// probe gauge transforms such as A -> -A).
Eigen::MatrixXd oracle_hamiltonian(double omega0, double omega, double A, double delta, int N);

// Full spectrum, ascending. Throws std::length_error when N exceeds the cap.
std::vector<double> oracle_spectrum(const ModelParams& p, int max_n = kOracleDefaultCap);

struct OracleGround {
    double energy{};
    Eigen::VectorXd vector;  // in the product basis above
};

OracleGround oracle_ground(const ModelParams& p, int max_n = kOracleDefaultCap);

inline int oracle_index(int N, bool up, int bath_excitation) {
    return (up ? 0 : N + 1) + bath_excitation;
}

}  // namespace spinqpt
